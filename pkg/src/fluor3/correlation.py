"""Two-time correlation vectors from the quantum regression theorem.

For a fixed row operator ``P_r`` the correlation vector has components
``K_j(tau)`` (``j`` in canonical Bloch order) with ``K_j(0) = Tr[P_r P_j rho_ss]``
and ``dK/dtau = M K``. Physically ``K_j(tau) = <P_r(0) P_j(tau)>``, so the
component picked for a spectrum, ``K_{P_r^dag}``, is the complex conjugate of
``<P_r(tau) P_r^dag(0)>``; the Laplace variable ``s = -i(omega - Omega)``
compensates for this and the resulting spectrum is the one-sided Fourier
transform of ``<P_r(tau) P_r^dag(0)>`` with kernel ``exp(-i(omega - Omega) tau)``.

In connected mode the products of steady-state means are subtracted, which
removes the elastic (delta-function) part of the spectrum.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .bloch import CONDITION_LIMIT, bordered, density_from_bloch, has_structural_null
from .exceptions import PoleError
from .su3 import SHIFT_STACK, ShiftKind


@dataclass(frozen=True, eq=False)
class CorrelationVector:
    row: ShiftKind
    components: np.ndarray
    connected: bool = True

    def __post_init__(self):
        object.__setattr__(self, "row", ShiftKind.parse(self.row))
        comps = np.array(self.components, dtype=complex).reshape(-1)
        if comps.shape != (9,):
            raise ValueError(f"correlation vectors have 9 components, got {comps.shape}")
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    def __getitem__(self, kind):
        return self.components[ShiftKind.parse(kind).index]

    def with_components(self, components):
        return CorrelationVector(self.row, components, self.connected)


def initial_conditions(row, steady, connected=True):
    """Correlation vector at ``tau = 0`` for row operator ``row``.

    Parameters
    ----------
    row : ShiftKind or str
        Operator evaluated at the later time.
    steady : array_like, shape (9,)
        Steady-state Bloch vector.
    connected : bool
        Subtract ``<P_row>_ss <P_j>_ss`` from every component.
    """
    row = ShiftKind.parse(row)
    steady = np.asarray(steady, dtype=complex)
    rho = density_from_bloch(steady)
    p_row = SHIFT_STACK[row.index]
    k0 = np.einsum("ij,kjl,li->k", p_row, SHIFT_STACK, rho)
    if connected:
        k0 = k0 - steady[row.index] * steady
    return CorrelationVector(row, k0, connected)


def _plane_eigenvalues(system):
    if has_structural_null(system.m):
        return system.relaxation_eigenvalues()
    return np.linalg.eigvals(system.m)


def _check_poles(system, s, conds):
    bad = np.flatnonzero(~(conds <= CONDITION_LIMIT))
    if bad.size:
        s_bad = np.atleast_1d(s)[bad[0]]
        eig = _plane_eigenvalues(system)
        nearest = eig[np.argmin(np.abs(eig - s_bad))]
        raise PoleError(
            f"s = {s_bad:.6g} coincides with Bloch-matrix eigenvalue {nearest:.6g}",
            s=s_bad,
            eigenvalue=nearest,
        )


def resolvent_components(system, k0, s):
    """Laplace-domain correlation ``(sI - M)^{-1} K(0)`` for many ``s`` at once.

    Returns an array of shape ``(len(s), 9)``.
    """
    k0 = k0.components if isinstance(k0, CorrelationVector) else np.asarray(k0, dtype=complex)
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    a = s[:, None, None] * np.eye(9) - system.m
    if has_structural_null(system.m):
        # the structural zero of M is not a pole: K(0) lies in the plane
        a = bordered(a)
        k0 = np.concatenate([k0, [0.0]])
    _check_poles(system, s, np.linalg.cond(a))
    rhs = np.broadcast_to(k0, (s.size, k0.size))
    x = np.linalg.solve(a, rhs[..., None])[..., 0]
    return x[:, :9]


def resolvent(system, k0, s):
    """Laplace transform ``(sI - M)^{-1} K(0)`` of the regression solution.

    The solve is restricted to the constraint plane, so ``s = 0`` is regular
    whenever the steady state is unique.

    Raises
    ------
    PoleError
        If ``s`` is (numerically) an eigenvalue of the Bloch matrix.
    """
    out = resolvent_components(system, k0, [s])[0]
    if isinstance(k0, CorrelationVector):
        return k0.with_components(out)
    return out


def propagate(system, k0, tau):
    """``exp(M tau) K(0)`` by dense matrix exponential."""
    tau = float(tau)
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    vec = k0.components if isinstance(k0, CorrelationVector) else np.asarray(k0, dtype=complex)
    out = expm(system.m * tau) @ vec
    if isinstance(k0, CorrelationVector):
        return k0.with_components(out)
    return out


def propagate_grid(system, k0, taus):
    """``exp(M tau) K(0)`` for each ``tau`` in ``taus``; shape ``(len(taus), 9)``."""
    taus = np.asarray(taus, dtype=float)
    vec = k0.components if isinstance(k0, CorrelationVector) else np.asarray(k0, dtype=complex)
    if np.any(taus < 0):
        raise ValueError("tau values must be non-negative")
    return np.stack([expm(system.m * t) @ vec for t in taus]) if taus.size else np.empty((0, 9), complex)


def slowest_rate(system):
    """Smallest decay rate ``min |Re lambda|`` on the constraint plane."""
    return float(np.min(np.abs(_plane_eigenvalues(system).real)))
