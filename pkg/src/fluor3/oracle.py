"""Brute-force reference path: Liouvillian superoperator, nullspace steady state,
direct two-time correlations and quadrature spectra.

Vectorisation stacks columns: ``vec(rho) = rho.reshape(-1, order="F")``, so
``vec(A X B) = (B^T kron A) vec(X)``.

Nothing here goes through the Bloch-vector parameterisation; the only shared
inputs are :func:`~fluor3.models.hamiltonian` and
:func:`~fluor3.models.jump_operators`.
"""
from dataclasses import dataclass
import math
from typing import NamedTuple

import numpy as np
from scipy import signal
from scipy.linalg import expm

from .exceptions import DegenerateSteadyStateError, InsufficientWindowError
from .models import hamiltonian, jump_operators
from .spectrum import Pathway, SpectrumSeries, check_grid
from .su3 import dagger, shift

NULL_TOLERANCE = 1e-10
TAIL_TOLERANCE = 1e-6
STEP_FACTOR = 0.02
WINDOW_FACTOR = 20.0
_BLOCK = 256


def vec(rho):
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v):
    return np.asarray(v).reshape(3, 3, order="F")


@dataclass(frozen=True, eq=False)
class Superoperator:
    matrix: np.ndarray
    params: object = None

    def apply(self, rho):
        return unvec(self.matrix @ vec(rho))

    def eigenvalues(self):
        return np.linalg.eigvals(self.matrix)

    def rate_bounds(self):
        """``(min |Re|, max |Im|)`` over the non-stationary eigenvalues."""
        ev = self.eigenvalues()
        scale = max(1.0, float(np.abs(ev).max()))
        moving = ev[np.abs(ev) > 1e-9 * scale]
        if moving.size == 0:
            raise DegenerateSteadyStateError("Liouvillian has no decaying modes")
        return float(np.abs(moving.real).min()), float(np.abs(moving.imag).max())


def superoperator(params):
    """Matrix of the master-equation generator acting on ``vec(rho)``."""
    h = hamiltonian(params)
    eye = np.eye(3)
    lmat = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for rate, c in jump_operators(params):
        cdc = dagger(c) @ c
        lmat = lmat + rate * (
            np.kron(c.conj(), c) - 0.5 * np.kron(eye, cdc) - 0.5 * np.kron(cdc.T, eye)
        )
    return Superoperator(lmat, params)


def steady_density(superop):
    """Unique stationary density matrix from the nullspace of the generator."""
    mat = superop.matrix if isinstance(superop, Superoperator) else np.asarray(superop)
    _, sv, vh = np.linalg.svd(mat)
    null_dim = int(np.sum(sv <= NULL_TOLERANCE * sv[0]))
    if null_dim != 1:
        raise DegenerateSteadyStateError(
            f"Liouvillian nullspace has dimension {null_dim}; steady state is not unique"
        )
    rho = unvec(vh[-1].conj())
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + dagger(rho))
    return rho / np.trace(rho).real


def _is_uniform(x):
    if x.size < 3:
        return True
    d = np.diff(x)
    return bool(np.allclose(d, d[0], rtol=1e-9, atol=0))


def evolve(superop, x0, tau_grid):
    """``exp(L tau) x0`` for every ``tau`` in an ascending grid, shape ``(n, 3, 3)``.

    On a uniform grid a single one-step propagator is powered blockwise;
    otherwise one exponential per distinct ``tau`` is computed.
    """
    lmat = superop.matrix
    taus = np.asarray(tau_grid, dtype=float)
    v0 = vec(x0).astype(complex)
    out = np.empty((taus.size, 9), dtype=complex)
    if taus.size == 0:
        return out.reshape(0, 3, 3)
    if _is_uniform(taus) and taus.size > 1:
        h = taus[1] - taus[0]
        step = expm(lmat * h)
        powers = [np.eye(9, dtype=complex)]
        for _ in range(_BLOCK - 1):
            powers.append(step @ powers[-1])
        powers = np.stack(powers)
        jump = step @ powers[-1]
        current = expm(lmat * taus[0]) @ v0
        for start in range(0, taus.size, _BLOCK):
            stop = min(start + _BLOCK, taus.size)
            out[start:stop] = powers[: stop - start] @ current
            current = jump @ current
    else:
        cache = {}
        for k, t in enumerate(taus):
            if t not in cache:
                cache[t] = expm(lmat * t)
            out[k] = cache[t] @ v0
    return np.stack([unvec(v) for v in out])


def correlation_direct(params, pathway, tau_grid, superop=None, rho_ss=None):
    """Connected correlation ``<P(tau) P^dag(0)> - <P><P^dag>`` for a pathway.

    ``P`` is the pathway's raising operator; the regression form used is
    ``Tr[P exp(L tau)(P^dag rho_ss)]``.
    """
    pathway = Pathway.parse(pathway, params.config)
    taus = np.asarray(tau_grid, dtype=float)
    if taus.ndim != 1 or taus.size == 0 or taus[0] != 0 or np.any(np.diff(taus) <= 0):
        raise ValueError("tau grid must be ascending and start at 0")
    superop = superoperator(params) if superop is None else superop
    rho = steady_density(superop) if rho_ss is None else rho_ss
    p_row = shift(pathway.row)
    p_col = shift(pathway.picked)
    xs = evolve(superop, p_col @ rho, taus)
    means = np.trace(p_row @ rho) * np.trace(p_col @ rho)
    return np.einsum("ij,tji->t", p_row, xs) - means


def auto_tau_grid(superop, step_factor=STEP_FACTOR, window_factor=WINDOW_FACTOR):
    """Uniform grid with step ``0.02 / max|Im|`` and length ``20 / min|Re|``."""
    min_rate, max_freq = superop.rate_bounds()
    step = step_factor / max_freq if max_freq > 0 else step_factor / max(min_rate, 1.0)
    step = min(step, 0.1 / min_rate)
    window = window_factor / min_rate
    n = int(math.ceil(window / step)) + 1
    return np.linspace(0.0, (n - 1) * step, n)


def spectrum_quadrature(tau_grid, series, omega_grid, *, pathway=None, params=None,
                        tail_tolerance=TAIL_TOLERANCE):
    """``Re int_0^T C(tau) exp(-i omega tau) dtau`` by the composite trapezoid rule.

    Raises
    ------
    InsufficientWindowError
        If the correlation has not decayed: the tail estimate (largest ``|C|``
        over the last tenth of the window times a tenth of the window length)
        exceeds ``tail_tolerance`` times the spectrum maximum.
    """
    taus = np.asarray(tau_grid, dtype=float)
    c = np.asarray(series, dtype=complex)
    if taus.shape != c.shape or taus.ndim != 1 or taus.size < 2:
        raise ValueError("tau grid and correlation series must be matching 1-d arrays")
    omegas = check_grid(omega_grid)

    weights = np.empty_like(taus)
    dt = np.diff(taus)
    weights[0] = dt[0] / 2
    weights[-1] = dt[-1] / 2
    weights[1:-1] = (dt[:-1] + dt[1:]) / 2
    wc = weights * c

    if _is_uniform(taus) and _is_uniform(omegas) and omegas.size > 1:
        h = taus[1] - taus[0]
        d_omega = omegas[1] - omegas[0]
        # sum_k wc_k exp(-i omega_n tau_k) as a chirp z-transform
        phase0 = np.exp(-1j * omegas[0] * taus[0])
        ramp = np.exp(-1j * d_omega * taus[0] * np.arange(omegas.size))
        transform = signal.czt(
            wc, m=omegas.size, w=np.exp(-1j * d_omega * h), a=np.exp(1j * omegas[0] * h)
        )
        integral = phase0 * ramp * transform
    else:
        integral = np.empty(omegas.size, dtype=complex)
        chunk = max(1, 2_000_000 // taus.size)
        for start in range(0, omegas.size, chunk):
            om = omegas[start:start + chunk]
            integral[start:start + chunk] = np.exp(-1j * np.outer(om, taus)) @ wc
    values = integral.real

    span = taus[-1] - taus[0]
    tail_part = np.abs(c[taus >= taus[-1] - 0.1 * span])
    tail = float(tail_part.max()) * 0.1 * span
    peak = float(np.abs(values).max())
    if tail > tail_tolerance * max(peak, np.finfo(float).tiny):
        raise InsufficientWindowError(
            f"correlation tail estimate {tail:.3g} exceeds {tail_tolerance:g} of the "
            f"spectrum maximum {peak:.3g}; extend the tau window"
        )
    return SpectrumSeries(
        omegas, values, pathway, params, True, "paper",
        meta={"method": "quadrature", "tau_step": float(np.min(dt)), "tau_window": float(span)},
    )


def oracle_spectrum(params, pathway, omega_grid):
    """Quadrature spectrum on an automatically sized tau window."""
    superop = superoperator(params)
    taus = auto_tau_grid(superop)
    corr = correlation_direct(params, pathway, taus, superop=superop)
    pathway = Pathway.parse(pathway, params.config)
    return spectrum_quadrature(taus, corr, omega_grid, pathway=pathway, params=params)


class Check(NamedTuple):
    name: str
    error: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.error < self.tolerance)

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {verdict} (error {self.error:.3e}, tolerance {self.tolerance:.0e})"


STEADY_TOLERANCE = 1e-9
CORRELATION_TOLERANCE = 1e-6
SPECTRUM_TOLERANCE = 1e-3


def cross_check(params, pathway, omega_grid, sign_convention="paper", tau_max=10.0):
    """Compare the Bloch/resolvent route against the brute-force route.

    Returns three :class:`Check` results: steady density (max-abs), connected
    correlation on ``[0, tau_max]`` and spectrum (both relative L-infinity).
    The conjugate sign convention mirrors the spectrum, so the quadrature is
    evaluated at ``-omega`` in that case.
    """
    from .bloch import density_from_bloch, derive_system, steady_state
    from .correlation import initial_conditions, propagate_grid
    from .spectrum import laplace_variable, power_spectrum

    pathway = Pathway.parse(pathway, params.config)
    laplace_variable(0.0, sign_convention)
    sop = superoperator(params)
    rho_oracle = steady_density(sop)
    system = derive_system(params)
    s_bloch = steady_state(system)
    steady_err = float(np.abs(density_from_bloch(s_bloch) - rho_oracle).max())

    taus = np.linspace(0.0, tau_max, 201)
    direct = correlation_direct(params, pathway, taus, superop=sop, rho_ss=rho_oracle)
    k0 = initial_conditions(pathway.row, s_bloch, connected=True)
    # the regression vector's picked component is the conjugate of the direct one
    bloch_c = np.conj(propagate_grid(system, k0, taus)[:, pathway.picked.index])
    corr_err = float(np.abs(bloch_c - direct).max() / np.abs(direct).max())

    omegas = check_grid(omega_grid)
    resolvent = power_spectrum(params, pathway, omegas, True, sign_convention).values
    if sign_convention == "paper":
        quad = oracle_spectrum(params, pathway, omegas).values
    else:
        quad = oracle_spectrum(params, pathway, -omegas[::-1]).values[::-1]
    spec_err = float(np.abs(resolvent - quad).max() / np.abs(quad).max())
    return [
        Check("steady", steady_err, STEADY_TOLERANCE),
        Check("correlation", corr_err, CORRELATION_TOLERANCE),
        Check("spectrum", spec_err, SPECTRUM_TOLERANCE),
    ]
