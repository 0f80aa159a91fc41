"""Optical Bloch equations ``dS/dt = M S + B`` for the nine SU(3) shift operators.

The Bloch vector is ``S_k = Tr[rho P_k]`` with ``P_k`` in the canonical order
``(T+, T-, T3, V+, V-, V3, U+, U-, U3)``. These nine numbers are not
independent: ``T3 - V3 + U3 = 0`` holds as an operator identity, so
``CONSTRAINT @ S == 0`` for every matrix and the same vector spans the kernel
of :func:`density_from_bloch`. Consequently ``M`` always has the structural
null vector ``CONSTRAINT`` and linear solves with ``M`` are performed on the
constraint plane by bordering (see :func:`bordered`).
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from .exceptions import DegenerateSteadyStateError, UnsupportedModeError
from .models import Configuration, DissipationMode, ModelParams, liouvillian_apply
from .su3 import CONJUGATION_PERMUTATION, CONSTRAINT, SHIFT_STACK

CONDITION_LIMIT = 1e12

# density-matrix slot for each Bloch component: S_k = rho[row, col]
_SLOTS = [(1, 0), (0, 1), None, (2, 0), (0, 2), None, (2, 1), (1, 2), None]


@dataclass(frozen=True, eq=False)
class BlochSystem:
    """Affine Bloch dynamics ``dS/dt = m @ S + b``."""

    m: np.ndarray
    b: np.ndarray
    params: ModelParams = None

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        b = np.array(self.b, dtype=complex).reshape(-1)
        if m.shape != (9, 9) or b.shape != (9,):
            raise ValueError(f"expected a 9x9 matrix and 9-vector, got {m.shape} and {b.shape}")
        m.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "b", b)

    def rhs(self, s):
        return self.m @ np.asarray(s) + self.b

    def reality_defect(self):
        """Max deviation from ``P conj(M) P = M`` and ``P conj(B) = B``."""
        p = CONJUGATION_PERMUTATION
        dm = np.abs(np.conj(self.m)[np.ix_(p, p)] - self.m).max()
        db = np.abs(np.conj(self.b)[p] - self.b).max()
        return float(max(dm, db))

    def relaxation_eigenvalues(self):
        """Eigenvalues of ``M`` on the constraint plane (structural zero removed)."""
        q = null_space(CONSTRAINT[None, :])
        return np.linalg.eigvals(q.T @ self.m @ q)


def density_from_bloch(s):
    """Unit-trace density matrix with Bloch vector ``s``; accepts ``(..., 9)``."""
    s = np.asarray(s, dtype=complex)
    if s.shape[-1] != 9:
        raise ValueError(f"Bloch vectors have 9 components, got shape {s.shape}")
    t3, v3, u3 = s[..., 2], s[..., 5], s[..., 8]
    rho = np.zeros(s.shape[:-1] + (3, 3), dtype=complex)
    rho[..., 0, 0] = (1 + t3 + v3) / 3
    rho[..., 1, 1] = (1 - t3 + u3) / 3
    rho[..., 2, 2] = (1 - u3 - v3) / 3
    for k, slot in enumerate(_SLOTS):
        if slot is not None:
            rho[..., slot[0], slot[1]] = s[..., k]
    return rho


def bloch_from_density(rho):
    """``S_k = Tr[rho P_k]``; accepts ``(..., 3, 3)``."""
    rho = np.asarray(rho, dtype=complex)
    return np.einsum("...ij,kji->...k", rho, SHIFT_STACK)


def derive_system(params):
    """Bloch matrix and drive vector obtained by probing the master equation.

    The map ``S -> bloch(L(density(S)))`` is affine, so its value at ``S = 0``
    gives ``B`` and its differences along the nine unit vectors give the
    columns of ``M`` exactly.
    """
    probes = np.vstack([np.zeros((1, 9)), np.eye(9)])
    images = bloch_from_density(liouvillian_apply(params, density_from_bloch(probes)))
    b = images[0]
    m = (images[1:] - b).T
    return BlochSystem(m, b, params)


def appendix_system(params):
    """Closed-form ``M`` and ``B`` written out entry by entry for each configuration.

    Only available for ``paper-literal`` dissipation; the closed forms encode
    that choice of Lindblad channels.
    """
    if params.dissipation_mode is not DissipationMode.PAPER_LITERAL:
        raise UnsupportedModeError(
            "closed-form Bloch matrices exist only for paper-literal dissipation"
        )
    builder = {
        Configuration.LAMBDA: _lambda_closed_form,
        Configuration.VEE: _vee_closed_form,
        Configuration.CASCADE: _cascade_closed_form,
    }[params.config]
    m, b = builder(params)
    return BlochSystem(m, b, params)


def _lambda_closed_form(p):
    i = 1j
    g13, g23 = p.g_a, p.g_b
    G31, G32 = p.gamma_a, p.gamma_b
    d13, d23 = p.delta_a, p.delta_b
    D = [
        -G32 / 2 + i * d23,
        -G32 / 2 - i * d23,
        -2 * G32 / 3,
        -G31 / 2 + i * d13,
        -G31 / 2 - i * d13,
        -2 * G31 / 3,
        (-G31 - G32 + 2 * i * (d13 - d23)) / 2,
        (-G31 - G32 - 2 * i * (d13 - d23)) / 2,
        (-G31 - G32) / 3,
    ]
    m = [
        [D[0], 0, -2 * i * g23 / 3, 0, 0, -i * g23 / 3, 0, i * g13, i * g23 / 3],
        [0, D[1], 2 * i * g23 / 3, 0, 0, i * g23 / 3, -i * g13, 0, -i * g23 / 3],
        [-2 * i * g23, 2 * i * g23, D[2], -i * g13, i * g13, -G31 / 3, 0, 0, (2 * G32 - G31) / 3],
        [0, 0, -i * g13 / 3, D[3], 0, -2 * i * g13 / 3, i * g23, 0, -i * g13 / 3],
        [0, 0, i * g13 / 3, 0, D[4], 2 * i * g13 / 3, 0, -i * g23, i * g13 / 3],
        [-i * g23, i * g23, -G32 / 3, -2 * i * g13, 2 * i * g13, D[5], 0, 0, (G32 - 2 * G31) / 3],
        [0, -i * g13, 0, i * g23, 0, 0, D[6], 0, 0],
        [i * g13, 0, 0, 0, -i * g23, 0, 0, D[7], 0],
        [i * g23, -i * g23, G32 / 3, -i * g13, i * g13, -G31 / 3, 0, 0, D[8]],
    ]
    b = [0, 0, (G31 + 2 * G32) / 3, 0, 0, (2 * G31 + G32) / 3, 0, 0, (G31 - G32) / 3]
    return m, b


def _vee_closed_form(p):
    i = 1j
    g12, g13 = p.g_a, p.g_b
    G21, G31 = p.gamma_a, p.gamma_b
    d12, d13 = p.delta_a, p.delta_b
    D = [
        (-G21 - G31 - 2 * i * (d12 - d13)) / 2,
        (-G21 - G31 + 2 * i * (d12 - d13)) / 2,
        (-G21 - G31) / 3,
        -G31 / 2 + i * d13,
        -G31 / 2 - i * d13,
        -2 * G31 / 3,
        -G21 / 2 + i * d12,
        -G21 / 2 - i * d12,
        -2 * G21 / 3,
    ]
    m = [
        [D[0], 0, 0, -i * g12, 0, 0, 0, i * g13, 0],
        [0, D[1], 0, 0, i * g12, 0, -i * g13, 0, 0],
        [0, 0, D[2], -i * g13, i * g13, -G31 / 3, i * g12, -i * g12, G21 / 3],
        [-i * g12, 0, -i * g13 / 3, D[3], 0, -2 * i * g13 / 3, 0, 0, -i * g13 / 3],
        [0, i * g12, i * g13 / 3, 0, D[4], 2 * i * g13 / 3, 0, 0, i * g13 / 3],
        [0, 0, (G21 - 2 * G31) / 3, -2 * i * g13, 2 * i * g13, D[5], -i * g12, i * g12, -G21 / 3],
        [0, -i * g13, i * g12 / 3, 0, 0, -i * g12 / 3, D[6], 0, -2 * i * g12 / 3],
        [i * g13, 0, -i * g12 / 3, 0, 0, i * g12 / 3, 0, D[7], 2 * i * g12 / 3],
        [0, 0, (2 * G21 - G31) / 3, -i * g13, i * g13, -G31 / 3, -2 * i * g12, 2 * i * g12, D[8]],
    ]
    b = [0, 0, (G21 - G31) / 3, 0, 0, -(G21 + 2 * G31) / 3, 0, 0, -(2 * G21 + G31) / 3]
    return m, b


def _cascade_closed_form(p):
    i = 1j
    g12, g23 = p.g_a, p.g_b
    G21, G32 = p.gamma_a, p.gamma_b
    d12, d23 = p.delta_a, p.delta_b
    D = [
        (-G21 - G32 + 2 * i * d23) / 2,
        (-G21 - G32 - 2 * i * d23) / 2,
        (-G21 - 2 * G32) / 3,
        -G32 / 2 + i * (d12 + d23),
        -G32 / 2 - i * (d12 + d23),
        -G32 / 3,
        -G21 / 2 + i * d12,
        -G21 / 2 - i * d12,
        -2 * G21 / 3,
    ]
    m = [
        [D[0], 0, -2 * i * g23 / 3, -i * g12, 0, -i * g23 / 3, 0, 0, i * g23 / 3],
        [0, D[1], 2 * i * g23 / 3, 0, i * g12, i * g23 / 3, 0, 0, -i * g23 / 3],
        [-2 * i * g23, 2 * i * g23, D[2], 0, 0, -2 * G32 / 3, i * g12, -i * g12, G21 / 3],
        [-i * g12, 0, 0, D[3], 0, 0, i * g23, 0, 0],
        [0, i * g12, 0, 0, D[4], 0, 0, -i * g23, 0],
        [-i * g23, i * g23, (G21 - G32) / 3, 0, 0, D[5], -i * g12, i * g12, -G21 / 3],
        [0, 0, i * g12 / 3, i * g23, 0, -i * g12 / 3, D[6], 0, -2 * i * g12 / 3],
        [0, 0, -i * g12 / 3, 0, -i * g23, i * g12 / 3, 0, D[7], 2 * i * g12 / 3],
        [i * g23, -i * g23, (2 * G21 + G32) / 3, 0, 0, G32 / 3, -2 * i * g12, 2 * i * g12, D[8]],
    ]
    b = [0, 0, (G21 - 2 * G32) / 3, 0, 0, -(G21 + G32) / 3, 0, 0, (G32 - 2 * G21) / 3]
    return m, b


def has_structural_null(m, atol=1e-12):
    """True if ``CONSTRAINT`` is a right and left null vector of ``m``."""
    m = np.asarray(m)
    scale = max(1.0, float(np.abs(m).max()))
    return bool(
        np.abs(m @ CONSTRAINT).max() <= atol * scale
        and np.abs(CONSTRAINT @ m).max() <= atol * scale
    )


def bordered(a):
    """Border a 9x9 (or stacked) matrix with the structural null vector.

    Returns ``[[a, n], [n^T, 0]]`` where ``n = CONSTRAINT``. When ``a`` maps
    into the constraint plane and is invertible on it, the bordered matrix is
    invertible and its solution restricted to the first nine entries is the
    plane solution of ``a x = y``.
    """
    a = np.asarray(a)
    shape = a.shape[:-2] + (10, 10)
    out = np.zeros(shape, dtype=complex)
    out[..., :9, :9] = a
    out[..., :9, 9] = CONSTRAINT
    out[..., 9, :9] = CONSTRAINT
    return out


def _regime(params):
    if params is None:
        return "the given Bloch system"
    named = ", ".join(f"{k}={v:g}" for k, v in params.named().items())
    return f"{params.config.value} ({params.dissipation_mode.value}) with {named}"


def steady_state(system):
    """Bloch vector with ``M S + B = 0`` on the constraint plane.

    Raises
    ------
    DegenerateSteadyStateError
        If the bordered system has condition number above ``CONDITION_LIMIT``,
        i.e. the steady state is not unique (undriven or trapping regimes).
    """
    structural = has_structural_null(system.m)
    a = bordered(system.m) if structural else system.m
    u, sv, vh = np.linalg.svd(a)
    cond = sv[0] / sv[-1] if sv[-1] > 0 else np.inf
    if not cond <= CONDITION_LIMIT:
        raise DegenerateSteadyStateError(
            f"steady state of {_regime(system.params)} is not unique "
            f"(condition number {cond:.3g} exceeds {CONDITION_LIMIT:.0e})"
        )
    rhs = np.concatenate([-system.b, [0.0]]) if structural else -system.b
    x = vh.conj().T @ ((u.conj().T @ rhs) / sv)
    return x[:9]


def steady_density(system):
    return density_from_bloch(steady_state(system))
