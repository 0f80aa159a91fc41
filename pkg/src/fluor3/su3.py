"""Gell-Mann matrices, SU(3) shift operators and small matrix helpers.

Atomic basis ordering is ``|3>, |2>, |1>`` for rows/columns 0, 1, 2, so a
3x3 operator ``A`` has ``A[0, 0] = <3|A|3>`` and ``A[2, 0] = <1|A|3>``.

The diagonal shift operators use ``V3 = (sqrt(3) lambda_8 + lambda_3) / 2``
and ``U3 = (sqrt(3) lambda_8 - lambda_3) / 2``; with this normalisation
``V3 = [V+, V-]`` and the population of ``|3>`` is ``(1 + <T3> + <V3>) / 3``.
"""
from enum import Enum

import numpy as np

SQRT3 = np.sqrt(3.0)


class ShiftKind(Enum):
    """The nine SU(3) shift operators in canonical Bloch-component order."""

    T_PLUS = "T+"
    T_MINUS = "T-"
    T3 = "T3"
    V_PLUS = "V+"
    V_MINUS = "V-"
    V3 = "V3"
    U_PLUS = "U+"
    U_MINUS = "U-"
    U3 = "U3"

    @property
    def index(self):
        return _ORDER[self]

    @property
    def adjoint(self):
        return _ADJOINT[self]

    @classmethod
    def parse(cls, label):
        """Accept ``ShiftKind`` members, ``"V+"``-style labels or member names."""
        if isinstance(label, cls):
            return label
        text = str(label).strip().replace("−", "-")
        for kind in cls:
            if text in (kind.value, kind.name):
                return kind
        raise ValueError(f"unknown shift operator {label!r}")


COMPONENTS = tuple(ShiftKind)
COMPONENT_LABELS = tuple(k.value for k in COMPONENTS)
_ORDER = {k: i for i, k in enumerate(COMPONENTS)}
_ADJOINT = {
    ShiftKind.T_PLUS: ShiftKind.T_MINUS,
    ShiftKind.T_MINUS: ShiftKind.T_PLUS,
    ShiftKind.T3: ShiftKind.T3,
    ShiftKind.V_PLUS: ShiftKind.V_MINUS,
    ShiftKind.V_MINUS: ShiftKind.V_PLUS,
    ShiftKind.V3: ShiftKind.V3,
    ShiftKind.U_PLUS: ShiftKind.U_MINUS,
    ShiftKind.U_MINUS: ShiftKind.U_PLUS,
    ShiftKind.U3: ShiftKind.U3,
}

# Permutation exchanging each (X+, X-) pair; conj of a physical Bloch vector
# permuted by this equals the vector itself.
CONJUGATION_PERMUTATION = np.array(
    [_ORDER[k.adjoint] for k in COMPONENTS], dtype=int
)

# T3 - V3 + U3 vanishes identically as an operator, so every Bloch vector of a
# matrix satisfies CONSTRAINT @ S == 0.
CONSTRAINT = np.zeros(9)
CONSTRAINT[[_ORDER[ShiftKind.T3], _ORDER[ShiftKind.U3]]] = 1.0
CONSTRAINT[_ORDER[ShiftKind.V3]] = -1.0


def _gellmann_table():
    i = 1j
    lam = np.zeros((9, 3, 3), dtype=complex)
    lam[0] = np.eye(3)
    lam[1] = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    lam[2] = [[0, -i, 0], [i, 0, 0], [0, 0, 0]]
    lam[3] = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
    lam[4] = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
    lam[5] = [[0, 0, -i], [0, 0, 0], [i, 0, 0]]
    lam[6] = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
    lam[7] = [[0, 0, 0], [0, 0, -i], [0, i, 0]]
    lam[8] = np.diag([1.0, 1.0, -2.0]) / SQRT3
    lam.setflags(write=False)
    return lam


_GELLMANN = _gellmann_table()


def gellmann(k):
    """Return the Gell-Mann matrix ``lambda_k`` (``k = 0`` is the identity).

    Parameters
    ----------
    k : int
        Index in ``0..8``.

    Returns
    -------
    ndarray, shape (3, 3), complex
        A fresh (writable) copy.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise TypeError(f"Gell-Mann index must be an integer, got {k!r}")
    if not 0 <= k <= 8:
        raise ValueError(f"Gell-Mann index must lie in 0..8, got {k}")
    return _GELLMANN[k].copy()


def _shift_table():
    lam = _GELLMANN
    table = {
        ShiftKind.T_PLUS: 0.5 * (lam[1] + 1j * lam[2]),
        ShiftKind.T_MINUS: 0.5 * (lam[1] - 1j * lam[2]),
        ShiftKind.T3: lam[3].copy(),
        ShiftKind.V_PLUS: 0.5 * (lam[4] + 1j * lam[5]),
        ShiftKind.V_MINUS: 0.5 * (lam[4] - 1j * lam[5]),
        ShiftKind.V3: 0.5 * (SQRT3 * lam[8] + lam[3]),
        ShiftKind.U_PLUS: 0.5 * (lam[6] + 1j * lam[7]),
        ShiftKind.U_MINUS: 0.5 * (lam[6] - 1j * lam[7]),
        ShiftKind.U3: 0.5 * (SQRT3 * lam[8] - lam[3]),
    }
    for op in table.values():
        # sqrt(3)/sqrt(3) leaves ~1e-16 residue; the operators are exactly integer
        op.real = np.round(op.real, 12)
        op.imag = np.round(op.imag, 12)
        op.setflags(write=False)
    return table


_SHIFT = _shift_table()
SHIFT_STACK = np.stack([_SHIFT[k] for k in COMPONENTS])
SHIFT_STACK.setflags(write=False)


def shift(kind):
    """Return the shift operator for ``kind`` (a ``ShiftKind`` or its label)."""
    return _SHIFT[ShiftKind.parse(kind)].copy()


def dagger(a):
    return np.conj(np.swapaxes(np.asarray(a), -1, -2))


def commutator(a, b):
    """``ab - ba``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a @ b - b @ a


def anticommutator(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return a @ b + b @ a


def projector(level):
    """``|level><level|`` for atomic level 1, 2 or 3."""
    if level not in (1, 2, 3):
        raise ValueError(f"atomic level must be 1, 2 or 3, got {level!r}")
    out = np.zeros((3, 3), dtype=complex)
    idx = 3 - level
    out[idx, idx] = 1.0
    return out


def is_hermitian(a, atol=1e-12):
    a = np.asarray(a)
    return bool(np.max(np.abs(a - dagger(a)), initial=0.0) <= atol)
