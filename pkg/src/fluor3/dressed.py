"""Dressed-state eigenstructure and the five transition classes of the quintuplet.

Semiclassically the dressed energies are the eigenvalues ``l1 <= l2 <= l3`` of
the rotating-frame Hamiltonian. A fluorescence photon connects a dressed state
of the upper manifold (indices 7, 8, 9) to one of the lower manifold
(indices 1, 2, 3); the offset from the laser line is the difference of the
corresponding eigenvalues. At zero detuning the eigenvalues are
``-W, 0, +W`` with ``W = sqrt(g_a^2 + g_b^2)``, so the nine transitions fall
into five lines at ``0, +-W, +-2W`` with multiplicities 3, 2, 2, 1, 1.
"""
from dataclasses import dataclass

import numpy as np

from .models import Configuration, hamiltonian
from .su3 import dagger

OFFSET_TOLERANCE = 1e-9

# photon-number manifold labels: lower, intermediate, upper
MANIFOLDS = ("E(m,n)", "E(m-1,n+1)", "E(m-1,n)")

# (upper dressed index, lower dressed index) grouped by signed order
_CLASSES = (
    ("I", 2, [(9, 1)]),
    ("IV", 1, [(9, 2), (8, 1)]),
    ("III", 0, [(7, 1), (8, 2), (9, 3)]),
    ("II", -1, [(7, 2), (8, 3)]),
    ("V", -2, [(7, 3)]),
)


@dataclass(frozen=True, eq=False)
class DressedSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def residuals(self, h):
        h = np.asarray(h)
        res = h @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return np.linalg.norm(res, axis=0)


@dataclass(frozen=True)
class TransitionClass:
    name: str
    order: int
    side: int
    members: tuple
    predicted_offset: float
    upper_manifold: str = "E(m-1,n)"
    lower_manifold: str = "E(m,n)"

    @property
    def signed_order(self):
        return self.side * self.order


def eigensystem(h, atol=1e-12):
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian operator."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (3, 3):
        raise ValueError(f"expected a 3x3 operator, got shape {h.shape}")
    scale = max(1.0, float(np.abs(h).max()))
    if np.abs(h - dagger(h)).max() > atol * scale:
        raise ValueError("dressed-state analysis needs a Hermitian operator")
    w, v = np.linalg.eigh(h)
    return DressedSpectrum(w, v)


def _unique_sorted(values, tol):
    out = []
    for x in np.sort(values):
        if not out or x - out[-1] > tol:
            out.append(float(x))
    return out


def peak_offsets(params, tol=OFFSET_TOLERANCE):
    """Distinct pairwise dressed-energy differences ``l_i - l_j`` (sorted)."""
    lam = eigensystem(hamiltonian(params)).eigenvalues
    diffs = (lam[:, None] - lam[None, :]).ravel()
    offsets = _unique_sorted(diffs, tol)
    # differences that are zero up to roundoff collapse onto exactly zero
    return [0.0 if abs(x) <= tol else x for x in offsets]


def transition_classes(config, params=None):
    """The nine inter-manifold transitions grouped into five lines.

    With ``params`` the predicted offsets come from the dressed energies of
    that model; otherwise they are in units of the generalized Rabi frequency.
    """
    config = Configuration.parse(config)
    if params is not None and params.config is not config:
        raise ValueError("params belong to a different configuration")
    lam = None
    if params is not None:
        lam = eigensystem(hamiltonian(params)).eigenvalues
    lower, _, upper = MANIFOLDS
    classes = []
    for name, signed, members in _CLASSES:
        if lam is None:
            offset = float(signed)
        else:
            u, l = members[0]
            offset = float(lam[u - 7] - lam[l - 1])
        classes.append(
            TransitionClass(
                name=name,
                order=abs(signed),
                side=int(np.sign(signed)),
                members=tuple(members),
                predicted_offset=offset,
                upper_manifold=upper,
                lower_manifold=lower,
            )
        )
    classes.sort(key=lambda c: c.predicted_offset)
    return classes
