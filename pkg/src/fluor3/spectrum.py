"""Incoherent resonance-fluorescence spectra from the Laplace resolvent."""
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy import signal

from .bloch import derive_system, steady_state
from .correlation import initial_conditions, resolvent_components
from .models import Configuration, ModelParams
from .su3 import ShiftKind

DEFAULT_POINTS = 2001
DEFAULT_PROMINENCE = 1e-3
SIGN_CONVENTIONS = ("paper", "conjugate")


class Pathway(Enum):
    LAMBDA_3TO1 = "Lambda_3to1"
    LAMBDA_3TO2 = "Lambda_3to2"
    VEE_3TO1 = "Vee_3to1"
    VEE_2TO1 = "Vee_2to1"
    CASCADE_2TO1 = "Cascade_2to1"
    CASCADE_3TO2 = "Cascade_3to2"

    @property
    def config(self):
        return _PATHWAYS[self][0]

    @property
    def row(self):
        """Raising operator evaluated at the later time."""
        return _PATHWAYS[self][1]

    @property
    def picked(self):
        """Component of the correlation vector that carries the spectrum."""
        return self.row.adjoint

    @property
    def anchor_side(self):
        """Which laser (``"a"`` or ``"b"``) sets the frequency origin."""
        return _PATHWAYS[self][2]

    @property
    def levels(self):
        return self.value.split("_")[1]

    @classmethod
    def parse(cls, value, config=None):
        """Accept enum members, full tags (``"Lambda_3to1"``) or ``"3to1"`` plus a config."""
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for p in cls:
            if text.lower() in (p.value.lower(), p.name.lower()):
                return p
        digits = "".join(ch for ch in text if ch.isdigit())
        if config is not None and len(digits) == 2:
            config = Configuration.parse(config)
            hi, lo = sorted(digits, reverse=True)
            for p in cls:
                if p.config is config and p.levels == f"{hi}to{lo}":
                    return p
            raise ValueError(
                f"{config.value} configuration has no {hi}<->{lo} pathway; "
                f"choose from {[p.levels for p in cls.for_config(config)]}"
            )
        raise ValueError(f"unknown pathway {value!r}")

    @classmethod
    def for_config(cls, config):
        config = Configuration.parse(config)
        return [p for p in cls if p.config is config]


_PATHWAYS = {
    Pathway.LAMBDA_3TO1: (Configuration.LAMBDA, ShiftKind.V_PLUS, "a"),
    Pathway.LAMBDA_3TO2: (Configuration.LAMBDA, ShiftKind.T_PLUS, "b"),
    Pathway.VEE_3TO1: (Configuration.VEE, ShiftKind.V_PLUS, "b"),
    Pathway.VEE_2TO1: (Configuration.VEE, ShiftKind.U_PLUS, "a"),
    Pathway.CASCADE_2TO1: (Configuration.CASCADE, ShiftKind.U_PLUS, "a"),
    Pathway.CASCADE_3TO2: (Configuration.CASCADE, ShiftKind.T_PLUS, "b"),
}


@dataclass(frozen=True, eq=False)
class SpectrumSeries:
    offsets: np.ndarray
    values: np.ndarray
    pathway: Pathway = None
    params: ModelParams = None
    connected: bool = True
    sign_convention: str = "paper"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        offsets = np.array(self.offsets, dtype=float).reshape(-1)
        values = np.array(self.values, dtype=float).reshape(-1)
        if offsets.shape != values.shape:
            raise ValueError("offsets and values must have the same length")
        offsets.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "values", values)

    @property
    def anchor(self):
        """Laser frequency the offsets are measured from."""
        if self.params is None or self.pathway is None:
            return 0.0
        if self.pathway.anchor_side == "a":
            return self.params.omega_laser_a
        return self.params.omega_laser_b

    @property
    def frequencies(self):
        return self.anchor + self.offsets

    @property
    def step(self):
        return float(np.min(np.diff(self.offsets))) if self.offsets.size > 1 else 0.0


class Peak(NamedTuple):
    offset: float
    height: float
    prominence: float


def default_grid(params, points=DEFAULT_POINTS):
    """Uniform grid over ``+-3 sqrt(g_a^2 + g_b^2)``.

    Without driving the half-width falls back to ten times the largest decay
    rate (or 10 if both vanish).
    """
    half = 3.0 * params.generalized_rabi
    if half == 0:
        half = 10.0 * max(params.gamma_a, params.gamma_b, 1.0)
    return np.linspace(-half, half, int(points))


def check_grid(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim == 2 and 1 in grid.shape:
        grid = grid.reshape(-1)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("frequency grid must be a non-empty 1-d array")
    if not np.all(np.isfinite(grid)):
        raise ValueError("frequency grid contains non-finite values")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("frequency grid must be strictly increasing")
    return grid


def laplace_variable(offsets, sign_convention="paper"):
    if sign_convention == "paper":
        return -1j * np.asarray(offsets, dtype=float)
    if sign_convention == "conjugate":
        return 1j * np.asarray(offsets, dtype=float)
    raise ValueError(f"sign_convention must be one of {SIGN_CONVENTIONS}, got {sign_convention!r}")


def power_spectrum(params, pathway, grid=None, connected=True, sign_convention="paper"):
    """Incoherent fluorescence spectrum of one transition pathway.

    Parameters
    ----------
    params : ModelParams
    pathway : Pathway or str
        Must belong to ``params.config``.
    grid : array_like, optional
        Offsets ``omega - Omega`` from the pathway's laser frequency;
        :func:`default_grid` when omitted.
    connected : bool
        Use fluctuation correlations (incoherent spectrum). With ``False`` the
        non-connected values ``Tr[P_row P_j rho]`` are used instead.
    sign_convention : {"paper", "conjugate"}
        ``s = -i(omega - Omega)`` or ``s = +i(omega - Omega)``.

    Returns
    -------
    SpectrumSeries
    """
    pathway = Pathway.parse(pathway, params.config)
    if pathway.config is not params.config:
        raise ValueError(
            f"pathway {pathway.value} does not belong to the {params.config.value} configuration"
        )
    grid = default_grid(params) if grid is None else check_grid(grid)
    s = laplace_variable(grid, sign_convention)
    system = derive_system(params)
    k0 = initial_conditions(pathway.row, steady_state(system), connected)
    khat = resolvent_components(system, k0, s)
    values = khat[:, pathway.picked.index].real
    return SpectrumSeries(
        grid, values, pathway, params, connected, sign_convention,
        meta={"method": "resolvent"},
    )


def find_peaks(series, prominence_fraction=DEFAULT_PROMINENCE):
    """Local maxima whose prominence is at least ``prominence_fraction * max``.

    Maxima closer than one grid step are merged (the higher one is kept).
    Returns a list of :class:`Peak` sorted by offset.
    """
    if not 0 < prominence_fraction < 1:
        raise ValueError("prominence_fraction must lie in (0, 1)")
    values = np.asarray(series.values, dtype=float)
    offsets = np.asarray(series.offsets, dtype=float)
    if values.size < 3:
        return []
    scale = values.max()
    if scale <= 0:
        scale = np.abs(values).max()
    if scale == 0:
        return []
    idx, props = signal.find_peaks(values, prominence=prominence_fraction * scale)
    peaks = []
    for i, prom in zip(idx, props["prominences"]):
        if peaks and i - peaks[-1][0] <= 1:
            if values[i] > values[peaks[-1][0]]:
                peaks[-1] = (i, prom)
            continue
        peaks.append((i, prom))
    return [Peak(float(offsets[i]), float(values[i]), float(p)) for i, p in peaks]
