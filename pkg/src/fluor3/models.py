"""Driven, damped three-level models in the Lambda, V and cascade configurations.

Each configuration is described by two driven transitions, labelled ``a`` and
``b`` in :class:`ModelParams`:

============  ===========  ===========  =================
config        transition a transition b decays (a, b)
============  ===========  ===========  =================
Lambda        1<->3 (13)   2<->3 (23)   Gamma31, Gamma32
Vee           1<->2 (12)   1<->3 (13)   Gamma21, Gamma31
Cascade       1<->2 (12)   2<->3 (23)   Gamma21, Gamma32
============  ===========  ===========  =================

All quantities are dimensionless, in units of a reference decay rate.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
import math

import numpy as np
from scipy.linalg import expm

from .su3 import ShiftKind, dagger, shift


class Configuration(Enum):
    LAMBDA = "lambda"
    VEE = "vee"
    CASCADE = "cascade"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "lambda": cls.LAMBDA, "λ": cls.LAMBDA, "l": cls.LAMBDA,
            "vee": cls.VEE, "v": cls.VEE,
            "cascade": cls.CASCADE, "xi": cls.CASCADE, "ξ": cls.CASCADE,
            "ladder": cls.CASCADE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(
                f"unknown configuration {value!r}; expected lambda, vee or cascade"
            ) from None

    @property
    def transitions(self):
        """Two-digit labels of the driven transitions ``(a, b)``."""
        return _TRANSITIONS[self]

    @property
    def decays(self):
        """Two-digit labels of the decay channels ``(a, b)``."""
        return _DECAYS[self]


_TRANSITIONS = {
    Configuration.LAMBDA: ("13", "23"),
    Configuration.VEE: ("12", "13"),
    Configuration.CASCADE: ("12", "23"),
}
_DECAYS = {
    Configuration.LAMBDA: ("31", "32"),
    Configuration.VEE: ("21", "31"),
    Configuration.CASCADE: ("21", "32"),
}
_FRAME_FREQUENCIES = {
    Configuration.LAMBDA: ("31", "32"),
    Configuration.VEE: ("31", "21"),
    Configuration.CASCADE: ("32", "21"),
}


class DissipationMode(Enum):
    PAPER_LITERAL = "paper-literal"
    PHYSICAL_DECAY = "physical-decay"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for mode in cls:
            if key == mode.value:
                return mode
        raise ValueError(
            f"unknown dissipation mode {value!r}; expected 'paper-literal' or 'physical-decay'"
        )


@dataclass(frozen=True)
class ModelParams:
    """Couplings, decay rates and detunings of one driven three-level atom.

    ``omega_laser_a``/``omega_laser_b`` are the absolute laser frequencies and
    ``omega_transitions`` maps ``"31"``, ``"32"``, ``"21"`` to the atomic
    frequency coefficients; both are only used to anchor spectrum axes and by
    :func:`rotating_frame_residual`.
    """

    config: Configuration
    g_a: float
    g_b: float
    gamma_a: float
    gamma_b: float
    delta_a: float = 0.0
    delta_b: float = 0.0
    omega_laser_a: float = 0.0
    omega_laser_b: float = 0.0
    omega_transitions: dict = field(default=None, compare=False)
    dissipation_mode: DissipationMode = DissipationMode.PAPER_LITERAL

    def __post_init__(self):
        object.__setattr__(self, "config", Configuration.parse(self.config))
        object.__setattr__(
            self, "dissipation_mode", DissipationMode.parse(self.dissipation_mode)
        )
        for name in ("g_a", "g_b", "gamma_a", "gamma_b", "delta_a", "delta_b",
                     "omega_laser_a", "omega_laser_b"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("g_a", "g_b", "gamma_a", "gamma_b"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")
        if self.omega_transitions is not None:
            freqs = {}
            for key, value in dict(self.omega_transitions).items():
                key = str(key).lstrip("wω_omega")
                if key not in ("31", "32", "21"):
                    raise ValueError(f"unknown transition frequency label {key!r}")
                freqs[key] = float(value)
            object.__setattr__(self, "omega_transitions", freqs)

    @classmethod
    def from_named(cls, config, **kwargs):
        """Build from transition-labelled keywords, e.g. ``g13=7, gamma31=1``.

        Recognised prefixes are ``g``, ``gamma``, ``delta`` and ``laser``
        (absolute laser frequency) followed by a transition label of the
        configuration; ``omega31``/``omega32``/``omega21`` set atomic
        frequencies. ``dissipation_mode`` passes through.
        """
        config = Configuration.parse(config)
        ta, tb = config.transitions
        da, db = config.decays
        mapping = {
            f"g{ta}": "g_a", f"g{tb}": "g_b",
            f"gamma{da}": "gamma_a", f"gamma{db}": "gamma_b",
            f"delta{ta}": "delta_a", f"delta{tb}": "delta_b",
            f"laser{ta}": "omega_laser_a", f"laser{tb}": "omega_laser_b",
        }
        out = {}
        freqs = {}
        for key, value in kwargs.items():
            if key in mapping:
                out[mapping[key]] = value
            elif key in ("omega31", "omega32", "omega21"):
                freqs[key[-2:]] = value
            elif key in ("dissipation_mode", "omega_transitions"):
                out[key] = value
            else:
                raise ValueError(
                    f"unknown parameter {key!r} for {config.value} configuration "
                    f"(expected one of {sorted(mapping)} or omega31/omega32/omega21)"
                )
        if freqs:
            out["omega_transitions"] = {**(out.get("omega_transitions") or {}), **freqs}
        out.setdefault("g_a", 0.0)
        out.setdefault("g_b", 0.0)
        out.setdefault("gamma_a", 0.0)
        out.setdefault("gamma_b", 0.0)
        return cls(config=config, **out)

    def named(self):
        """Transition-labelled view of the numeric parameters."""
        ta, tb = self.config.transitions
        da, db = self.config.decays
        return {
            f"g{ta}": self.g_a, f"g{tb}": self.g_b,
            f"gamma{da}": self.gamma_a, f"gamma{db}": self.gamma_b,
            f"delta{ta}": self.delta_a, f"delta{tb}": self.delta_b,
        }

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def generalized_rabi(self):
        return math.hypot(self.g_a, self.g_b)


def hamiltonian(params):
    """Time-independent rotating-frame Hamiltonian of the configuration."""
    c = params.config
    ga, gb = params.g_a, params.g_b
    da, db = params.delta_a, params.delta_b
    if c is Configuration.LAMBDA:
        d13, d23, g13, g23 = da, db, ga, gb
        h = [
            [(d13 + d23) / 3, g23, g13],
            [g23, (d13 - 2 * d23) / 3, 0.0],
            [g13, 0.0, -(2 * d13 - d23) / 3],
        ]
    elif c is Configuration.VEE:
        d12, d13, g12, g13 = da, db, ga, gb
        h = [
            [(2 * d13 - d12) / 3, 0.0, g13],
            [0.0, (2 * d12 - d13) / 3, g12],
            [g13, g12, -(d12 + d13) / 3],
        ]
    else:
        d12, d23, g12, g23 = da, db, ga, gb
        h = [
            [(d12 + 2 * d23) / 3, g23, 0.0],
            [g23, (d12 - d23) / 3, g12],
            [0.0, g12, -(2 * d12 + d23) / 3],
        ]
    return np.array(h, dtype=complex)


_JUMPS = {
    (Configuration.LAMBDA, DissipationMode.PAPER_LITERAL): (ShiftKind.V_PLUS, ShiftKind.T_PLUS),
    (Configuration.LAMBDA, DissipationMode.PHYSICAL_DECAY): (ShiftKind.V_MINUS, ShiftKind.T_MINUS),
    (Configuration.VEE, DissipationMode.PAPER_LITERAL): (ShiftKind.U_MINUS, ShiftKind.V_MINUS),
    (Configuration.VEE, DissipationMode.PHYSICAL_DECAY): (ShiftKind.U_MINUS, ShiftKind.V_MINUS),
    (Configuration.CASCADE, DissipationMode.PAPER_LITERAL): (ShiftKind.U_MINUS, ShiftKind.T_MINUS),
    (Configuration.CASCADE, DissipationMode.PHYSICAL_DECAY): (ShiftKind.U_MINUS, ShiftKind.T_MINUS),
}


def jump_operators(params):
    """List of ``(rate, operator)`` Lindblad channels.

    In ``paper-literal`` mode the Lambda channels are ``V+`` and ``T+``
    (population pumped into ``|3>``); ``physical-decay`` swaps them for the
    lowering operators. V and cascade are identical in both modes.

    The list is ordered as in the model equations: Lambda ``[(Gamma31, .),
    (Gamma32, .)]``, Vee ``[(Gamma31, V-), (Gamma21, U-)]``, cascade
    ``[(Gamma32, T-), (Gamma21, U-)]``.
    """
    op_a, op_b = _JUMPS[(params.config, params.dissipation_mode)]
    pairs = [(params.gamma_a, shift(op_a)), (params.gamma_b, shift(op_b))]
    if params.config is not Configuration.LAMBDA:
        pairs.reverse()
    return pairs


def liouvillian_apply(params, rho, *, _h=None, _jumps=None):
    """Right-hand side of the master equation evaluated at ``rho``.

    ``rho`` may also be a stack of matrices with shape ``(..., 3, 3)``.
    """
    h = hamiltonian(params) if _h is None else _h
    jumps = jump_operators(params) if _jumps is None else _jumps
    rho = np.asarray(rho, dtype=complex)
    out = -1j * (h @ rho - rho @ h)
    for rate, c in jumps:
        if rate == 0:
            continue
        cd = dagger(c)
        cdc = cd @ c
        out = out + rate * (c @ rho @ cd - 0.5 * (cdc @ rho + rho @ cdc))
    return out


def frame_generator(params):
    """Diagonal generator ``A`` of the frame unitary ``U(t) = exp(-i A t)``."""
    c = params.config
    wa, wb = params.omega_laser_a, params.omega_laser_b
    if c is Configuration.LAMBDA:
        w13, w23 = wa, wb
        a = ((2 * w13 - w23) * shift("V3") + (2 * w23 - w13) * shift("T3")) / 3
    elif c is Configuration.VEE:
        w12, w13 = wa, wb
        a = ((2 * w12 - w13) * shift("U3") + (2 * w13 - w12) * shift("V3")) / 3
    else:
        w12, w23 = wa, wb
        a = ((2 * w12 + w23) * shift("U3") + (w12 + 2 * w23) * shift("T3")) / 3
    return a


def _require_frequencies(params):
    if params.omega_transitions is None:
        raise ValueError("atomic transition frequencies (omega_transitions) are required")
    needed = _FRAME_FREQUENCIES[params.config]
    missing = [k for k in needed if k not in params.omega_transitions]
    if missing:
        raise ValueError(
            f"{params.config.value} frame transformation needs omega{', omega'.join(missing)}"
        )
    return [params.omega_transitions[k] for k in needed]


def lab_hamiltonian(params, t):
    """Lab-frame Hamiltonian ``H(t)`` with two classical drives."""
    w1, w2 = _require_frequencies(params)
    c = params.config
    if c is Configuration.LAMBDA:
        diag = w1 * shift("V3") + w2 * shift("T3")
        up_a, up_b = shift("V+"), shift("T+")
    elif c is Configuration.VEE:
        diag = w1 * shift("V3") + w2 * shift("U3")
        up_a, up_b = shift("U+"), shift("V+")
    else:
        diag = w1 * shift("T3") + w2 * shift("U3")
        up_a, up_b = shift("U+"), shift("T+")
    drive = (
        params.g_a * up_a * np.exp(-1j * params.omega_laser_a * t)
        + params.g_b * up_b * np.exp(-1j * params.omega_laser_b * t)
    )
    return diag + drive + dagger(drive)


def detunings_from_frequencies(config, omega_transitions, omega_laser_a, omega_laser_b):
    """Detunings ``(delta_a, delta_b)`` that make the frame transformation exact."""
    config = Configuration.parse(config)
    w = {str(k).lstrip("wω_omega"): float(v) for k, v in omega_transitions.items()}
    la, lb = float(omega_laser_a), float(omega_laser_b)
    if config is Configuration.LAMBDA:
        return 2 * w["31"] + w["32"] - la, w["31"] + 2 * w["32"] - lb
    if config is Configuration.VEE:
        return w["31"] + 2 * w["21"] - la, 2 * w["31"] + w["21"] - lb
    return 2 * w["21"] - w["32"] - la, 2 * w["32"] - w["21"] - lb


def rotating_frame_residual(params, t):
    """Max-abs entry of ``U^dag H(t) U - i (dU/dt) U^dag - hamiltonian(params)``."""
    lab = lab_hamiltonian(params, t)
    a = frame_generator(params)
    u = expm(-1j * a * t)
    du = -1j * a @ u
    rotated = dagger(u) @ lab @ u - 1j * du @ dagger(u)
    return float(np.max(np.abs(rotated - hamiltonian(params))))
