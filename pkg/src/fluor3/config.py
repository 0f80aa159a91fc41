"""TOML run configurations for the command-line front end.

A configuration has three tables::

    [model]
    config = "lambda"
    g13 = 7.0            # or the generic g_a / g_b / gamma_a / ... names
    g23 = 10.0
    gamma31 = 1.0
    gamma32 = 0.5
    reference_rate = "Gamma31"

    [spectrum]
    pathway = "3to1"
    grid = "auto"        # or min = ..., max = ..., points = ...
    connected = true
    sign_convention = "paper"

    [output]
    directory = "out"
    formats = ["csv", "svg"]

Errors are reported as :class:`ConfigError` with the file name, the line of
the offending key when it can be located, and the field name.
"""
from dataclasses import dataclass, replace
from pathlib import Path
import re

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .exceptions import ConfigError
from .models import Configuration, ModelParams
from .spectrum import SIGN_CONVENTIONS, Pathway

GENERIC_KEYS = ("g_a", "g_b", "gamma_a", "gamma_b", "delta_a", "delta_b",
                "omega_laser_a", "omega_laser_b")
FORMATS = ("csv", "svg")
_SECTIONS = {"model", "spectrum", "output"}
_SPECTRUM_KEYS = {"pathway", "grid", "min", "max", "points", "connected", "sign_convention"}
_OUTPUT_KEYS = {"directory", "formats"}


@dataclass(frozen=True)
class GridSpec:
    """Explicit frequency grid; ``None`` in a RunConfig means automatic."""

    min: float
    max: float
    points: int

    def __post_init__(self):
        if self.points < 3:
            raise ValueError(f"grid needs at least 3 points, got {self.points}")
        if not self.min < self.max:
            raise ValueError(f"grid min ({self.min}) must be below max ({self.max})")


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    pathway: Pathway
    grid: GridSpec = None
    connected: bool = True
    sign_convention: str = "paper"
    out_dir: Path = Path(".")
    formats: tuple = ("csv",)
    reference_rate: str = None
    source: Path = None

    def with_overrides(self, pathway=None, connected=None, sign=None, out=None):
        changes = {}
        if pathway is not None:
            changes["pathway"] = _pathway(pathway, self.params.config)
        if connected is not None:
            changes["connected"] = connected
        if sign is not None:
            if sign not in SIGN_CONVENTIONS:
                raise ConfigError(f"sign convention must be one of {SIGN_CONVENTIONS}, got {sign!r}")
            changes["sign_convention"] = sign
        if out is not None:
            changes["out_dir"] = Path(out)
        return replace(self, **changes)


def _pathway(value, config):
    try:
        p = Pathway.parse(value, config)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if p.config is not config:
        raise ConfigError(
            f"pathway {p.value} does not belong to the {config.value} configuration; "
            f"choose from {[q.levels for q in Pathway.for_config(config)]}"
        )
    return p


def _locate(text, section, key):
    """1-based line number of ``key = ...`` inside ``[section]``, or None."""
    current = None
    header = re.compile(r"^\s*\[([^\]]+)\]")
    assign = re.compile(r"^\s*([A-Za-z0-9_\-\"']+)\s*=")
    for lineno, line in enumerate(text.splitlines(), 1):
        m = header.match(line)
        if m:
            current = m.group(1).strip()
            continue
        m = assign.match(line)
        if m and current == section and m.group(1).strip("\"'") == key:
            return lineno
    return None


class _Reporter:
    def __init__(self, path, text):
        self.path = path
        self.text = text

    def error(self, section, key, message):
        line = _locate(self.text, section, key) if key else None
        where = f"{self.path}:{line}" if line else str(self.path)
        field_name = f"{section}.{key}" if key else section
        return ConfigError(f"{where}: [{field_name}] {message}")


def _number(rep, section, table, key, default=None):
    if key not in table:
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise rep.error(section, key, f"expected a number, got {value!r}")
    return float(value)


def _model_params(rep, table):
    if "config" not in table:
        raise rep.error("model", None, "missing required key 'config'")
    try:
        config = Configuration.parse(table["config"])
    except ValueError as exc:
        raise rep.error("model", "config", str(exc)) from None
    ta, tb = config.transitions
    da, db = config.decays
    named = {
        f"g{ta}": "g_a", f"g{tb}": "g_b",
        f"gamma{da}": "gamma_a", f"gamma{db}": "gamma_b",
        f"delta{ta}": "delta_a", f"delta{tb}": "delta_b",
        f"laser{ta}": "omega_laser_a", f"laser{tb}": "omega_laser_b",
    }
    values = {}
    origin = {}
    freqs = {}
    for key in table:
        if key in ("config", "dissipation_mode", "reference_rate"):
            continue
        if key in GENERIC_KEYS:
            target = key
        elif key in named:
            target = named[key]
        elif key in ("omega31", "omega32", "omega21"):
            freqs[key[-2:]] = _number(rep, "model", table, key)
            continue
        else:
            raise rep.error(
                "model", key,
                f"unknown key for the {config.value} configuration; expected one of "
                f"{sorted(named)} (or generic {list(GENERIC_KEYS)})",
            )
        if target in values:
            raise rep.error("model", key, f"duplicates a value already given for {target}")
        values[target] = _number(rep, "model", table, key)
        origin[target] = key
    kwargs = dict(values)
    if freqs:
        kwargs["omega_transitions"] = freqs
    if "dissipation_mode" in table:
        kwargs["dissipation_mode"] = table["dissipation_mode"]
    for required in ("g_a", "g_b", "gamma_a", "gamma_b"):
        kwargs.setdefault(required, 0.0)
    try:
        return ModelParams(config=config, **kwargs)
    except ValueError as exc:
        text = str(exc)
        key = "dissipation_mode" if "dissipation" in text else None
        for target, user_key in origin.items():
            if text.startswith(target + " "):
                key = user_key
                text = text.replace(target, user_key, 1)
        raise rep.error("model", key, text) from None


def _grid(rep, table):
    grid = table.get("grid", "auto")
    explicit = any(k in table for k in ("min", "max", "points"))
    if isinstance(grid, dict):
        source, keyname = grid, "grid"
    elif grid == "auto" and not explicit:
        return None
    elif grid == "auto" or grid == "explicit":
        source, keyname = table, None
    else:
        raise rep.error("spectrum", "grid", f"expected \"auto\" or a min/max/points table, got {grid!r}")
    missing = [k for k in ("min", "max", "points") if k not in source]
    if missing:
        raise rep.error("spectrum", keyname or missing[0], f"explicit grid is missing {missing}")
    points = source["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise rep.error("spectrum", keyname or "points", f"points must be an integer, got {points!r}")
    try:
        return GridSpec(
            _number(rep, "spectrum", source, "min"), _number(rep, "spectrum", source, "max"), points
        )
    except ValueError as exc:
        raise rep.error("spectrum", keyname or "points", str(exc)) from None


def parse_config(text, path="<config>", base_dir=None):
    """Parse TOML ``text`` into a :class:`RunConfig`."""
    rep = _Reporter(path, text)
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: malformed TOML: {exc}") from None
    for section in data:
        if section not in _SECTIONS:
            raise rep.error(section, None, f"unknown table; expected {sorted(_SECTIONS)}")
    if "model" not in data:
        raise ConfigError(f"{path}: missing required table [model]")
    params = _model_params(rep, data["model"])

    spec = data.get("spectrum", {})
    for key in spec:
        if key not in _SPECTRUM_KEYS:
            raise rep.error("spectrum", key, f"unknown key; expected one of {sorted(_SPECTRUM_KEYS)}")
    if "pathway" in spec:
        try:
            pathway = _pathway(spec["pathway"], params.config)
        except ConfigError as exc:
            raise rep.error("spectrum", "pathway", str(exc)) from None
    else:
        pathway = Pathway.for_config(params.config)[0]
    connected = spec.get("connected", True)
    if not isinstance(connected, bool):
        raise rep.error("spectrum", "connected", f"expected true or false, got {connected!r}")
    sign = spec.get("sign_convention", "paper")
    if sign not in SIGN_CONVENTIONS:
        raise rep.error("spectrum", "sign_convention", f"expected one of {SIGN_CONVENTIONS}, got {sign!r}")

    out = data.get("output", {})
    for key in out:
        if key not in _OUTPUT_KEYS:
            raise rep.error("output", key, f"unknown key; expected one of {sorted(_OUTPUT_KEYS)}")
    formats = out.get("formats", ["csv"])
    if isinstance(formats, str):
        formats = [formats]
    if not isinstance(formats, list) or any(f not in FORMATS for f in formats):
        raise rep.error("output", "formats", f"expected a list drawn from {FORMATS}, got {formats!r}")
    out_dir = Path(out.get("directory", "."))
    if base_dir is not None and not out_dir.is_absolute():
        out_dir = Path(base_dir) / out_dir

    reference = data["model"].get("reference_rate")
    if reference is None:
        reference = f"Gamma{params.config.decays[0]}"

    return RunConfig(
        params=params, pathway=pathway, grid=_grid(rep, spec), connected=connected,
        sign_convention=sign, out_dir=out_dir, formats=tuple(dict.fromkeys(formats)),
        reference_rate=str(reference), source=Path(path),
    )


def load_config(path):
    """Read and parse a configuration file; relative output paths resolve against it."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read configuration ({exc.strerror})") from None
    return parse_config(text, path=str(path), base_dir=path.parent)
