"""``fluor3`` command-line front end.

Usage::

    fluor3 <derive|steady|spectrum|dressed|verify> --config run.toml
           [--pathway P] [--connected true|false] [--sign paper|conjugate] [--out DIR]

Exit status: 0 on success, 1 when ``verify`` finds a check outside tolerance,
2 for usage, configuration or numerical errors.
"""
import argparse
import json
import sys

import numpy as np

from . import dressed, oracle
from .bloch import appendix_system, density_from_bloch, derive_system, steady_state
from .config import load_config
from .exceptions import Fluor3Error, UnsupportedModeError
from .output import complex_rows, svg_line_chart, write_csv, write_spectrum_csv
from .spectrum import default_grid, find_peaks, power_spectrum
from .su3 import COMPONENT_LABELS

COMMANDS = ("derive", "steady", "spectrum", "dressed", "verify")
EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def _bool(text):
    value = text.strip().lower()
    if value in ("true", "yes", "1"):
        return True
    if value in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fluor3",
        description="Resonance-fluorescence spectra of driven three-level atoms.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="TOML run configuration")
    parser.add_argument("--pathway", help="emission pathway, e.g. 3to1")
    parser.add_argument("--connected", type=_bool, metavar="true|false")
    parser.add_argument("--sign", choices=("paper", "conjugate"),
                        help="Laplace variable s = -i(w - W) (paper) or +i(w - W)")
    parser.add_argument("--out", help="output directory (overrides [output].directory)")
    return parser


def _grid(cfg):
    if cfg.grid is None:
        return default_grid(cfg.params)
    return np.linspace(cfg.grid.min, cfg.grid.max, cfg.grid.points)


def _metadata(cfg):
    p = cfg.params
    return {
        "config": p.config.value,
        "dissipation_mode": p.dissipation_mode.value,
        "parameters": p.named(),
        "reference_rate": cfg.reference_rate,
        "units": f"rates and frequencies in units of {cfg.reference_rate}",
    }


def _dump_json(path, data):
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _cmd_derive(cfg, out):
    derived = derive_system(cfg.params)
    m_rows = complex_rows(derived.m, "derived")
    b_rows = complex_rows(derived.b, "derived")
    summary = _metadata(cfg)
    try:
        closed = appendix_system(cfg.params)
    except UnsupportedModeError as exc:
        summary["closed_form"] = None
        summary["note"] = str(exc)
        message = f"derived M and B written; {exc}"
    else:
        m_rows += complex_rows(closed.m, "closed-form")
        b_rows += complex_rows(closed.b, "closed-form")
        diff = float(max(np.abs(derived.m - closed.m).max(), np.abs(derived.b - closed.b).max()))
        summary["closed_form"] = "available"
        summary["max_abs_difference"] = diff
        message = f"max |derived - closed form| = {diff:.3e}"
    write_csv(out / "derive_M.csv", ("route", "row", "col", "real", "imag"), m_rows)
    write_csv(out / "derive_B.csv", ("route", "index", "real", "imag"), b_rows)
    _dump_json(out / "derive.json", summary)
    print(message)
    return EXIT_OK


def _cmd_steady(cfg, out):
    system = derive_system(cfg.params)
    s = steady_state(system)
    rho = density_from_bloch(s)
    write_csv(
        out / "steady_bloch.csv", ("component", "real", "imag"),
        [(label, float(z.real), float(z.imag)) for label, z in zip(COMPONENT_LABELS, s)],
    )
    write_csv(out / "steady_density.csv", ("route", "row", "col", "real", "imag"),
              complex_rows(rho, "bloch"))
    summary = _metadata(cfg)
    summary["residual"] = float(np.abs(system.rhs(s)).max())
    summary["populations"] = {
        "rho33": float(rho[0, 0].real), "rho22": float(rho[1, 1].real), "rho11": float(rho[2, 2].real),
    }
    _dump_json(out / "steady.json", summary)
    pops = summary["populations"]
    print(f"rho33={pops['rho33']:.6f} rho22={pops['rho22']:.6f} rho11={pops['rho11']:.6f}")
    return EXIT_OK


def _cmd_spectrum(cfg, out):
    series = power_spectrum(cfg.params, cfg.pathway, _grid(cfg), cfg.connected, cfg.sign_convention)
    stem = f"spectrum_{cfg.pathway.value}"
    if "csv" in cfg.formats:
        write_spectrum_csv(out / f"{stem}.csv", series)
    if "svg" in cfg.formats:
        svg = svg_line_chart(
            [(cfg.pathway.value, series.offsets, series.values)],
            title=f"{cfg.params.config.value} {cfg.pathway.levels}",
            xlabel=f"offset from laser {cfg.pathway.anchor_side} / {cfg.reference_rate}",
            ylabel="S(offset)",
        )
        (out / f"{stem}.svg").write_bytes(svg.encode("utf-8"))
    peaks = find_peaks(series)
    summary = _metadata(cfg)
    summary.update(
        pathway=cfg.pathway.value, connected=cfg.connected, sign_convention=cfg.sign_convention,
        points=int(series.offsets.size), anchor=float(series.anchor),
        peaks=[p._asdict() for p in peaks],
    )
    _dump_json(out / f"{stem}.json", summary)
    print(f"{series.offsets.size} points, {len(peaks)} peaks at "
          + ", ".join(f"{p.offset:.4g}" for p in peaks))
    return EXIT_OK


def _cmd_dressed(cfg, out):
    from .models import hamiltonian

    eig = dressed.eigensystem(hamiltonian(cfg.params))
    offsets = dressed.peak_offsets(cfg.params)
    classes = dressed.transition_classes(cfg.params.config, cfg.params)
    write_csv(out / "dressed_eigenvalues.csv", ("index", "eigenvalue"),
              [(k + 1, float(v)) for k, v in enumerate(eig.eigenvalues)])
    write_csv(
        out / "dressed_classes.csv",
        ("class", "order", "side", "members", "predicted_offset", "upper_manifold", "lower_manifold"),
        [
            (c.name, c.order, c.side, " ".join(f"{u}->{l}" for u, l in c.members),
             float(c.predicted_offset), c.upper_manifold, c.lower_manifold)
            for c in classes
        ],
    )
    summary = _metadata(cfg)
    summary["eigenvalues"] = [float(v) for v in eig.eigenvalues]
    summary["peak_offsets"] = offsets
    _dump_json(out / "dressed.json", summary)
    print("peak offsets: " + ", ".join(f"{x:.6g}" for x in offsets))
    return EXIT_OK


def _cmd_verify(cfg, out):
    checks = oracle.cross_check(cfg.params, cfg.pathway, _grid(cfg), cfg.sign_convention)
    lines = [
        f"pathway {cfg.pathway.value}, connected mode, sign {cfg.sign_convention}",
        *[c.line() for c in checks],
    ]
    if not cfg.connected:
        lines.insert(1, "note: verification always compares connected correlations")
    (out / "verify_report.txt").write_bytes(("\n".join(lines) + "\n").encode("utf-8"))
    print("\n".join(lines))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


_HANDLERS = {
    "derive": _cmd_derive, "steady": _cmd_steady, "spectrum": _cmd_spectrum,
    "dressed": _cmd_dressed, "verify": _cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config).with_overrides(
            pathway=args.pathway, connected=args.connected, sign=args.sign, out=args.out
        )
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        return _HANDLERS[args.command](cfg, cfg.out_dir)
    except (Fluor3Error, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"fluor3 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"fluor3 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
