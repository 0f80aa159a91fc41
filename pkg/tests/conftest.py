import numpy as np
import pytest

from fluor3 import ModelParams, Pathway

# Parameter sets for the six pathways, in units of the pathway's own decay
# rate. Key: "<config>-<reference rate>-<set>"; sets a/b are strong double
# driving, c/d have one weak field.
_FAMILIES = {
    # config, reference rate, other rate, pathway, (g_a, g_b) per set
    "lambda-G31": ("lambda", "a", 0.5, Pathway.LAMBDA_3TO1,
                   {"a": (7, 10), "b": (10, 7), "c": (0.1, 5), "d": (5, 0.1)}),
    "lambda-G32": ("lambda", "b", 0.5, Pathway.LAMBDA_3TO2,
                   {"a": (7, 10), "b": (10, 7), "c": (0.1, 5), "d": (5, 0.1)}),
    "vee-G31": ("vee", "b", 8.0, Pathway.VEE_3TO1,
                {"a": (20, 7), "b": (7, 20), "c": (7, 0.1), "d": (0.1, 7)}),
    "vee-G21": ("vee", "a", 8.0, Pathway.VEE_2TO1,
                {"a": (20, 7), "b": (7, 20), "c": (7, 0.1), "d": (0.1, 7)}),
    "cascade-G21": ("cascade", "a", 0.5, Pathway.CASCADE_2TO1,
                    {"a": (7, 10), "b": (10, 7), "c": (0.1, 7), "d": (7, 0.1)}),
    "cascade-G32": ("cascade", "b", 0.5, Pathway.CASCADE_3TO2,
                    {"a": (7, 10), "b": (10, 7), "c": (0.1, 7), "d": (7, 0.1)}),
}


def _build():
    out = {}
    for family, (config, ref_side, other, pathway, sets) in _FAMILIES.items():
        for label, (ga, gb) in sets.items():
            gammas = (1.0, other) if ref_side == "a" else (other, 1.0)
            params = ModelParams(config, ga, gb, *gammas)
            out[f"{family}-{label}"] = (params, pathway)
    return out


FIXTURES = _build()
PATHWAY_FIXTURES = [f"{family}-a" for family in _FAMILIES]
STRONG_FIXTURES = [k for k in FIXTURES if k[-1] in "ab"]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_params(rng, config, mode="paper-literal"):
    return ModelParams(
        config,
        *rng.uniform(0, 12, 2),
        *rng.uniform(0.1, 5, 2),
        *rng.uniform(-6, 6, 2),
        dissipation_mode=mode,
    )


def random_density(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
