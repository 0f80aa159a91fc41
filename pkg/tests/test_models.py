import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_density, random_params
from fluor3.models import (
    Configuration, DissipationMode, ModelParams, detunings_from_frequencies, hamiltonian,
    jump_operators, liouvillian_apply, rotating_frame_residual,
)
from fluor3.su3 import is_hermitian, projector, shift

rates = st.floats(0, 10, allow_nan=False)
detunings = st.floats(-10, 10, allow_nan=False)


def test_lambda_hamiltonian_zero_detuning():
    h = hamiltonian(ModelParams("lambda", g_a=7, g_b=10, gamma_a=1, gamma_b=0.5))
    assert np.array_equal(h, [[0, 10, 7], [10, 0, 0], [7, 0, 0]])


def test_cascade_diagonal_entry():
    p = ModelParams("cascade", 1, 2, 1, 1, delta_a=0.7, delta_b=-1.9)
    assert hamiltonian(p)[0, 0] == (0.7 + 2 * -1.9) / 3


@pytest.mark.parametrize("config", list(Configuration))
def test_undriven_resonant_hamiltonian_vanishes(config):
    assert not hamiltonian(ModelParams(config, 0, 0, 1, 1)).any()


def _closed_form_hamiltonian(config, ga, gb, da, db):
    if config is Configuration.LAMBDA:
        return [[(da + db) / 3, gb, ga], [gb, (da - 2 * db) / 3, 0], [ga, 0, -(2 * da - db) / 3]]
    if config is Configuration.VEE:
        return [[(2 * db - da) / 3, 0, gb], [0, (2 * da - db) / 3, ga], [gb, ga, -(da + db) / 3]]
    return [[(da + 2 * db) / 3, gb, 0], [gb, (da - db) / 3, ga], [0, ga, -(2 * da + db) / 3]]


@pytest.mark.parametrize("config", list(Configuration))
def test_hamiltonian_matches_formulas_on_random_draws(config, rng):
    for _ in range(20):
        p = random_params(rng, config)
        expected = _closed_form_hamiltonian(config, p.g_a, p.g_b, p.delta_a, p.delta_b)
        assert np.array_equal(hamiltonian(p), np.array(expected, dtype=complex))
        assert is_hermitian(hamiltonian(p), 0)


def test_jump_operators_per_mode():
    lam = ModelParams("lambda", 1, 1, 0.3, 0.7)
    (r1, c1), (r2, c2) = jump_operators(lam)
    assert (r1, r2) == (0.3, 0.7)
    assert np.array_equal(c1, shift("V+")) and np.array_equal(c2, shift("T+"))
    phys = lam.replace(dissipation_mode="physical-decay")
    (_, c1), (_, c2) = jump_operators(phys)
    assert np.array_equal(c1, shift("V-")) and np.array_equal(c2, shift("T-"))

    xi = ModelParams("cascade", 1, 1, 0.2, 0.9)
    (r1, c1), (r2, c2) = jump_operators(xi)
    assert (r1, r2) == (0.9, 0.2)
    assert np.array_equal(c1, shift("T-")) and np.array_equal(c2, shift("U-"))

    vee = ModelParams("vee", 1, 1, 0.2, 0.9)
    (r1, c1), (r2, c2) = jump_operators(vee)
    assert (r1, r2) == (0.9, 0.2)
    assert np.array_equal(c1, shift("V-")) and np.array_equal(c2, shift("U-"))
    assert all(
        np.array_equal(a[1], b[1])
        for a, b in zip(jump_operators(vee), jump_operators(vee.replace(dissipation_mode="physical-decay")))
    )


def test_liouvillian_examples():
    vee = ModelParams("vee", 0, 0, gamma_a=0.4, gamma_b=1.3)
    out = liouvillian_apply(vee, projector(3))
    np.testing.assert_allclose(out, 1.3 * (projector(1) - projector(3)), atol=1e-15)

    lam = ModelParams("lambda", 0, 0, gamma_a=1.3, gamma_b=0.0)
    out = liouvillian_apply(lam, projector(1))
    np.testing.assert_allclose(out, 1.3 * (projector(3) - projector(1)), atol=1e-15)


@pytest.mark.parametrize("mode", list(DissipationMode))
@pytest.mark.parametrize("config", list(Configuration))
def test_liouvillian_trace_and_hermiticity(config, mode, rng):
    for _ in range(10):
        p = random_params(rng, config, mode)
        rho = random_density(rng)
        out = liouvillian_apply(p, rho)
        assert abs(np.trace(out)) < 1e-14 * max(1.0, np.abs(out).max())
        assert np.abs(out - out.conj().T).max() < 1e-14 * max(1.0, np.abs(out).max())


def test_liouvillian_accepts_stacks(rng):
    p = random_params(rng, "cascade")
    rhos = np.stack([random_density(rng) for _ in range(4)])
    stacked = liouvillian_apply(p, rhos)
    for k in range(4):
        np.testing.assert_allclose(stacked[k], liouvillian_apply(p, rhos[k]), atol=1e-15)


@given(ga=rates, gb=rates, ra=rates, rb=rates, da=detunings, db=detunings,
       config=st.sampled_from(list(Configuration)))
@settings(max_examples=60, deadline=None)
def test_liouvillian_trace_property(ga, gb, ra, rb, da, db, config):
    p = ModelParams(config, ga, gb, ra, rb, da, db)
    rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
    rho[0, 2] = rho[2, 0] = 0.1
    assert abs(np.trace(liouvillian_apply(p, rho))) < 1e-12


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams("lambda", -1, 0, 1, 1)
    with pytest.raises(ValueError):
        ModelParams("lambda", 1, 0, 1, float("nan"))
    with pytest.raises(ValueError):
        ModelParams("square", 1, 0, 1, 1)
    with pytest.raises(ValueError):
        ModelParams("lambda", 1, 0, 1, 1, dissipation_mode="magic")


def test_named_constructor_round_trip():
    p = ModelParams.from_named("vee", g12=20, g13=7, gamma21=8, gamma31=1, delta13=0.5)
    assert (p.g_a, p.g_b, p.gamma_a, p.gamma_b, p.delta_b) == (20, 7, 8, 1, 0.5)
    assert p.named()["g12"] == 20
    with pytest.raises(ValueError):
        ModelParams.from_named("vee", g23=1)


def _frame_params(config, rng, t_scale=1.0):
    w = {"31": 100 + rng.uniform(0, 20), "32": 0.0, "21": 0.0}
    w["32"] = w["31"] - 30 - rng.uniform(0, 10)
    w["21"] = w["31"] - w["32"]
    la, lb = rng.uniform(150, 300, 2)
    da, db = detunings_from_frequencies(config, w, la, lb)
    return ModelParams(
        config, *rng.uniform(0, 12, 2), *rng.uniform(0, 2, 2), da, db,
        omega_laser_a=la, omega_laser_b=lb, omega_transitions=w,
    )


def test_rotating_frame_named_example():
    w = {"31": 100.0, "32": 80.0}
    da, db = detunings_from_frequencies("lambda", w, 280.0, 260.0)
    assert (da, db) == (0.0, 0.0)
    p = ModelParams("lambda", 7, 10, 1, 0.5, omega_laser_a=280, omega_laser_b=260,
                    omega_transitions=w)
    assert rotating_frame_residual(p, 0.37) < 1e-10
    spread = [rotating_frame_residual(p, t) for t in (0.0, 1.3, 7.9)]
    assert max(spread) - min(spread) < 1e-10


@pytest.mark.parametrize("config", list(Configuration))
def test_rotating_frame_random(config, rng):
    for _ in range(5):
        p = _frame_params(Configuration.parse(config), rng)
        for t in rng.uniform(0, 10, 5):
            assert rotating_frame_residual(p, t) < 1e-10


@pytest.mark.parametrize("config", list(Configuration))
def test_rotating_frame_undriven_is_exact(config, rng):
    p = _frame_params(Configuration.parse(config), rng).replace(g_a=0.0, g_b=0.0)
    assert rotating_frame_residual(p, 2.5) < 1e-12


def test_rotating_frame_detects_wrong_detuning(rng):
    p = _frame_params(Configuration.LAMBDA, rng)
    assert rotating_frame_residual(p.replace(delta_a=p.delta_a + 1.0), 0.5) > 0.1


def test_rotating_frame_requires_frequencies():
    with pytest.raises(ValueError):
        rotating_frame_residual(ModelParams("vee", 1, 1, 1, 1), 0.0)
