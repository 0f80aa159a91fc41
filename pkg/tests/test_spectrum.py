import numpy as np
import pytest

from conftest import FIXTURES, PATHWAY_FIXTURES
from fluor3.bloch import derive_system, steady_state
from fluor3.correlation import initial_conditions, resolvent
from fluor3.models import Configuration, ModelParams
from fluor3.spectrum import (
    Pathway, SpectrumSeries, check_grid, default_grid, find_peaks, laplace_variable,
    power_spectrum,
)

LAMBDA_STRONG, _ = FIXTURES["lambda-G31-a"]
ROOT149 = np.sqrt(149.0)


def test_pathway_table():
    expected = {
        Pathway.LAMBDA_3TO1: ("V+", "V-", "a"), Pathway.LAMBDA_3TO2: ("T+", "T-", "b"),
        Pathway.VEE_3TO1: ("V+", "V-", "b"), Pathway.VEE_2TO1: ("U+", "U-", "a"),
        Pathway.CASCADE_2TO1: ("U+", "U-", "a"), Pathway.CASCADE_3TO2: ("T+", "T-", "b"),
    }
    for p, (row, picked, side) in expected.items():
        assert (p.row.value, p.picked.value, p.anchor_side) == (row, picked, side)


def test_pathway_parse():
    assert Pathway.parse("3to1", "vee") is Pathway.VEE_3TO1
    assert Pathway.parse("13", "lambda") is Pathway.LAMBDA_3TO1
    assert Pathway.parse("Cascade_3to2") is Pathway.CASCADE_3TO2
    with pytest.raises(ValueError):
        Pathway.parse("2to1", "lambda")
    with pytest.raises(ValueError):
        Pathway.parse("nonsense")
    assert [p.levels for p in Pathway.for_config(Configuration.VEE)] == ["3to1", "2to1"]


def test_pathway_config_mismatch():
    with pytest.raises(ValueError):
        power_spectrum(LAMBDA_STRONG, Pathway.VEE_3TO1)


def test_default_grid():
    g = default_grid(LAMBDA_STRONG)
    assert g.size == 2001
    assert g[0] == pytest.approx(-3 * ROOT149) and g[-1] == pytest.approx(3 * ROOT149)
    undriven = default_grid(ModelParams("vee", 0, 0, 2, 0.5))
    assert undriven[-1] == pytest.approx(20.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        check_grid([])
    with pytest.raises(ValueError):
        check_grid([0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        check_grid([0.0, np.inf])
    with pytest.raises(ValueError):
        laplace_variable([1.0], "other")


def test_quintuplet_positions_and_count():
    series = power_spectrum(LAMBDA_STRONG, "3to1")
    peaks = find_peaks(series)
    assert len(peaks) == 5
    for peak, expected in zip(peaks, ROOT149 * np.array([-2, -1, 0, 1, 2])):
        assert abs(peak.offset - expected) <= series.step


def test_autler_townes_doublet():
    params, _ = FIXTURES["lambda-G31-c"]
    assert len(find_peaks(power_spectrum(params, "3to1"))) == 2


def test_values_are_real_resolvent_component(rng):
    series = power_spectrum(LAMBDA_STRONG, "3to2")
    sys_ = derive_system(LAMBDA_STRONG)
    k0 = initial_conditions("T+", steady_state(sys_))
    for i in rng.integers(0, series.offsets.size, 10):
        s = -1j * series.offsets[i]
        expected = resolvent(sys_, k0, s)["T-"].real
        assert series.values[i] == pytest.approx(expected, abs=1e-13 * abs(series.values).max())


def test_sign_conventions_mirror_each_other():
    params = ModelParams("lambda", 4, 3, 1, 0.5, delta_a=2.0, delta_b=-1.0)
    grid = np.linspace(-15, 15, 301)
    paper = power_spectrum(params, "3to1", grid, sign_convention="paper")
    conj = power_spectrum(params, "3to1", grid, sign_convention="conjugate")
    np.testing.assert_allclose(conj.values, paper.values[::-1], atol=1e-12)
    assert np.abs(conj.values - paper.values).max() > 1e-3


@pytest.mark.parametrize("name", PATHWAY_FIXTURES)
def test_connected_spectra_softly_nonnegative(name):
    params, pathway = FIXTURES[name]
    values = power_spectrum(params, pathway).values
    assert values.min() > -1e-6 * values.max()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_zero_detuning_symmetry(name):
    params, pathway = FIXTURES[name]
    values = power_spectrum(params, pathway).values
    assert np.abs(values - values[::-1]).max() <= 1e-6 * values.max()


def test_non_connected_differs_only_near_centre():
    grid = np.linspace(-30, 30, 601)
    conn = power_spectrum(LAMBDA_STRONG, "3to1", grid, connected=True)
    full = power_spectrum(LAMBDA_STRONG, "3to1", grid, connected=False)
    assert not full.connected
    diff = np.abs(full.values - conn.values)
    assert diff[300] > diff[0]


def test_series_metadata_and_immutability():
    params = LAMBDA_STRONG.replace(omega_laser_a=280.0, omega_laser_b=260.0)
    s13 = power_spectrum(params, "3to1", [-1.0, 0.0, 1.0])
    s23 = power_spectrum(params, "3to2", [-1.0, 0.0, 1.0])
    assert s13.anchor == 280.0 and s23.anchor == 260.0
    np.testing.assert_array_equal(s23.frequencies, [259.0, 260.0, 261.0])
    with pytest.raises(ValueError):
        s13.values[0] = 1.0
    with pytest.raises(ValueError):
        SpectrumSeries([0.0, 1.0], [1.0])


def _series(values):
    x = np.arange(len(values), dtype=float)
    return SpectrumSeries(x, values)


def test_find_peaks_single_lorentzian():
    x = np.linspace(-5, 5, 101)
    peaks = find_peaks(SpectrumSeries(x, 1 / (1 + (x - 1.2) ** 2)))
    assert len(peaks) == 1 and peaks[0].offset == pytest.approx(1.2)


def test_find_peaks_constant_and_threshold():
    assert find_peaks(_series(np.ones(50))) == []
    with pytest.raises(ValueError):
        find_peaks(_series(np.ones(5)), 0.0)
    values = np.zeros(40)
    values[10], values[30] = 1.0, 1e-4
    assert len(find_peaks(_series(values))) == 1
    assert len(find_peaks(_series(values), 1e-5)) == 2


def test_find_peaks_sorted_with_prominence():
    values = np.zeros(60)
    values[[5, 25, 45]] = [0.5, 1.0, 0.7]
    peaks = find_peaks(_series(values))
    assert [p.offset for p in peaks] == [5.0, 25.0, 45.0]
    assert all(p.prominence >= 1e-3 for p in peaks)
