import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import FIXTURES
from fluor3 import ResonanceFluorescence
from fluor3.spectrum import power_spectrum
from fluor3.validation import check_density_matrix, check_nonnegative, check_offsets


def _strong():
    return ResonanceFluorescence("lambda", g_a=7, g_b=10, gamma_a=1, gamma_b=0.5)


def test_get_params_and_clone():
    est = _strong()
    params = est.get_params()
    assert params["g_b"] == 10 and params["pathway"] is None
    twin = clone(est).set_params(pathway="3to2")
    assert twin.pathway == "3to2" and est.pathway is None


def test_predict_matches_functional_api():
    est = _strong().fit()
    grid = np.linspace(-30, 30, 61)
    params, pathway = FIXTURES["lambda-G31-a"]
    expected = power_spectrum(params, pathway, grid).values
    np.testing.assert_allclose(est.predict(grid), expected, atol=0)
    np.testing.assert_allclose(est.predict(grid[:, None]), expected, atol=0)


def test_fitted_attributes():
    est = _strong().fit()
    assert est.pathway_.levels == "3to1"
    assert np.trace(est.density_).real == pytest.approx(1.0)
    assert est.initial_conditions_.connected
    assert len(est.find_peaks()) == 5
    np.testing.assert_allclose(est.dressed_offsets(), np.array([-2, -1, 0, 1, 2]) * np.sqrt(149.0), atol=1e-12)


def test_unfitted_predict_raises():
    with pytest.raises(NotFittedError):
        _strong().predict([0.0])


def test_fit_rejects_bad_settings():
    with pytest.raises(ValueError):
        _strong().set_params(pathway="2to1").fit()
    with pytest.raises(ValueError):
        _strong().set_params(sign_convention="sideways").fit()
    with pytest.raises(ValueError):
        _strong().set_params(g_a=-1).fit()


def test_validation_helpers():
    np.testing.assert_array_equal(check_offsets(2.0), [2.0])
    with pytest.raises(ValueError):
        check_offsets(np.zeros((3, 2)))
    with pytest.raises(ValueError):
        check_offsets([])
    with pytest.raises(ValueError):
        check_offsets([np.nan])
    with pytest.raises(ValueError):
        check_density_matrix(np.eye(3))
    with pytest.raises(ValueError):
        check_density_matrix(np.array([[0.5, 1], [0, 0.5]]))
    check_density_matrix(np.eye(3) / 3)
    assert check_nonnegative("g", 2) == 2.0
    with pytest.raises(ValueError):
        check_nonnegative("g", -0.1)
