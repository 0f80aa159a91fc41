"""scikit-learn style front end for the fluorescence spectrum.

The model has no training data: ``fit`` builds the Bloch system and steady
state from the hyper-parameters, ``predict`` maps frequency offsets to
spectrum values. Because the estimator follows the ``get_params`` /
``set_params`` protocol it can be cloned, grid-searched over couplings, or
dropped into a ``Pipeline`` after a transformer that produces offsets.
"""
import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from . import dressed
from .bloch import density_from_bloch, derive_system, steady_state
from .correlation import initial_conditions, resolvent_components
from .models import ModelParams
from .spectrum import (
    DEFAULT_PROMINENCE, Pathway, SpectrumSeries, default_grid, find_peaks, laplace_variable,
)
from .validation import check_offsets


class ResonanceFluorescence(RegressorMixin, BaseEstimator):
    """Incoherent fluorescence spectrum of a driven three-level atom.

    Parameters
    ----------
    config : {"lambda", "vee", "cascade"}
    g_a, g_b : float
        Couplings of the two driven transitions (see :class:`ModelParams`).
    gamma_a, gamma_b : float
        Decay rates of the two channels.
    delta_a, delta_b : float
        Detunings.
    pathway : str, optional
        Emission pathway, e.g. ``"3to1"``; defaults to the configuration's
        first pathway.
    connected : bool
        Subtract the coherent part of the correlation.
    sign_convention : {"paper", "conjugate"}
    dissipation_mode : {"paper-literal", "physical-decay"}

    Attributes
    ----------
    params_ : ModelParams
    system_ : BlochSystem
    steady_state_ : ndarray of shape (9,)
    density_ : ndarray of shape (3, 3)
    initial_conditions_ : CorrelationVector
    pathway_ : Pathway
    """

    def __init__(self, config="lambda", g_a=0.0, g_b=0.0, gamma_a=1.0, gamma_b=1.0,
                 delta_a=0.0, delta_b=0.0, pathway=None, connected=True,
                 sign_convention="paper", dissipation_mode="paper-literal"):
        self.config = config
        self.g_a = g_a
        self.g_b = g_b
        self.gamma_a = gamma_a
        self.gamma_b = gamma_b
        self.delta_a = delta_a
        self.delta_b = delta_b
        self.pathway = pathway
        self.connected = connected
        self.sign_convention = sign_convention
        self.dissipation_mode = dissipation_mode

    def _model_params(self):
        return ModelParams(
            config=self.config, g_a=self.g_a, g_b=self.g_b,
            gamma_a=self.gamma_a, gamma_b=self.gamma_b,
            delta_a=self.delta_a, delta_b=self.delta_b,
            dissipation_mode=self.dissipation_mode,
        )

    def fit(self, X=None, y=None):
        """Build the Bloch system, steady state and regression initial conditions.

        ``X`` and ``y`` are ignored; they exist for pipeline compatibility.
        """
        params = self._model_params()
        if self.pathway is None:
            pathway = Pathway.for_config(params.config)[0]
        else:
            pathway = Pathway.parse(self.pathway, params.config)
        if pathway.config is not params.config:
            raise ValueError(f"pathway {pathway.value} does not belong to {params.config.value}")
        laplace_variable(0.0, self.sign_convention)

        self.params_ = params
        self.pathway_ = pathway
        self.system_ = derive_system(params)
        self.steady_state_ = steady_state(self.system_)
        self.density_ = density_from_bloch(self.steady_state_)
        self.initial_conditions_ = initial_conditions(
            pathway.row, self.steady_state_, bool(self.connected)
        )
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        """Spectrum values at the offsets ``X`` (shape ``(n,)`` or ``(n, 1)``)."""
        check_is_fitted(self, "system_")
        offsets = check_offsets(X)
        s = laplace_variable(offsets, self.sign_convention)
        khat = resolvent_components(self.system_, self.initial_conditions_, s)
        return khat[:, self.pathway_.picked.index].real

    def spectrum(self, grid=None):
        """Evaluate on ``grid`` (default: the automatic grid) as a SpectrumSeries."""
        check_is_fitted(self, "system_")
        grid = default_grid(self.params_) if grid is None else check_offsets(grid)
        return SpectrumSeries(
            grid, self.predict(grid), self.pathway_, self.params_,
            bool(self.connected), self.sign_convention, meta={"method": "resolvent"},
        )

    def find_peaks(self, grid=None, prominence_fraction=DEFAULT_PROMINENCE):
        return find_peaks(self.spectrum(grid), prominence_fraction)

    def dressed_offsets(self):
        """Line positions predicted by the dressed-state energies."""
        check_is_fitted(self, "params_")
        return np.array(dressed.peak_offsets(self.params_))
