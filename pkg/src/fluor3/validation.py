"""Input checks shared by the estimator, the CLI and the functional API."""
import numpy as np

from .su3 import is_hermitian


def check_offsets(X):
    """Coerce frequency offsets to a 1-d float array.

    Accepts a 1-d array, a scalar, or a single-column 2-d array (the
    scikit-learn ``(n_samples, 1)`` layout).
    """
    x = np.asarray(X, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1)
    elif x.ndim == 2:
        if x.shape[1] != 1:
            raise ValueError(
                f"expected offsets of shape (n,) or (n, 1), got {x.shape}"
            )
        x = x[:, 0]
    elif x.ndim != 1:
        raise ValueError(f"expected offsets of shape (n,) or (n, 1), got {x.shape}")
    if x.size == 0:
        raise ValueError("at least one frequency offset is required")
    if not np.all(np.isfinite(x)):
        raise ValueError("frequency offsets must be finite")
    return x


def check_density_matrix(rho, atol=1e-10):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise ValueError(f"density matrix must be 3x3, got {rho.shape}")
    if not is_hermitian(rho, atol):
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho) - 1) > atol:
        raise ValueError("density matrix must have unit trace")
    return rho


def check_nonnegative(name, value):
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be a finite non-negative number, got {value!r}")
    return value
