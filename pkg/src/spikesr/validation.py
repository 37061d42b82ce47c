"""Input validation helpers.

Small, reusable checks in the spirit of scikit-learn's ``check_array``: each
helper either returns a normalized ndarray/scalar or raises ``ValueError``
with the offending field named.
"""

from __future__ import annotations

import numpy as np


def check_complex_vector(values, name: str = "values", min_len: int = 1) -> np.ndarray:
    """Coerce to a 1-D complex128 array of length >= ``min_len``."""
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < min_len:
        raise ValueError(f"{name} needs at least {min_len} entries, got {arr.size}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_real_vector(values, name: str = "values", min_len: int = 1) -> np.ndarray:
    """Coerce to a 1-D float64 array of length >= ``min_len``."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < min_len:
        raise ValueError(f"{name} needs at least {min_len} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_positive(value, name: str, *, strict: bool = True) -> float:
    """Validate a positive (or non-negative) finite scalar."""
    x = float(value)
    if not np.isfinite(x):
        raise ValueError(f"{name} must be finite, got {value!r}")
    if strict and x <= 0:
        raise ValueError(f"{name} must be > 0, got {x}")
    if not strict and x < 0:
        raise ValueError(f"{name} must be >= 0, got {x}")
    return x


def check_order(value, name: str = "n", minimum: int = 1) -> int:
    """Validate an integer model order."""
    n = int(value)
    if n != value or n < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return n


def check_membership(value, allowed, name: str):
    """Validate that ``value`` is one of ``allowed``."""
    if value not in allowed:
        raise ValueError(f"{name} must be one of {sorted(allowed)}, got {value!r}")
    return value


def check_unit_moduli(phis, name: str = "phis", tol: float = 1e-6) -> np.ndarray:
    """Validate unit-modulus complex entries (post root projection)."""
    arr = check_complex_vector(phis, name)
    dev = np.abs(np.abs(arr) - 1.0)
    if dev.max() > tol:
        raise ValueError(f"{name} must lie on the unit circle within {tol}, "
                         f"worst deviation {dev.max():.3e}")
    return arr


def check_node_domain(nodes, name: str = "nodes", tol: float = 1e-12) -> np.ndarray:
    """Validate nodes in the half-open interval (-pi/2, pi/2]."""
    arr = check_real_vector(nodes, name)
    half = np.pi / 2
    if arr.min() <= -half - tol or arr.max() > half + tol:
        raise ValueError(f"{name} must lie in (-pi/2, pi/2], got range "
                         f"[{arr.min():.6g}, {arr.max():.6g}]")
    return arr
