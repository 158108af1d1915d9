"""Averaging primitives shared by the two-point fluxes."""

import numpy as np

# Below this value of ((a-b)/(a+b))^2 the direct quotient loses digits
# to cancellation; the truncated series is then exact to machine level.
_SERIES_CUTOFF = 1.0e-4


def _ordered(a, b):
    # Canonical argument order makes the means bitwise symmetric.
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return lo, hi


def log_mean(a, b):
    """Logarithmic mean (b - a) / (ln b - ln a), stable for a ~ b.

    Accepts scalars or broadcasting arrays; inputs must be positive.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a <= 0.0) or np.any(b <= 0.0):
        raise ValueError("log_mean requires positive arguments")
    lo, hi = _ordered(a, b)
    zeta = ((hi - lo) / (hi + lo)) ** 2
    series = (lo + hi) / (2.0 + zeta * (2.0 / 3.0 + zeta * (2.0 / 5.0 + zeta * (2.0 / 7.0))))
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (hi - lo) / np.log(hi / lo)
    out = np.where(zeta < _SERIES_CUTOFF, series, direct)
    return float(out) if out.ndim == 0 else out


def inv_log_mean(a, b):
    """Reciprocal of the logarithmic mean, computed without the
    intermediate division so small differences stay accurate."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a <= 0.0) or np.any(b <= 0.0):
        raise ValueError("inv_log_mean requires positive arguments")
    lo, hi = _ordered(a, b)
    zeta = ((hi - lo) / (hi + lo)) ** 2
    series = (2.0 + zeta * (2.0 / 3.0 + zeta * (2.0 / 5.0 + zeta * (2.0 / 7.0)))) / (lo + hi)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.log(hi / lo) / (hi - lo)
    out = np.where(zeta < _SERIES_CUTOFF, series, direct)
    return float(out) if out.ndim == 0 else out
