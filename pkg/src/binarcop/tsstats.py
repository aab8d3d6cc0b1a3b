"""Descriptive statistics for count series: summary table, ACF, PACF."""

from __future__ import annotations

import numpy as np

__all__ = ["summary_stats", "acf", "pacf"]


def summary_stats(x) -> tuple[float, float, float, float]:
    """(min, max, mean, variance) with the N-1 variance divisor."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("empty series")
    var = float(np.var(x, ddof=1)) if x.size > 1 else 0.0
    return float(x.min()), float(x.max()), float(x.mean()), var


def acf(x, maxlag: int) -> np.ndarray:
    """Sample autocorrelations for lags 0..maxlag.

    Uses the overall mean and the divisor-N estimator (the standard
    plotting convention); acf(0) is 1.
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    if maxlag >= n / 2:
        raise ValueError("maxlag must be below N/2")
    xc = x - x.mean()
    denom = float(np.sum(xc**2))
    if denom == 0.0:
        raise ValueError("constant series has no autocorrelation")
    out = np.empty(maxlag + 1)
    out[0] = 1.0
    for h in range(1, maxlag + 1):
        out[h] = float(np.sum(xc[:-h] * xc[h:])) / denom
    return out


def pacf(x, maxlag: int) -> np.ndarray:
    """Partial autocorrelations for lags 1..maxlag via Durbin-Levinson."""
    rho = acf(x, maxlag)
    out = np.empty(maxlag)
    phi_prev = np.zeros(0)
    for k in range(1, maxlag + 1):
        if k == 1:
            phi_k = rho[1]
            phi_prev = np.array([phi_k])
        else:
            num = rho[k] - float(np.sum(phi_prev * rho[k - 1 : 0 : -1]))
            den = 1.0 - float(np.sum(phi_prev * rho[1:k]))
            phi_k = num / den
            phi_prev = np.concatenate([phi_prev - phi_k * phi_prev[::-1], [phi_k]])
        out[k - 1] = phi_k
    return out
