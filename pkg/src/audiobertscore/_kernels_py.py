"""Pure NumPy scoring kernels.

Fallback used when the compiled extension is unavailable (or when
AUDIOBERTSCORE_PURE_PYTHON=1). Must stay numerically interchangeable with
audiobertscore._kernels: same formulas, float64 throughout.
"""

import numpy as np

NAME = "numpy"


def max_pr(m: np.ndarray) -> tuple[float, float]:
    """Signed mean of per-row maxima and mean of per-column maxima."""
    return float(m.max(axis=1).mean()), float(m.max(axis=0).mean())


def pnorm_pr(m: np.ndarray, p: float, clamp: bool) -> tuple[float, float]:
    """Power-mean precision/recall at exponent p on |m| (or clamped m).

    clamp=False maps entries through abs(), clamp=True through max(., 0).
    """
    x = np.maximum(m, 0.0) if clamp else np.abs(m)
    precision = float(_row_power_means(x, p).mean())
    recall = float(_row_power_means(x.T, p).mean())
    return precision, recall


def _row_power_means(x: np.ndarray, p: float) -> np.ndarray:
    # Row-wise ((1/n) sum x^p)^(1/p) for x >= 0, with the row maximum
    # factored out so x^p cannot underflow at large p; x == 0 contributes
    # exactly 0 (p * log(0) = -inf, exp(-inf) = 0).
    out = np.zeros(x.shape[0])
    xmax = x.max(axis=1)
    live = xmax > 0.0
    if not live.any():
        return out
    ratios = x[live] / xmax[live, None]
    with np.errstate(divide="ignore"):
        powered = np.exp(p * np.log(ratios))
    mean_p = powered.mean(axis=1)
    out[live] = xmax[live] * np.exp(np.log(mean_p) / p)
    return out
