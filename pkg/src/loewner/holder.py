"""Holder-continuity estimation: sup-quotient norms and exponent fits at t=0.

The Lip(a) sup-norm of a sampled function is max over sample pairs s < t of
|f(t)-f(s)| / (t-s)**a. The exponent of a power-law-like f near 0 is estimated
by least squares on log|f(t)-f(0)| against log t over a window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FitError

#: above this sample count the all-pairs scan switches to a dyadic pair subset
DENSE_PAIR_LIMIT = 5000

#: default fit window; the exponents of interest are asymptotic statements at t -> 0+
DEFAULT_FIT_WINDOW = (1e-6, 1e-3)


@dataclass(frozen=True)
class HolderFit:
    """Result of a power-law fit near t=0 plus the sup-quotient norm of the samples."""

    exponent: float
    coefficient: float
    sup_norm: float
    grid: str

    def __post_init__(self):
        if not (0.0 < self.exponent <= 1.0 + 1e-3):
            raise FitError(f"fitted exponent {self.exponent!r} outside (0, 1]")
        if self.coefficient < 0 or self.sup_norm < 0:
            raise FitError("coefficient and sup_norm must be nonnegative")


def holder_sup_norm(times, values, exponent: float = 0.5,
                    dense_limit: int = DENSE_PAIR_LIMIT) -> float:
    """Sup of |f(t)-f(s)| / (t-s)**exponent over sample pairs.

    All O(n^2) pairs are scanned up to ``dense_limit`` samples; beyond that a
    dyadic subset is used (all pairs at power-of-two index gaps plus all pairs
    anchored at the first and last samples, which capture power-law sups).

    Parameters
    ----------
    times, values : array_like
        Strictly increasing sample times and real sample values, >= 2 samples.
    exponent : float
        Holder exponent a in (0, 1].
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.ndim != 1 or t.shape != v.shape or t.size < 2:
        raise ValueError("need >= 2 samples with matching times/values")
    if not np.all(np.diff(t) > 0):
        raise ValueError("times must be strictly increasing")
    if not (0.0 < exponent <= 1.0):
        raise ValueError("exponent must lie in (0, 1]")

    n = t.size
    if n <= dense_limit:
        best = 0.0
        block = 512
        for i0 in range(0, n - 1, block):
            i1 = min(i0 + block, n - 1)
            ti = t[i0:i1, None]
            vi = v[i0:i1, None]
            # strictly-upper-triangular part of each block row range
            dt = t[None, i0 + 1:] - ti
            dv = np.abs(v[None, i0 + 1:] - vi)
            mask = dt > 0
            if np.any(mask):
                best = max(best, float(np.max(dv[mask] / dt[mask] ** exponent)))
        return best

    idx_pairs_i = []
    idx_pairs_j = []
    gap = 1
    while gap < n:
        i = np.arange(0, n - gap)
        idx_pairs_i.append(i)
        idx_pairs_j.append(i + gap)
        gap *= 2
    j_all = np.arange(1, n)
    idx_pairs_i.append(np.zeros(n - 1, dtype=int))
    idx_pairs_j.append(j_all)
    idx_pairs_i.append(np.arange(0, n - 1))
    idx_pairs_j.append(np.full(n - 1, n - 1))
    ii = np.concatenate(idx_pairs_i)
    jj = np.concatenate(idx_pairs_j)
    return float(np.max(np.abs(v[jj] - v[ii]) / (t[jj] - t[ii]) ** exponent))


def holder_exponent_fit(times, values, window: tuple[float, float] = DEFAULT_FIT_WINDOW,
                        min_points: int = 10) -> HolderFit:
    """Fit |f(t) - f(0)| ~ coefficient * t**exponent on a log-log window.

    The first sample must sit at t=0 (it provides f(0)). The slope of the
    least-squares line of log|f-f(0)| against log t over ``window`` is the
    exponent, exp(intercept) the coefficient. The sup-quotient norm at the
    fitted exponent over all samples is reported alongside.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.size < min_points + 1 or t[0] != 0.0:
        raise FitError("need a t=0 sample plus enough points covering the window")
    lo, hi = window
    if not (0.0 < lo < hi):
        raise FitError(f"invalid fit window {window!r} (need 0 < lo < hi)")
    g = np.abs(v - v[0])
    mask = (t >= lo) & (t <= hi) & (g > 0.0)
    if int(mask.sum()) < min_points:
        raise FitError(
            f"only {int(mask.sum())} usable points in window {window!r} (need {min_points})")
    slope, intercept = np.polyfit(np.log(t[mask]), np.log(g[mask]), 1)
    fit = HolderFit(
        exponent=float(slope),
        coefficient=float(np.exp(intercept)),
        sup_norm=holder_sup_norm(t, v, exponent=min(float(slope), 1.0)),
        grid=f"{int(mask.sum())} points in [{lo:g}, {hi:g}] of {t.size} samples",
    )
    return fit

