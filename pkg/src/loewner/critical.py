"""Critical-norm machinery: the g_n recursion, its zeros y_n -> 4, the c_n
iteration, and the collision-threshold experiment locating the value 4.

g_1(y) = y - 4/y and g_n(y) = y - 4/g_{n-1}(y) have zeros y_n forming a
strictly increasing sequence with limit 4 (numerically y_n matches
4*cos(pi/(n+2)); that closed form is validated against bisection in the tests,
never used as ground truth). The iteration c_0 = c, c_{n+1} = c - 4/((1+eps)*c_n)
must stay positive for a boundary collision at t = 1 to be possible, which
forces c >= 4/(1+eps). The experiment side drives the family
lambda_c(t) = c - c*sqrt(1-t) (norm c) against a grid of starting points and
reports the empirical threshold of collision by t = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .driving import Lind
from .errors import PoleError, RootFindingError
from .halfplane import DEFAULT_COLLISION_DELTA, evolve_boundary

#: pole guard for the recursion denominators
POLE_TOL = 1e-12


def g_eval(n: int, y: float, *, pole_tol: float = POLE_TOL) -> float:
    """Evaluate g_n(y); raises PoleError when a denominator vanishes."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = float(y)
    for _ in range(1, n + 1):
        # v holds g_{k-1}; g_0 interpreted as y itself makes g_1 = y - 4/y
        if abs(v) < pole_tol:
            raise PoleError(f"g recursion hit a pole at y={y!r}")
        v = y - 4.0 / v
    return v


def y_sequence(n_max: int, *, tol: float = 1e-12) -> np.ndarray:
    """Zeros y_1..y_{n_max}, each bisected on (y_{n-1}, 4) to width ``tol``.

    g_n rises from -inf just right of y_{n-1} (where g_{n-1} vanishes) to a
    positive value at 4, so the bracket always carries a sign change.
    """
    ys = []
    prev = POLE_TOL  # g_1 has a pole at 0; y_1 lies in (0, 4)
    for n in range(1, n_max + 1):
        lo = prev + 1e-9
        hi = 4.0
        f_lo = _g_safe(n, lo)
        f_hi = _g_safe(n, hi)
        if not (f_lo < 0.0 < f_hi):
            raise RootFindingError(f"bracketing failed for y_{n}")
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if _g_safe(n, mid) < 0.0:
                lo = mid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        ys.append(root)
        prev = root
    return np.asarray(ys)


def y_zero(n: int, *, tol: float = 1e-12) -> float:
    """The zero y_n of g_n on (y_{n-1}, 4)."""
    return float(y_sequence(n, tol=tol)[-1])


def _g_safe(n: int, y: float) -> float:
    try:
        return g_eval(n, y)
    except PoleError:
        # nudge off the pole; measure-zero event inside the bracket
        return g_eval(n, y + 1e-11)


@dataclass(frozen=True)
class CIterationResult:
    """The c_n sequence and whether it stayed positive through n_max."""

    c: float
    eps: float
    values: np.ndarray
    crossed_at: int | None

    @property
    def verdict(self) -> str:
        return "stays_positive" if self.crossed_at is None else "crosses_zero"

    @property
    def norm_floor(self) -> float:
        """4/(1+eps): a collision at t=1 needs every iterate positive, which
        forces the driving norm to or above this value; the eps -> 0 limit is 4."""
        return 4.0 / (1.0 + self.eps)


def c_iteration(c: float, eps: float = 1e-6, n_max: int = 10000) -> CIterationResult:
    """Iterate c_0 = c, c_{n+1} = c - 4/((1+eps) c_n) until sign loss or n_max.

    Positivity of every c_n is the necessary condition for a collision at
    t = 1 under a driving term of norm c; it fails for c below ~4/(1+eps).
    """
    if c <= 0:
        raise ValueError("c must be positive")
    if eps < 0:
        raise ValueError("eps must be >= 0")
    vals = [float(c)]
    crossed = None
    for n in range(1, n_max + 1):
        prev = vals[-1]
        if prev <= 0:
            break
        nxt = c - 4.0 / ((1.0 + eps) * prev)
        vals.append(nxt)
        if nxt <= 0:
            crossed = n
            break
    return CIterationResult(c=float(c), eps=float(eps), values=np.asarray(vals),
                            crossed_at=crossed)


@dataclass(frozen=True)
class ThresholdVerdict:
    c: float
    collides: bool
    first_collision_t: float | None
    x0: float | None


@dataclass(frozen=True)
class ThresholdExperiment:
    verdicts: tuple[ThresholdVerdict, ...]

    @property
    def threshold(self) -> float | None:
        """Infimum of colliding c on the grid, or None when nothing collides."""
        colliding = [v.c for v in self.verdicts if v.collides]
        return min(colliding) if colliding else None

    @property
    def is_monotone(self) -> bool:
        """Once colliding, every larger c on the grid collides too."""
        seen = False
        for v in sorted(self.verdicts, key=lambda v: v.c):
            if seen and not v.collides:
                return False
            seen = seen or v.collides
        return True


def default_x0_grid(lam0: float = 0.0, n: int = 200) -> np.ndarray:
    """Geometric grid of starting points to the right of lambda(0)."""
    return lam0 + np.geomspace(1e-3, 20.0, n)


def collision_threshold_experiment(c_grid, x0_grid=None, *, tol: float = 1e-9,
                                   collision_delta: float = DEFAULT_COLLISION_DELTA,
                                   t1_slack: float = 1e-3) -> ThresholdExperiment:
    """For each c, does some x0 collide with lambda_c(t) = c - c*sqrt(1-t) by t=1?

    Collision by t=1 includes the endpoint within ``t1_slack`` (the c=4 case
    collides exactly at t=1). The x0 scan short-circuits on the first hit.
    """
    cs = np.asarray(c_grid, dtype=float)
    verdicts = []
    for c in cs:
        term = Lind(float(c))
        grid = default_x0_grid(term.value(0.0)) if x0_grid is None \
            else np.asarray(x0_grid, dtype=float)
        hit_t = hit_x0 = None
        for x0 in grid:
            traj = evolve_boundary(term, float(x0), 1.0, tol,
                                   collision_delta=collision_delta, record=False)
            if traj.is_swallowed and traj.swallowed_at <= 1.0 + t1_slack:
                hit_t, hit_x0 = traj.swallowed_at, float(x0)
                break
        verdicts.append(ThresholdVerdict(c=float(c), collides=hit_t is not None,
                                         first_collision_t=hit_t, x0=hit_x0))
    return ThresholdExperiment(verdicts=tuple(verdicts))
