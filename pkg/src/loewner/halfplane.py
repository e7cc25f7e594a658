"""Half-plane Loewner evolution: dh/dt = 2 / (h - lambda(t)), h(z, 0) = z.

This is the map-out convention: h(., t) maps the half-plane minus a growing
hull onto the half-plane. The map-in convention (minus sign on the right-hand
side) is the same flow run backward in time and is not implemented separately.
Interior points (Im z > 0) flow until they either survive to t_end or collide
with the driving term (swallowing). Real points x != lambda(0) obey the same
ODE on the line. The two singular solutions h-(t) <= lambda(t) <= h+(t) start
at the singular point lambda(0) itself and bound the interval swallowed by
time t; they behave like lambda(0) +- A*sqrt(t) near 0 and are computed by a
square-root ansatz handoff into the adaptive integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .driving import DrivingTerm
from .errors import BootstrapError, DomainError, IntegrationError, LoewnerError
from .holder import holder_sup_norm
from .integrate import solve_scalar
from .trajectory import Trajectory

#: default collision threshold on |h - lambda|; square-root contact cannot be
#: resolved much below sqrt(eps) in the time variable, so this sits well above
DEFAULT_COLLISION_DELTA = 1e-6

#: default handoff time for the singular-solution ansatz
DEFAULT_BOOTSTRAP_T0 = 1e-8

#: the ansatz is seeded this much earlier than t0 and integrated up to t0
_SEED_REFINEMENT = 256.0


@dataclass(frozen=True)
class SwallowedInterval:
    """The interval [h-(t), h+(t)] absorbed by the hull up to time t."""

    t: float
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("swallowed interval needs lower <= upper")


@dataclass(frozen=True)
class RatioDiagnostic:
    """Growth ratios phi(t) = (h+(t) - lambda(0)) / sqrt(t) against the sharp bound.

    For a driving term with Lip(1/2) norm c the limsup of phi at 0+ is bounded
    by A = (c + sqrt(c**2 + 16)) / 2, with equality for lambda = c*sqrt(t).
    """

    times: np.ndarray
    ratio: np.ndarray
    bound: float
    norm_used: float

    def __post_init__(self):
        if self.bound < 2.0 - 1e-12:
            raise ValueError("ratio bound is below its minimum value 2")

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.ratio))


def sharp_ratio_bound(c: float) -> float:
    """A = (c + sqrt(c**2 + 16)) / 2, the extremal sqrt-coefficient of h+."""
    return 0.5 * (c + math.sqrt(c * c + 16.0))


def _check_term_covers(term: DrivingTerm, t_end: float):
    if t_end < 0:
        raise DomainError("t_end must be nonnegative")
    if term.domain_end is not None and t_end > term.domain_end * (1 + 1e-12):
        raise DomainError(
            f"t_end={t_end!r} exceeds the term's domain end {term.domain_end!r}")


def evolve_interior(term: DrivingTerm, z0: complex, t_end: float, tol: float = 1e-10,
                    *, collision_delta: float = DEFAULT_COLLISION_DELTA,
                    capture=None) -> Trajectory:
    """Evolve an interior point z0 (Im z0 > 0) under the half-plane equation.

    Returns an adaptively sampled trajectory; if |h - lambda| falls below
    ``collision_delta`` the point is reported swallowed at the refined contact
    time. ``capture`` times are landed on exactly and appear as samples.
    """
    z0 = complex(z0)
    if z0.imag <= 0:
        raise ValueError("interior evolution needs Im z0 > 0")
    _check_term_covers(term, t_end)
    lam = term.value

    def f(t, y):
        return 2.0 / (y - lam(t))

    def gap(t, y):
        return abs(y - lam(t))

    res = solve_scalar(f, 0.0, z0, t_end, rtol=tol, atol=tol,
                       gap=gap, gap_threshold=collision_delta, capture=capture)
    return Trajectory(res.times, res.values.astype(complex), res.swallowed_at)


def evolve_boundary(term: DrivingTerm, x0: float, t_end: float, tol: float = 1e-10,
                    *, collision_delta: float = DEFAULT_COLLISION_DELTA,
                    capture=None, record: bool = True) -> Trajectory:
    """Evolve a real point x0 != lambda(0); the sign of x - lambda is preserved
    until swallowing."""
    x0 = float(x0)
    _check_term_covers(term, t_end)
    lam = term.value
    lam0 = lam(0.0)
    if abs(x0 - lam0) <= collision_delta:
        raise ValueError(
            "x0 coincides with lambda(0) within the collision threshold; "
            "use singular_plus/singular_minus for the singular solutions")

    def f(t, y):
        return 2.0 / (y - lam(t))

    def gap(t, y):
        return abs(y - lam(t))

    res = solve_scalar(f, 0.0, x0, t_end, rtol=tol, atol=tol,
                       gap=gap, gap_threshold=collision_delta, capture=capture,
                       record=record)
    return Trajectory(res.times, res.values.astype(float), res.swallowed_at)


def _sqrt_ansatz(term: DrivingTerm, t_start: float, sign: int, dt: float) -> float:
    """Square-root ansatz value of the singular solution at t_start + dt.

    Solves the stationarity relation of the ratio ODE with the local driving
    increment d = lambda(t_start + dt) - lambda(t_start):
    h+- = lambda(t_start) + d/2 +- sqrt(d**2/4 + 4 dt). Exact for lambda(t_start + s)
    = lambda(t_start) + c*sqrt(s), asymptotically correct otherwise.
    """
    lam_s = term.value(t_start)
    d = term.value(t_start + dt) - lam_s
    return lam_s + 0.5 * d + sign * math.sqrt(0.25 * d * d + 4.0 * dt)


def _singular(term: DrivingTerm, sign: int, t_start: float, t_end: float, tol: float,
              t0: float, capture=None) -> Trajectory:
    _check_term_covers(term, t_end)
    if t_end < t_start:
        raise DomainError("t_end must be >= the start time of the singular solution")
    lam_start = term.value(t_start)
    if t_end == t_start:
        return Trajectory(np.array([t_start]), np.array([lam_start]))

    span = t_end - t_start
    cap = np.asarray([] if capture is None else capture, dtype=float)
    cap_rel = cap[cap > t_start] - t_start
    dt_seed = min(t0, span / 4.0)
    if cap_rel.size:
        dt_seed = min(dt_seed, float(cap_rel.min()) / 4.0)
    dt_fine = dt_seed / _SEED_REFINEMENT

    lam = term.value

    def f(t, y):
        return 2.0 / (y - lam(t))

    # seed early and integrate up to the handoff time; for steep terms
    # (e.g. Lip(1/3) driving) the relaxation rate 2/gap**2 outruns the step
    # floor near 0, in which case the direct ansatz at the handoff is used
    y_fine = _sqrt_ansatz(term, t_start, sign, dt_fine)
    try:
        res0 = solve_scalar(f, t_start + dt_fine, y_fine, t_start + dt_seed,
                            rtol=tol, atol=tol, record=False)
        y_seed = res0.values[-1]
    except IntegrationError:
        y_seed = _sqrt_ansatz(term, t_start, sign, dt_seed)
    gap_seed = sign * (y_seed - lam(t_start + dt_seed))
    gap_ansatz = sign * (_sqrt_ansatz(term, t_start, sign, dt_seed) - lam(t_start + dt_seed))
    if not math.isfinite(y_seed) or gap_seed <= 0:
        raise BootstrapError(
            f"singular bootstrap left its side at t={t_start + dt_seed!r}")
    if gap_ansatz > 0 and abs(gap_seed - gap_ansatz) > 0.9 * gap_ansatz:
        raise BootstrapError(
            "square-root ansatz residual above tolerance after refinement "
            f"(relative gap mismatch {abs(gap_seed - gap_ansatz) / gap_ansatz:.2f})")

    res = solve_scalar(f, t_start + dt_seed, y_seed, t_end, rtol=tol, atol=tol,
                       capture=cap)
    times = np.concatenate(([t_start], res.times))
    values = np.concatenate(([lam_start], res.values.astype(float)))
    return Trajectory(times, values)


def singular_plus(term: DrivingTerm, t_end: float, tol: float = 1e-10,
                  *, t0: float = DEFAULT_BOOTSTRAP_T0, capture=None) -> Trajectory:
    """The upper singular solution h+ with h+(0) = lambda(0)."""
    return _singular(term, +1, 0.0, t_end, tol, t0, capture)


def singular_minus(term: DrivingTerm, t_end: float, tol: float = 1e-10,
                   *, t0: float = DEFAULT_BOOTSTRAP_T0, capture=None) -> Trajectory:
    """The lower singular solution h- with h-(0) = lambda(0)."""
    return _singular(term, -1, 0.0, t_end, tol, t0, capture)


def swallowed_interval(term: DrivingTerm, t_grid, tol: float = 1e-10,
                       *, t0: float = DEFAULT_BOOTSTRAP_T0) -> list[SwallowedInterval]:
    """Intervals [h-(t), h+(t)] on a time grid, with ordering checks.

    Raises LoewnerError if the computed endpoints violate monotonicity or fail
    to straddle the driving term (they do in exact arithmetic).
    """
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid < 0):
        raise ValueError("t_grid must be a nonempty 1-d array of times >= 0")
    sorted_grid = np.unique(grid)
    t_end = float(sorted_grid[-1])
    minus = _singular(term, -1, 0.0, t_end, tol, t0, capture=sorted_grid)
    plus = _singular(term, +1, 0.0, t_end, tol, t0, capture=sorted_grid)
    by_time = {}
    for t in sorted_grid:
        lo = float(minus.value_at(t))
        hi = float(plus.value_at(t))
        if t > 0:
            lam_t = term.value(float(t))
            if not (lo < lam_t < hi):
                raise LoewnerError(
                    f"singular solutions fail to straddle lambda at t={t!r}")
        by_time[float(t)] = SwallowedInterval(float(t), lo, hi)
    lows = np.array([by_time[float(t)].lower for t in sorted_grid])
    ups = np.array([by_time[float(t)].upper for t in sorted_grid])
    if np.any(np.diff(lows) >= 0) or np.any(np.diff(ups) <= 0):
        raise LoewnerError("swallowed interval endpoints are not strictly monotone")
    return [by_time[float(t)] for t in grid]


def ratio_limsup_check(term: DrivingTerm, t_grid, *, norm: float | None = None,
                       tol: float = 1e-10, t0: float = DEFAULT_BOOTSTRAP_T0) -> RatioDiagnostic:
    """phi(t) = (h+(t) - lambda(0)) / sqrt(t) on a grid, against the sharp bound.

    ``norm`` is the Lip(1/2) norm c of the term; when omitted it is taken from
    the term's closed form if available, else estimated from samples.
    """
    grid = np.sort(np.asarray(t_grid, dtype=float))
    if grid.size == 0 or np.any(grid <= 0):
        raise ValueError("t_grid must contain positive times")
    c = norm
    if c is None:
        c = term.exact_half_norm
    if c is None:
        t_end = float(grid[-1])
        if term.domain_end is not None:
            t_end = min(t_end, term.domain_end)
        ts = np.concatenate(([0.0], np.geomspace(max(1e-12, t_end * 1e-9), t_end, 2000)))
        c = holder_sup_norm(ts, term.values(ts), exponent=0.5)
    lam0 = term.value(0.0)
    plus = singular_plus(term, float(grid[-1]), tol, t0=t0, capture=grid)
    phi = (plus.values_at(grid).astype(float) - lam0) / np.sqrt(grid)
    return RatioDiagnostic(times=grid, ratio=phi, bound=sharp_ratio_bound(float(c)),
                           norm_used=float(c))


def singular_family(term: DrivingTerm, tau_grid, t_end: float, tol: float = 1e-10,
                    *, t0: float = DEFAULT_BOOTSTRAP_T0,
                    check_points: int = 33) -> list[tuple[Trajectory, Trajectory]]:
    """Pairs of singular solutions restarted from the slit tip at each tau.

    Each pair starts at h(gamma(tau), tau) = lambda(tau). Straddling of the
    driving term and strict nesting of later-started pairs inside earlier ones
    are checked on a shared grid; violations raise LoewnerError.
    """
    taus = np.sort(np.asarray(tau_grid, dtype=float))
    if taus.size == 0 or np.any(taus < 0) or np.any(taus >= t_end):
        raise ValueError("tau_grid must lie within [0, t_end)")
    t_lo = float(taus[-1]) + (t_end - float(taus[-1])) / 64.0
    shared = np.geomspace(t_lo, t_end, check_points) if t_lo > 0 else \
        np.linspace(t_end / check_points, t_end, check_points)
    pairs = []
    for tau in taus:
        cap = shared[shared > tau]
        minus = _singular(term, -1, float(tau), t_end, tol, t0, capture=cap)
        plus = _singular(term, +1, float(tau), t_end, tol, t0, capture=cap)
        for t in cap:
            lam_t = term.value(float(t))
            if not (minus.value_at(t) < lam_t < plus.value_at(t)):
                raise LoewnerError(
                    f"singular pair from tau={tau!r} fails to straddle lambda at t={t!r}")
        pairs.append((minus, plus))
    for (m1, p1), (m2, p2), tau2 in zip(pairs, pairs[1:], taus[1:]):
        for t in shared[shared > tau2]:
            if not (m1.value_at(t) < m2.value_at(t) and p2.value_at(t) < p1.value_at(t)):
                raise LoewnerError(
                    f"singular family pairs are not nested at t={t!r}")
    return pairs
