"""Adaptive embedded Runge-Kutta integration for scalar Loewner ODEs.

Dormand-Prince 5(4) pair with standard step control, for scalar real or
complex right-hand sides. Two features are tailored to Loewner dynamics:

* collision detection: after each accepted step an optional gap function is
  checked against a threshold; on crossing, the contact time is refined by
  bisection on the step's cubic Hermite interpolant, and the solve terminates
  with ``swallowed_at`` set;
* capture times: the stepper lands exactly on requested times so trajectories
  contain them as samples (no interpolation error at query points).

Steps never shrink below an absolute floor (default 1e-14); if the error
control demands less, integration fails loudly with the last valid state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegrationError

#: absolute step floor in time
H_FLOOR = 1e-14

# Dormand-Prince 5(4) tableau
_C = (0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
# difference between 5th order and embedded 4th order weights
_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
      -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


@dataclass
class OdeResult:
    times: np.ndarray
    values: np.ndarray
    swallowed_at: float | None
    n_steps: int


def solve_scalar(f, t0: float, y0, t_end: float, *, rtol: float = 1e-10,
                 atol: float = 1e-12, gap=None, gap_threshold: float = 0.0,
                 capture=None, h_floor: float = H_FLOOR,
                 max_steps: int = 500_000, record: bool = True) -> OdeResult:
    """Integrate dy/dt = f(t, y) from (t0, y0) to t_end.

    Parameters
    ----------
    f : callable
        Right-hand side f(t, y) -> scalar (real or complex).
    gap : callable or None
        Distance function gap(t, y) >= 0; when it drops below
        ``gap_threshold`` after an accepted step, the crossing time is
        refined on the step and the solve stops (swallowing).
    capture : array_like or None
        Times in (t0, t_end] the stepper lands on exactly.
    record : bool
        When False only the initial and final samples are kept (fast scans).
    """
    t = float(t0)
    y = y0
    if t_end < t:
        raise ValueError("t_end must be >= t0")

    cap = np.unique(np.asarray([] if capture is None else capture, dtype=float))
    cap = cap[(cap > t) & (cap <= t_end)]
    icap = 0

    times = [t]
    values = [y]

    if gap is not None and gap(t, y) < gap_threshold:
        return _result(times, values, swallowed_at=t, n_steps=0)
    if t_end == t:
        return _result(times, values, swallowed_at=None, n_steps=0)

    k1 = f(t, y)
    scale0 = atol + rtol * abs(y)
    d0 = abs(k1)
    h_prop = min((t_end - t) / 10.0, 0.01 * scale0 / d0 if d0 > 0 else (t_end - t) / 10.0)
    h_prop = max(h_prop, h_floor)

    n_steps = 0
    while t < t_end:
        if n_steps >= max_steps:
            raise IntegrationError("step budget exhausted", t, y)

        h = max(h_prop, h_floor)
        target = cap[icap] if icap < cap.size else t_end
        capped = t + h >= target
        if capped:
            h = target - t
        floored = h <= h_floor

        k2 = f(t + _C[0] * h, y + h * (_A[0][0] * k1))
        k3 = f(t + _C[1] * h, y + h * (_A[1][0] * k1 + _A[1][1] * k2))
        k4 = f(t + _C[2] * h, y + h * (_A[2][0] * k1 + _A[2][1] * k2 + _A[2][2] * k3))
        k5 = f(t + _C[3] * h, y + h * (_A[3][0] * k1 + _A[3][1] * k2 + _A[3][2] * k3
                                       + _A[3][3] * k4))
        k6 = f(t + _C[4] * h, y + h * (_A[4][0] * k1 + _A[4][1] * k2 + _A[4][2] * k3
                                       + _A[4][3] * k4 + _A[4][4] * k5))
        y_new = y + h * (_A[5][0] * k1 + _A[5][2] * k3 + _A[5][3] * k4
                         + _A[5][4] * k5 + _A[5][5] * k6)
        t_new = target if capped else t + h
        k7 = f(t_new, y_new)
        err = h * (_E[0] * k1 + _E[2] * k3 + _E[3] * k4 + _E[4] * k5
                   + _E[5] * k6 + _E[6] * k7)
        err_norm = abs(err) / (atol + rtol * max(abs(y), abs(y_new)))
        n_steps += 1

        if err_norm > 1.0 or not math.isfinite(err_norm):
            if floored:
                raise IntegrationError("step size underflow (floor hit before tolerance)", t, y)
            h_prop = h * max(0.1, 0.9 * err_norm ** -0.2) if math.isfinite(err_norm) else h * 0.1
            continue

        if gap is not None:
            g_new = gap(t_new, y_new)
            if g_new < gap_threshold or not math.isfinite(g_new):
                tau, y_tau = _refine_crossing(gap, gap_threshold, t, y, k1, t_new, y_new, k7)
                times.append(tau)
                values.append(y_tau)
                return _result(times, values, swallowed_at=tau, n_steps=n_steps)

        t, y, k1 = t_new, y_new, k7
        if icap < cap.size and t >= cap[icap]:
            icap += 1
        if record:
            times.append(t)
            values.append(y)

        if not capped:
            factor = 5.0 if err_norm == 0.0 else min(5.0, 0.9 * err_norm ** -0.2)
            h_prop = h * factor

    if not record:
        times.append(t)
        values.append(y)
    return _result(times, values, swallowed_at=None, n_steps=n_steps)


def _result(times, values, swallowed_at, n_steps) -> OdeResult:
    ts = np.asarray(times, dtype=float)
    keep = np.concatenate(([True], np.diff(ts) > 0))
    return OdeResult(times=ts[keep], values=np.asarray(values)[keep],
                     swallowed_at=swallowed_at, n_steps=n_steps)


def _hermite(theta, y0, hf0, y1, hf1):
    t2 = theta * theta
    t3 = t2 * theta
    return ((2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * hf0
            + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * hf1)


def _refine_crossing(gap, threshold, t0, y0, f0, t1, y1, f1):
    """Bisect on the step's Hermite interpolant for gap(t, y(t)) = threshold."""
    h = t1 - t0
    hf0, hf1 = h * f0, h * f1

    def g(theta):
        val = gap(t0 + theta * h, _hermite(theta, y0, hf0, y1, hf1))
        return (val - threshold) if math.isfinite(val) else -1.0

    lo, hi = 0.0, 1.0
    if g(lo) <= 0.0:
        return t0, y0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if (hi - lo) * abs(h) <= max(1e-16, 1e-13 * abs(t1)):
            break
    theta = hi
    return t0 + theta * h, _hermite(theta, y0, hf0, y1, hf1)
