"""Disk Loewner evolution in the map-out convention.

Interior flow: dw/dt = w * (e^{iu} + w) / (e^{iu} - w), w(z, 0) = z, |z| < 1.
The modulus |w| is nondecreasing; a point is swallowed when w reaches the
driving point e^{iu(t)} on the circle. Boundary points are tracked by their
angle, which obeys d(alpha)/dt = cot((alpha - u) / 2); angles are kept as
unwrapped reals, and collision means alpha = u modulo 2*pi.
"""

from __future__ import annotations

import cmath
import math

from .driving import DrivingTerm
from .errors import DomainError
from .halfplane import DEFAULT_COLLISION_DELTA, _check_term_covers
from .integrate import solve_scalar
from .trajectory import Trajectory

_TWO_PI = 2.0 * math.pi


def angle_gap(alpha: float, u: float) -> float:
    """Circular distance between the angle alpha and the driving angle u, in [0, pi]."""
    m = (alpha - u) % _TWO_PI
    return min(m, _TWO_PI - m)


def evolve_disk_interior(term: DrivingTerm, z0: complex, t_end: float,
                         tol: float = 1e-10, *,
                         collision_delta: float = DEFAULT_COLLISION_DELTA,
                         capture=None) -> Trajectory:
    """Evolve an interior point z0 (|z0| < 1) of the disk.

    Swallowing is declared when |w - e^{iu(t)}| drops below ``collision_delta``.
    The origin is a fixed point of the flow.
    """
    z0 = complex(z0)
    if abs(z0) >= 1.0:
        raise ValueError("disk interior evolution needs |z0| < 1")
    _check_term_covers(term, t_end)
    u = term.value

    def f(t, w):
        e = cmath.exp(1j * u(t))
        return w * (e + w) / (e - w)

    def gap(t, w):
        return abs(w - cmath.exp(1j * u(t)))

    res = solve_scalar(f, 0.0, z0, t_end, rtol=tol, atol=tol,
                       gap=gap, gap_threshold=collision_delta, capture=capture)
    return Trajectory(res.times, res.values.astype(complex), res.swallowed_at)


def evolve_disk_boundary(term: DrivingTerm, alpha0: float, t_end: float,
                         tol: float = 1e-10, *,
                         collision_delta: float = DEFAULT_COLLISION_DELTA,
                         capture=None, record: bool = True) -> Trajectory:
    """Evolve a boundary angle alpha0 != u(0) (mod 2*pi).

    The angle is unwrapped (no mod-2*pi reduction mid-trajectory); swallowing
    is declared when the circular distance to u(t) drops below
    ``collision_delta``.
    """
    alpha0 = float(alpha0)
    _check_term_covers(term, t_end)
    u = term.value
    if angle_gap(alpha0, u(0.0)) <= collision_delta:
        raise ValueError("alpha0 coincides with u(0) modulo 2*pi within the "
                         "collision threshold")

    def f(t, a):
        return 1.0 / math.tan(0.5 * (a - u(t)))

    def gap(t, a):
        return angle_gap(a, u(t))

    res = solve_scalar(f, 0.0, alpha0, t_end, rtol=tol, atol=tol,
                       gap=gap, gap_threshold=collision_delta, capture=capture,
                       record=record)
    return Trajectory(res.times, res.values.astype(float), res.swallowed_at)
