"""Exact map for the half-plane slit along a circular arc tangent to the real line.

The slit grows along the circle of radius 1 centered at i, tangent to the real
axis at the origin. The inverse map f(., t): H -> H minus the arc has a closed
Christoffel-Schwarz form with two finite prevertices alpha(t) < 0 < beta(t):

    1/f(w, t) = log((w - alpha)/(w - beta)) / (2*pi)
                + ((alpha + beta)/(beta - alpha)) / (w - alpha),

with the logarithm branch vanishing at infinity. The tip prevertex (the zero
of the integrand's numerator, where f' vanishes) is gamma = 2*alpha + beta,
and gamma(t) is exactly the driving term lambda(t) of the corresponding
half-plane Loewner flow. Hydrodynamic normalization f = w - 2t/w + O(w^-2)
together with the tangency condition pin the prevertices through

    beta = alpha + 2*sqrt(-pi*alpha),      alpha*(3*alpha + 4*sqrt(-pi*alpha)) = -6t,

so with alpha = -s**2 the parameter solve is the scalar root of
P(s) = 3*s**4 - 4*sqrt(pi)*s**3 + 6*t on the branch s -> 0 as t -> 0. Small-t
expansions: alpha = -(9/(4*pi))**(1/3) * t**(2/3) + ..., beta =
(12*pi)**(1/3) * t**(1/3) + ..., hence lambda is Lip(1/3) at 0, never Lip(1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .driving import DrivingTerm
from .errors import DomainError, PoleError, RootFindingError

#: default validity cap; the construction is local near t = 0 and the scalar
#: equation has the small-root branch only while P has two positive roots
#: (t < pi**2/6); 0.05 keeps the arc a proper slit with ample margin
T_MAX_DEFAULT = 0.05

_SQRT_PI = math.sqrt(math.pi)
_NEWTON_RESIDUAL_TOL = 1e-14
_NEWTON_MAX_ITER = 60


@dataclass(frozen=True)
class SlitParams:
    """Christoffel-Schwarz parameters of the tangent circular slit at time t."""

    t: float
    alpha: float
    beta: float
    gamma_prevertex: float


@dataclass(frozen=True)
class SeriesCoefficients:
    """Leading expansion constants of the tangent-slit construction."""

    alpha_leading: float   # alpha(t) ~ -alpha_leading * t**(2/3)
    beta_leading: float    # beta(t) ~ beta_leading * t**(1/3); also drives lambda
    A2: float              # next alpha coefficient: alpha = -a1 t**(2/3) + A2 t + ...
    h_t43_coeff: float     # h(z, t) = z + 2t/z + h_t43_coeff * t**(4/3) + ...


def series_coefficients() -> SeriesCoefficients:
    beta_leading = (12.0 * math.pi) ** (1.0 / 3.0)
    return SeriesCoefficients(
        alpha_leading=-((9.0 / (4.0 * math.pi)) ** (1.0 / 3.0)),
        beta_leading=beta_leading,
        A2=-3.0 / (4.0 * math.pi),
        h_t43_coeff=1.5 * beta_leading,
    )


def solve_params(t: float, *, t_max: float = T_MAX_DEFAULT) -> SlitParams:
    """Prevertices (alpha, beta, gamma) of the tangent slit at time t.

    Safeguarded Newton on P(s) = 3 s^4 - 4 sqrt(pi) s^3 + 6 t for s = sqrt(-alpha),
    tracking the small root (bracketed in (0, sqrt(pi)), where P changes sign),
    from the initial guess s = (3 t / (2 sqrt(pi)))**(1/3).
    """
    t = float(t)
    if not (0.0 <= t <= t_max):
        raise DomainError(f"t={t!r} outside the tangent-slit domain [0, {t_max!r}]")
    if t_max >= math.pi ** 2 / 6.0:
        raise DomainError("t_max must stay below pi**2/6, where the small root branch ends")
    if t == 0.0:
        return SlitParams(0.0, 0.0, 0.0, 0.0)

    def p(s):
        return 3.0 * s**4 - 4.0 * _SQRT_PI * s**3 + 6.0 * t

    def dp(s):
        return 12.0 * s**3 - 12.0 * _SQRT_PI * s**2

    lo, hi = 0.0, _SQRT_PI  # p(lo) = 6t > 0, p(hi) = 6t - pi**2 < 0
    s = min(max((3.0 * t / (2.0 * _SQRT_PI)) ** (1.0 / 3.0), 1e-300), hi * 0.999)
    converged = False
    for iteration in range(_NEWTON_MAX_ITER):
        residual = p(s)
        # require one sharpening step even when the initial guess already sits
        # below the absolute residual tolerance (tiny t)
        if abs(residual) <= _NEWTON_RESIDUAL_TOL and iteration > 0:
            converged = True
            break
        if residual > 0:
            lo = s
        else:
            hi = s
        slope = dp(s)
        s_next = s - residual / slope if slope != 0.0 else 0.5 * (lo + hi)
        if not (lo < s_next < hi):
            s_next = 0.5 * (lo + hi)
        if abs(s_next - s) <= 1e-17 * max(1.0, s):
            s = s_next
            converged = abs(p(s)) <= 10.0 * _NEWTON_RESIDUAL_TOL
            break
        s = s_next
    if not converged:
        raise RootFindingError(f"prevertex solve did not converge at t={t!r}")
    alpha = -s * s
    beta = alpha + 2.0 * s * _SQRT_PI
    return SlitParams(t, alpha, beta, 2.0 * alpha + beta)


def _log1p_complex(z):
    """log(1 + z) for complex z without cancellation (Kahan's trick)."""
    z = np.asarray(z, dtype=complex)
    u = 1.0 + z
    correction = np.where(u == 1.0, 1.0, np.log(np.where(u == 1.0, 2.0, u)) / np.where(u == 1.0, 1.0, u - 1.0))
    return z * correction


def evaluate_map(params: SlitParams, w):
    """The slit map f(w, t) for w in the closed half-plane, w not a prevertex.

    Vectorized over complex arrays. The principal logarithm is the correct
    branch: on the closed upper half-plane the ratio (w - alpha)/(w - beta)
    never crosses the negative real axis, and log -> 0 at infinity. The log is
    evaluated as log1p((beta - alpha)/(w - beta)) to avoid cancellation at
    large |w| (needed for capacity extraction).
    """
    if params.t == 0.0:
        return w
    a, b = params.alpha, params.beta
    warr = np.asarray(w, dtype=complex)
    scale = max(abs(a), abs(b))
    if np.any(np.abs(warr - a) < 1e-14 * scale) or np.any(np.abs(warr - b) < 1e-14 * scale):
        raise PoleError("w coincides with a prevertex of the slit map")
    inv = _log1p_complex((b - a) / (warr - b)) / (2.0 * math.pi) \
        + ((a + b) / (b - a)) / (warr - a)
    out = 1.0 / inv
    return complex(out) if np.isscalar(w) or np.asarray(w).ndim == 0 else out


def driving_term(t: float, *, t_max: float = T_MAX_DEFAULT) -> float:
    """lambda(t) = gamma(t) = 2*alpha(t) + beta(t); lambda(0) = 0, Lip(1/3) at 0."""
    return solve_params(t, t_max=t_max).gamma_prevertex


def scaled_driving_term(r: float, t: float, *, t_max: float = T_MAX_DEFAULT) -> float:
    """Driving term of the radius-r tangent circular slit: r * lambda_1(t / r**2)."""
    if r <= 0:
        raise ValueError("radius r must be positive")
    return r * driving_term(t / (r * r), t_max=t_max)


class TangentTerm(DrivingTerm):
    """Driving term of the circular slit of radius r tangent to the real axis at 0."""

    def __init__(self, radius: float = 1.0, offset: float = 0.0,
                 t_max: float = T_MAX_DEFAULT):
        super().__init__(offset)
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.radius = float(radius)
        self.t_max = float(t_max)
        self.domain_end = self.t_max * self.radius ** 2

    def _raw(self, t: float) -> float:
        return self.radius * driving_term(t / self.radius ** 2, t_max=self.t_max)

    def spec_string(self) -> str:
        return f"tangent:{self.radius!r}"
