"""Driving terms for the Loewner equation.

A driving term is a real-valued continuous function of time t >= 0. It steers
the growth of a slit: lambda(t) in the half-plane equation dh/dt = 2/(h - lambda)
and u(t) in the disk equation. This module holds the closed-form families used
throughout the package plus sampled (tabulated) terms with piecewise-linear
interpolation; the tangent-circular-slit term is built in :mod:`loewner.tangent`.

Term spec grammar (used by the CLI): ``constant:<c>``, ``sqrt:<c>``,
``lind:<c>``, ``tangent:<r>``, ``file:<path>``.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

# slack for stage times that undershoot 0 or overshoot the domain end by rounding
_TIME_SLACK = 1e-12


class DrivingTerm:
    """Base class for driving terms.

    Subclasses implement ``_raw(t)`` on the declared domain ``[0, domain_end]``
    (``domain_end = None`` means all t >= 0). Every term carries an additive
    ``offset`` so a family can be shifted without wrapping it.
    """

    #: inclusive end of the time domain, or None when defined for all t >= 0
    domain_end: float | None = None

    #: exact Lip(1/2) sup-norm when known in closed form, else None
    exact_half_norm: float | None = None

    def __init__(self, offset: float = 0.0):
        self.offset = float(offset)

    def _raw(self, t: float) -> float:
        raise NotImplementedError

    def value(self, t: float) -> float:
        """Evaluate the term at a single time."""
        return self._raw(self._clip_time(float(t))) + self.offset

    def values(self, ts) -> np.ndarray:
        """Evaluate on an array of times."""
        return np.array([self.value(t) for t in np.asarray(ts, dtype=float).ravel()])

    def __call__(self, t: float) -> float:
        return self.value(t)

    def _clip_time(self, t: float) -> float:
        if t < 0.0:
            if t < -_TIME_SLACK:
                raise DomainError(f"time {t!r} is outside the term's domain (t >= 0)")
            return 0.0
        end = self.domain_end
        if end is not None and t > end:
            if t > end + _TIME_SLACK * max(1.0, end):
                raise DomainError(f"time {t!r} is outside the term's domain [0, {end!r}]")
            return end
        return t

    def spec_string(self) -> str:
        """Canonical ``kind:params`` form; parse_term round-trips it."""
        raise NotImplementedError(f"{type(self).__name__} has no spec string")

    def __repr__(self) -> str:
        try:
            return f"{type(self).__name__}({self.spec_string()!r})"
        except NotImplementedError:
            return f"{type(self).__name__}()"


class Constant(DrivingTerm):
    """lambda(t) = c."""

    exact_half_norm = 0.0

    def __init__(self, c: float, offset: float = 0.0):
        super().__init__(offset)
        self.c = float(c)

    def _raw(self, t: float) -> float:
        return self.c

    def spec_string(self) -> str:
        return f"constant:{self.c!r}"


class Sqrt(DrivingTerm):
    """lambda(t) = c * sqrt(t), the self-similar family with ||lambda||_{1/2} = |c|."""

    def __init__(self, c: float, offset: float = 0.0):
        super().__init__(offset)
        self.c = float(c)
        self.exact_half_norm = abs(self.c)

    def _raw(self, t: float) -> float:
        return self.c * math.sqrt(t)

    def spec_string(self) -> str:
        return f"sqrt:{self.c!r}"


class Lind(DrivingTerm):
    """lambda(t) = c - c*sqrt(1 - t) on [0, 1], with ||lambda||_{1/2} = |c|.

    At c = 4 this is the extremal driving term whose boundary solution from
    x0 = 2 is caught exactly at t = 1.
    """

    domain_end = 1.0

    def __init__(self, c: float, offset: float = 0.0):
        super().__init__(offset)
        self.c = float(c)
        self.exact_half_norm = abs(self.c)

    def _raw(self, t: float) -> float:
        return self.c - self.c * math.sqrt(1.0 - t)

    def spec_string(self) -> str:
        return f"lind:{self.c!r}"


class Sampled(DrivingTerm):
    """Tabulated term with piecewise-linear interpolation between nodes.

    Times must be strictly increasing and start at 0. Linear interpolation
    preserves Lipschitz classes between nodes and keeps ODE right-hand sides
    continuous.
    """

    def __init__(self, times, values, offset: float = 0.0, source: str | None = None):
        super().__init__(offset)
        t = np.asarray(times, dtype=float)
        v = np.asarray(values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ValueError("sampled term needs matching 1-d times/values with >= 2 nodes")
        if t[0] != 0.0:
            raise ValueError("sampled term times must start at 0")
        if not np.all(np.diff(t) > 0):
            raise ValueError("sampled term times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("sampled term contains non-finite entries")
        self.times = t
        self.table_values = v
        self.domain_end = float(t[-1])
        self.source = source

    def _raw(self, t: float) -> float:
        # bisect + manual lerp: called per ODE stage, keep it cheap
        ts = self.times
        i = bisect_right(ts, t)
        if i <= 0:
            return float(self.table_values[0])
        if i >= ts.size:
            return float(self.table_values[-1])
        t0, t1 = ts[i - 1], ts[i]
        v0, v1 = self.table_values[i - 1], self.table_values[i]
        return float(v0 + (v1 - v0) * (t - t0) / (t1 - t0))

    def values(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float).ravel()
        bad = (ts < -_TIME_SLACK) | (ts > self.domain_end + _TIME_SLACK * max(1.0, self.domain_end))
        if np.any(bad):
            raise DomainError(f"times outside the sampled domain [0, {self.domain_end!r}]")
        return np.interp(ts, self.times, self.table_values) + self.offset

    def spec_string(self) -> str:
        if self.source is None:
            raise NotImplementedError("sampled term without a file source")
        return f"file:{self.source}"


class Scaled(DrivingTerm):
    """Loewner scaling of a base term: lambda_r(t) = r * base(t / r**2), r > 0.

    This is the driving term of the r-times-scaled hull; it has the same
    Lip(1/2) sup-norm as the base term.
    """

    def __init__(self, base: DrivingTerm, r: float, offset: float = 0.0):
        super().__init__(offset)
        if r <= 0:
            raise ValueError("scale factor r must be positive")
        self.base = base
        self.r = float(r)
        if base.domain_end is not None:
            self.domain_end = base.domain_end * self.r**2
        self.exact_half_norm = base.exact_half_norm

    def _raw(self, t: float) -> float:
        return self.r * self.base.value(t / self.r**2)


class FromCallable(DrivingTerm):
    """Term backed by an arbitrary callable, for analytic terms built on the fly."""

    def __init__(self, fn: Callable[[float], float], domain_end: float | None = None,
                 offset: float = 0.0, exact_half_norm: float | None = None):
        super().__init__(offset)
        self.fn = fn
        self.domain_end = domain_end
        self.exact_half_norm = exact_half_norm

    def _raw(self, t: float) -> float:
        return float(self.fn(t))


def parse_term(spec: str) -> DrivingTerm:
    """Parse a ``kind:params`` term spec (see module docstring for the grammar)."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise ValueError(f"malformed term spec {spec!r} (expected kind:params)")
    if kind == "constant":
        return Constant(_parse_float(arg, spec))
    if kind == "sqrt":
        return Sqrt(_parse_float(arg, spec))
    if kind == "lind":
        return Lind(_parse_float(arg, spec))
    if kind == "tangent":
        from .tangent import TangentTerm

        return TangentTerm(_parse_float(arg, spec))
    if kind == "file":
        return load_sampled_csv(arg)
    raise ValueError(f"unknown term kind {kind!r} in {spec!r}")


def _parse_float(arg: str, spec: str) -> float:
    try:
        return float(arg)
    except ValueError as exc:
        raise ValueError(f"malformed term spec {spec!r}: {exc}") from None


def load_sampled_csv(path: str | Path) -> Sampled:
    """Load a sampled term from CSV with header ``t,value``."""
    path = Path(path)
    lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
    if not lines or lines[0].replace(" ", "") != "t,value":
        raise ValueError(f"{path}: expected CSV header 't,value'")
    times, values = [], []
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        parts = ln.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}: malformed row {ln!r}")
        times.append(float(parts[0]))
        values.append(float(parts[1]))
    return Sampled(times, values, source=str(path))


def write_sampled_csv(path: str | Path, times: Sequence[float], values: Sequence[float]) -> None:
    """Write a sampled term in the standard ``t,value`` schema (17 significant digits)."""
    with open(path, "w") as fh:
        fh.write("t,value\n")
        for t, v in zip(times, values):
            fh.write(f"{t:.17g},{v:.17g}\n")
