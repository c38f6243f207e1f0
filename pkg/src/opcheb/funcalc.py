"""Scalar functions with order metadata, and the spectral functional calculus.

The catalog carries authoritative flags (monotonicity, operator
monotonicity, positivity) for a fixed family of functions; numerical
checkers never try to infer operator monotonicity from samples, because
sampling cannot decide it. What sampling *can* decide is refuted here:
:func:`check_synchronous` and :func:`check_supermultiplicative` search a
grid for a violating pair and return it as a witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import SpectrumDomainError
from .linalg import HermitianMatrix, hermitian_eigen, hermitian_part

ENDPOINT_SLACK = 1e-10
PROBE_POINTS = 256


class Tri(Enum):
    """Tri-state declared metadata: trusted yes/no, or unknown."""

    TRUE = "declared_true"
    FALSE = "declared_false"
    UNKNOWN = "unknown"

    @property
    def is_true(self) -> bool:
        return self is Tri.TRUE


@dataclass(frozen=True)
class Interval:
    """A real interval with open/closed endpoints; infinities allowed."""

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def contains(self, x: float, slack: float = 0.0) -> bool:
        """Membership test; ``slack`` loosens closed endpoints only.

        Open endpoints stay strict so that, e.g., a zero eigenvalue is
        still rejected by a function defined on (0, inf).
        """
        lo_ok = x > self.lo if self.lo_open else x >= self.lo - slack
        hi_ok = x < self.hi if self.hi_open else x <= self.hi + slack
        return lo_ok and hi_ok

    def covers(self, other: "Interval", slack: float = 0.0) -> bool:
        return self.contains(other.lo, slack) and self.contains(other.hi, slack)

    def clamp(self, x: float) -> float:
        """Pull a point inside closed endpoints (used for round-off slack)."""
        if not self.lo_open and x < self.lo:
            return self.lo
        if not self.hi_open and x > self.hi:
            return self.hi
        return x

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def __repr__(self):
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{self.lo}, {self.hi}{right}"


REALS = Interval(-math.inf, math.inf, True, True)
NONNEG = Interval(0.0, math.inf, False, True)
POSITIVE = Interval(0.0, math.inf, True, True)


@dataclass(frozen=True)
class Witness:
    """A violating sample found by a grid check."""

    points: tuple
    violation: float

    def __post_init__(self):
        if not self.violation > 0:
            raise ValueError("a witness must carry a positive violation")


@dataclass(frozen=True)
class ScalarFunction:
    """A named real function with a domain and declared order flags.

    ``fn`` must accept floats and numpy arrays elementwise. Flags marked
    UNKNOWN are never used by checkers that require the property.
    Registration probes the function on a grid to confirm it is total
    and finite on its domain.
    """

    name: str
    domain: Interval
    fn: Callable
    monotone_increasing: Tri = Tri.UNKNOWN
    monotone_decreasing: Tri = Tri.UNKNOWN
    operator_monotone: Tri = Tri.UNKNOWN
    operator_decreasing: Tri = Tri.UNKNOWN
    nonnegative: Tri = Tri.UNKNOWN

    def __post_init__(self):
        for x in _probe_grid(self.domain):
            y = self.fn(x)
            if not np.isfinite(y):
                raise ValueError(f"function {self.name!r} is not finite at t={x!r}")

    def __call__(self, x):
        return self.fn(x)


def _probe_grid(domain: Interval) -> np.ndarray:
    lo, hi = domain.lo, domain.hi
    if not math.isfinite(lo):
        lo = hi - 200.0 if math.isfinite(hi) else -100.0
    if not math.isfinite(hi):
        hi = lo + 200.0
    span = hi - lo
    if span == 0.0:
        return np.array([lo])
    eps = 1e-9 * max(1.0, abs(lo), abs(hi))
    a = lo + eps if domain.lo_open or not math.isfinite(domain.lo) else lo
    b = hi - eps if domain.hi_open or not math.isfinite(domain.hi) else hi
    return np.linspace(a, b, PROBE_POINTS)


def apply_function(f: ScalarFunction, a: HermitianMatrix) -> HermitianMatrix:
    """Continuous functional calculus: f(A) = V diag(f(lambda_j)) V*.

    The spectrum must lie in ``f.domain`` up to a 1e-10 slack at closed
    endpoints (eigenvalues of generated positive matrices touch zero);
    eigenvalues inside the slack are clamped onto the endpoint before
    evaluation. A violating eigenvalue raises
    :class:`SpectrumDomainError` naming it.
    """
    es = hermitian_eigen(a)
    vals = []
    for lam in es.values:
        lam = float(lam)
        if not f.domain.contains(lam, slack=ENDPOINT_SLACK):
            raise SpectrumDomainError(
                f"eigenvalue {lam!r} lies outside the domain {f.domain} of {f.name!r}"
            )
        vals.append(float(f.fn(f.domain.clamp(lam))))
    return hermitian_part((es.vectors * np.asarray(vals)) @ es.vectors.conj().T)


def apply_product(f: ScalarFunction, g: ScalarFunction, a: HermitianMatrix) -> HermitianMatrix:
    """The commuting product f(A)g(A), computed in one spectral pass."""
    es = hermitian_eigen(a)
    vals = []
    for lam in es.values:
        lam = float(lam)
        for h in (f, g):
            if not h.domain.contains(lam, slack=ENDPOINT_SLACK):
                raise SpectrumDomainError(
                    f"eigenvalue {lam!r} lies outside the domain {h.domain} of {h.name!r}"
                )
        vals.append(float(f.fn(f.domain.clamp(lam))) * float(g.fn(g.domain.clamp(lam))))
    return hermitian_part((es.vectors * np.asarray(vals)) @ es.vectors.conj().T)


def _sample_grid(interval: Interval, grid_n: int) -> np.ndarray:
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    if not interval.finite:
        raise ValueError("grid checks need a finite interval")
    if interval.hi == interval.lo:
        raise ValueError(f"empty interval {interval}")
    return np.linspace(interval.lo, interval.hi, grid_n)


def check_synchronous(
    f: ScalarFunction, g: ScalarFunction, interval: Interval, grid_n: int = 64
) -> Witness | None:
    """Grid search for a pair violating (f(t)-f(s))(g(t)-g(s)) >= 0.

    Returns None when every pair on the uniform inclusive grid passes
    (a sampling check only, not a proof), otherwise the first violating
    pair in scan order.
    """
    for h in (f, g):
        if not h.domain.covers(interval, slack=ENDPOINT_SLACK):
            raise ValueError(f"interval {interval} is not inside the domain of {h.name!r}")
    grid = _sample_grid(interval, grid_n)
    fv = np.asarray([float(f.fn(x)) for x in grid])
    gv = np.asarray([float(g.fn(x)) for x in grid])
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            prod = (fv[j] - fv[i]) * (gv[j] - gv[i])
            if prod < -1e-12:
                return Witness(points=(float(grid[i]), float(grid[j])), violation=float(-prod))
    return None


def check_supermultiplicative(
    f: ScalarFunction, interval: Interval, grid_n: int = 64
) -> Witness | None:
    """Grid search for a pair violating f(xy) >= f(x)f(y) - 1e-12.

    The interval must be closed under the products that the grid
    produces; a product escaping the domain raises ValueError naming
    the pair.
    """
    if not f.domain.covers(interval, slack=ENDPOINT_SLACK):
        raise ValueError(f"interval {interval} is not inside the domain of {f.name!r}")
    grid = _sample_grid(interval, grid_n)
    for x in grid:
        for y in grid:
            if not f.domain.contains(float(x * y), slack=ENDPOINT_SLACK):
                raise ValueError(
                    f"product {float(x * y)!r} of pair ({float(x)}, {float(y)}) escapes "
                    f"the domain {f.domain} of {f.name!r}"
                )
    fv = {float(x): float(f.fn(x)) for x in grid}
    for x in grid:
        for y in grid:
            lhs = float(f.fn(f.domain.clamp(float(x * y))))
            gap = fv[float(x)] * fv[float(y)] - lhs
            if gap > 1e-12:
                return Witness(points=(float(x), float(y)), violation=float(gap))
    return None


# --- bundled catalog ------------------------------------------------------
#
# Flags come from standard matrix-analysis facts: t^p is operator monotone
# exactly for p in [0, 1]; 1/t and t^-p (p in (0, 1]) are operator
# decreasing on (0, inf); log is operator monotone; 2t/(1+t) is operator
# monotone on [0, inf); affine maps follow the sign of the slope; exp and
# min(t, c) are scalar monotone but not operator monotone.


def _tri(b: bool) -> Tri:
    return Tri.TRUE if b else Tri.FALSE


def _make_pow(p: float) -> ScalarFunction:
    if p >= 0:
        dom = NONNEG
    else:
        dom = POSITIVE
    return ScalarFunction(
        name=f"pow:{p:g}",
        domain=dom,
        fn=lambda t, p=p: np.power(t, p),
        monotone_increasing=_tri(p > 0) if p != 0 else Tri.TRUE,
        monotone_decreasing=_tri(p < 0) if p != 0 else Tri.TRUE,
        operator_monotone=_tri(0 <= p <= 1),
        operator_decreasing=_tri(-1 <= p <= 0),
        nonnegative=Tri.TRUE,
    )


def _make_exp(alpha: float) -> ScalarFunction:
    return ScalarFunction(
        name=f"exp:{alpha:g}",
        domain=REALS,
        fn=lambda t, a=alpha: np.exp(a * t),
        monotone_increasing=_tri(alpha >= 0),
        monotone_decreasing=_tri(alpha <= 0),
        operator_monotone=_tri(alpha == 0),
        operator_decreasing=_tri(alpha == 0),
        nonnegative=Tri.TRUE,
    )


def _make_affine(slope: float, offset: float) -> ScalarFunction:
    return ScalarFunction(
        name=f"affine:{slope:g}:{offset:g}",
        domain=REALS,
        fn=lambda t, a=slope, b=offset: a * t + b,
        monotone_increasing=_tri(slope >= 0),
        monotone_decreasing=_tri(slope <= 0),
        operator_monotone=_tri(slope >= 0),
        operator_decreasing=_tri(slope <= 0),
        nonnegative=_tri(slope == 0 and offset >= 0),
    )


def _make_min(cap: float) -> ScalarFunction:
    return ScalarFunction(
        name=f"min:{cap:g}",
        domain=REALS,
        fn=lambda t, c=cap: np.minimum(t, c),
        monotone_increasing=Tri.TRUE,
        monotone_decreasing=Tri.FALSE,
        operator_monotone=Tri.FALSE,
        operator_decreasing=Tri.FALSE,
        nonnegative=Tri.UNKNOWN,
    )


def _make_const(c: float) -> ScalarFunction:
    return ScalarFunction(
        name=f"const:{c:g}",
        domain=REALS,
        fn=lambda t, c=c: np.full_like(np.asarray(t, dtype=float), c) if np.ndim(t) else c,
        monotone_increasing=Tri.TRUE,
        monotone_decreasing=Tri.TRUE,
        operator_monotone=Tri.TRUE,
        operator_decreasing=Tri.TRUE,
        nonnegative=_tri(c >= 0),
    )


_LOG = ScalarFunction(
    name="log",
    domain=POSITIVE,
    fn=np.log,
    monotone_increasing=Tri.TRUE,
    monotone_decreasing=Tri.FALSE,
    operator_monotone=Tri.TRUE,
    operator_decreasing=Tri.FALSE,
    nonnegative=Tri.FALSE,
)

# Representing function of the harmonic mean; not super-multiplicative
# (witness at (2, 2)), which the checkers rediscover by sampling.
_HREP = ScalarFunction(
    name="hrep",
    domain=NONNEG,
    fn=lambda t: 2.0 * t / (1.0 + t),
    monotone_increasing=Tri.TRUE,
    monotone_decreasing=Tri.FALSE,
    operator_monotone=Tri.TRUE,
    operator_decreasing=Tri.FALSE,
    nonnegative=Tri.TRUE,
)


def _parse_params(parts: list[str], name: str) -> list[float]:
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad numeric parameter in function name {name!r}") from exc


@lru_cache(maxsize=None)
def resolve(name: str) -> ScalarFunction:
    """Look up a catalog function by its wire name.

    Names are ``family`` or ``family:param[:param]``, e.g. ``inv``,
    ``pow:0.5``, ``exp:1``, ``affine:2:-1``, ``min:3``, ``const:1``.
    ``id`` is an alias for ``pow:1``.
    """
    head, *rest = name.split(":")
    if head == "id" and not rest:
        return _make_pow(1.0)
    if head == "inv" and not rest:
        return ScalarFunction(
            name="inv",
            domain=POSITIVE,
            fn=lambda t: 1.0 / np.asarray(t, dtype=float) if np.ndim(t) else 1.0 / t,
            monotone_increasing=Tri.FALSE,
            monotone_decreasing=Tri.TRUE,
            operator_monotone=Tri.FALSE,
            operator_decreasing=Tri.TRUE,
            nonnegative=Tri.TRUE,
        )
    if head == "log" and not rest:
        return _LOG
    if head == "hrep" and not rest:
        return _HREP
    if head == "pow" and len(rest) == 1:
        return _make_pow(_parse_params(rest, name)[0])
    if head == "exp" and len(rest) == 1:
        return _make_exp(_parse_params(rest, name)[0])
    if head == "affine" and len(rest) == 2:
        return _make_affine(*_parse_params(rest, name))
    if head == "min" and len(rest) == 1:
        return _make_min(_parse_params(rest, name)[0])
    if head == "const" and len(rest) == 1:
        return _make_const(_parse_params(rest, name)[0])
    raise ValueError(f"unknown function {name!r}")


def catalog_names() -> list[str]:
    """Representative resolvable names, mostly for help output."""
    return [
        "pow:<p>",
        "exp:<a>",
        "log",
        "inv",
        "hrep",
        "affine:<a>:<b>",
        "min:<c>",
        "const:<c>",
        "id",
    ]
