"""Rigorous rational enclosures of sin, cos, exp and the kernel tail bounds.

Every enclosure is a Taylor partial sum at zero plus an explicit remainder
radius, all in exact rational arithmetic, so the returned interval provably
contains the true value and its width never exceeds the requested target.

The *_FROM_S variants take s = r**2 as the argument and evaluate the even
series in s directly; for s < 0 the same series sums the hyperbolic value
(cos r = cosh t when r = i t), which is how the hyperbolic claims reuse the
circular machinery with no square roots.

Remainder bounds used:

* alternating series (s >= 0): first omitted term, with the term count
  pushed far enough that terms are decreasing from there on;
* hyperbolic branch (s < 0) and EXP: first omitted term times 3**ceil(T),
  a rational stand-in for e**T >= cosh(T) in the Lagrange form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, factorial, isqrt

from .exactnum import RatInterval, sqrt_bounds


class Func(Enum):
    SIN = "sin"
    COS = "cos"
    EXP = "exp"
    COS_FROM_S = "cos_from_s"
    SINC_FROM_S = "sinc_from_s"


@dataclass(frozen=True)
class EnclosureRequest:
    function: Func
    argument: Fraction
    target_width: Fraction

    def __post_init__(self):
        object.__setattr__(self, "argument", Fraction(self.argument))
        object.__setattr__(self, "target_width", Fraction(self.target_width))
        if self.target_width <= 0:
            raise ValueError("target width must be positive")


def _integer_sqrt_ceil(x: Fraction) -> int:
    """Least integer >= sqrt(x) for rational x >= 0."""
    c = ceil(x)
    root = isqrt(c)
    if root * root < c:
        root += 1
    return root


def _even_series(s: Fraction, delta: int, target_width: Fraction) -> RatInterval:
    """Enclose sum_m (-1)**m s**m / (2m + delta)!  (delta 0: cos-type,
    delta 1: sinc-type), valid for either sign of s."""
    radius_cap = target_width / 2
    abs_s = abs(s)
    if s >= 0:
        # push N far enough that terms decrease from N+1 onward
        n = 0
        while abs_s > (2 * n + 3 + delta) * (2 * n + 4 + delta):
            n += 1
        remainder = abs_s ** (n + 1) / factorial(2 * (n + 1) + delta)
        while remainder > radius_cap:
            n += 1
            remainder = remainder * abs_s / ((2 * n + 1 + delta) * (2 * n + 2 + delta))
        hyper_factor = 1
    else:
        hyper_factor = 3 ** _integer_sqrt_ceil(abs_s)
        n = 0
        remainder = abs_s / factorial(2 + delta) * hyper_factor
        while remainder > radius_cap:
            n += 1
            remainder = remainder * abs_s / ((2 * n + 1 + delta) * (2 * n + 2 + delta))
        remainder = abs_s ** (n + 1) / factorial(2 * (n + 1) + delta) * hyper_factor
    partial = Fraction(0)
    term = Fraction(1, factorial(delta))
    for m in range(n + 1):
        partial += term
        term = term * (-s) / ((2 * m + 1 + delta) * (2 * m + 2 + delta))
    return RatInterval(partial - remainder, partial + remainder)


def _exp_series(x: Fraction, target_width: Fraction) -> RatInterval:
    radius_cap = target_width / 2
    abs_x = abs(x)
    growth = 3 ** ceil(abs_x) if abs_x > 0 else 1
    n = 0
    remainder = abs_x * growth  # |x|**(n+1)/(n+1)! * 3**ceil|x| at n = 0
    while remainder > radius_cap:
        n += 1
        remainder = remainder * abs_x / (n + 1)
    partial = Fraction(0)
    term = Fraction(1)
    for k in range(n + 1):
        partial += term
        term = term * x / (k + 1)
    return RatInterval(partial - remainder, partial + remainder)


def enclose(req: EnclosureRequest) -> RatInterval:
    """Interval provably containing the requested value, width <= target."""
    fn, x, w = req.function, req.argument, req.target_width
    if fn is Func.EXP:
        return _exp_series(x, w)
    if fn is Func.COS_FROM_S:
        return _even_series(x, 0, w)
    if fn is Func.SINC_FROM_S:
        return _even_series(x, 1, w)
    if fn is Func.COS:
        return _even_series(x * x, 0, w)
    if fn is Func.SIN:
        if x == 0:
            return RatInterval.from_point(Fraction(0))
        # sin r = r * sinc(r); scaling by r multiplies the width by |r|
        sinc_part = _even_series(x * x, 1, w / abs(x))
        return sinc_part.scale(x)
    raise ValueError(f"unknown enclosure function {fn!r}")


class TailKernel(Enum):
    SIN_KERNEL = "sin_kernel"
    EXP_KERNEL = "exp_kernel"
    COS_SYSTEM = "cos_system"


# width used for the rational exp/cosh over-approximations inside tail bounds;
# any fixed value is sound, this one keeps the factors short
_UPPER_BOUND_WIDTH = Fraction(1, 1 << 16)


@dataclass(frozen=True)
class TailBoundSpec:
    kernel: TailKernel
    r_or_s: Fraction
    n: int
    k: int = 0  # weight power z**k, cos system only

    def __post_init__(self):
        object.__setattr__(self, "r_or_s", Fraction(self.r_or_s))
        if self.n < 0:
            raise ValueError("index n must be nonnegative")
        if self.kernel is TailKernel.COS_SYSTEM:
            if self.k not in (0, 1, 2, 3):
                raise ValueError("cos-system weight power must be 0..3")
        elif self.k != 0:
            raise ValueError("weight power only applies to the cos system")


def exp_upper_bound(x: Fraction) -> Fraction:
    """Deterministic rational upper bound on e**x (also >= cosh x for x >= 0)."""
    return enclose(EnclosureRequest(Func.EXP, x, _UPPER_BOUND_WIDTH)).hi


def tail_bound(spec: TailBoundSpec) -> Fraction:
    """Rational bound with |integral_n| <= tail_bound, from the pointwise
    maximum of the kernel times the interval length times a weight bound."""
    n, k = spec.n, spec.k
    if spec.kernel is TailKernel.SIN_KERNEL:
        r = spec.r_or_s
        if r <= 0:
            raise ValueError("sin kernel requires r > 0")
        return r * (r * r / 4) ** n / factorial(n)
    if spec.kernel is TailKernel.EXP_KERNEL:
        r = spec.r_or_s
        if r <= 0:
            raise ValueError("exp kernel requires r > 0")
        return r * (r * r / 4) ** n / factorial(n) * exp_upper_bound(r)
    s = spec.r_or_s
    if s == 0:
        raise ValueError("cos system requires s != 0")
    if s > 0:
        root_hi = sqrt_bounds(s).hi
        return root_hi ** (k + 1) * (s * s / 4) ** n / factorial(n)
    t_hi = sqrt_bounds(-s).hi
    return t_hi ** (k + 1) * (2 * s * s) ** n / factorial(n) * exp_upper_bound(t_hi)


def factorial_dominance_index(base: Fraction, threshold: Fraction) -> int:
    """Least n >= 0 with base**n / n! < threshold (strict)."""
    base = Fraction(base)
    threshold = Fraction(threshold)
    if base <= 0 or threshold <= 0:
        raise ValueError("base and threshold must be positive")
    n = 0
    value = Fraction(1)
    while value >= threshold:
        n += 1
        value = value * base / n
    return n
