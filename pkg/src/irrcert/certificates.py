"""Refutation certificates for rational claims about tan, cos, exp and pi.

A claim asserts that a transcendental value equals p/q.  Each refuter runs
the matching recurrence engine until the claim forces an integer into a
rigorously bounded sub-unit window:

* positive squeeze (pi, pi squared, exp): under the claim, the scaled
  integral b**n * I_n equals the computed witness integer, is strictly
  positive, and is at most an exact rational bound < 1 — impossible.
* nonzero squeeze (tan, tan ratio, cos and the squared-trig transforms):
  the scaled combination equals the witness integer under the claim, while
  an unconditional enclosure traps the true value inside (-1, 1); a nonzero
  witness is then impossible.  The consecutive-zero exclusion (two adjacent
  zero witnesses force p = q = 0) guarantees the search terminates.

Certificates record everything a checker needs: index, sequence, witness,
bound, and the enclosure transcript.  ``check_certificate`` re-derives every
number from the claim alone and finally replays the canonical search, so no
stored field is trusted.  All searches and precision schedules are pure
functions of the claim; rerunning a refutation is byte-stable.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Iterator, Optional, Tuple

from .enclosure import (
    EnclosureRequest,
    Func,
    TailBoundSpec,
    TailKernel,
    enclose,
    exp_upper_bound,
    factorial_dominance_index,
    tail_bound,
)
from .exactnum import RatInterval, format_rational, parse_rational, sqrt_bounds
from .recurrences import (
    CosSystemState,
    SequencePair,
    iter_cos_system,
    iter_exp_sequence,
    iter_pi_sequence,
    iter_tan_sequence,
)

# witness integers can run to thousands of digits; lift the int/str guard
if hasattr(sys, "set_int_max_str_digits"):
    if sys.get_int_max_str_digits() < 2_000_000:
        sys.set_int_max_str_digits(2_000_000)

SCHEMA_VERSION = 1

_DEFAULT_TARGET_WIDTH = Fraction(1, 1 << 64)
_MAX_ZERO_EXCLUSION_HALVINGS = 64
_MAX_SUBSET_HALVINGS = 512


class ClaimKind(Enum):
    TAN = "tan"
    TAN_RATIO = "tan_ratio"
    PI = "pi"
    PI_SQUARED = "pi_squared"
    COS = "cos"
    EXP = "exp"
    SIN_SQ = "sin_sq"
    COS_SQ = "cos_sq"
    TAN_SQ = "tan_sq"


# kinds whose claim is about a universal constant, no argument field
_ARGLESS_KINDS = frozenset({ClaimKind.PI, ClaimKind.PI_SQUARED})
# kinds whose argument field holds s = r**2 rather than the argument itself
_SQUARED_ARG_KINDS = frozenset(
    {ClaimKind.TAN_RATIO, ClaimKind.COS, ClaimKind.SIN_SQ, ClaimKind.COS_SQ, ClaimKind.TAN_SQ}
)
_TRANSFORM_KINDS = frozenset({ClaimKind.SIN_SQ, ClaimKind.COS_SQ, ClaimKind.TAN_SQ})


@dataclass(frozen=True)
class Claim:
    """One rational claim, e.g. tan(a/b) = p/q; stored in lowest terms."""

    kind: ClaimKind
    arg: Optional[Fraction]
    value: Fraction

    def __post_init__(self):
        if self.arg is not None:
            object.__setattr__(self, "arg", Fraction(self.arg))
        object.__setattr__(self, "value", Fraction(self.value))
        if (self.arg is None) != (self.kind in _ARGLESS_KINDS):
            raise ValueError(f"claim kind {self.kind.value} "
                             f"{'takes no' if self.kind in _ARGLESS_KINDS else 'requires an'} argument")


class SequenceId(Enum):
    I = "I"
    J = "J"
    K = "K"
    L = "L"


_SEQUENCE_WEIGHT_POWER = {SequenceId.I: 0, SequenceId.J: 1, SequenceId.K: 2, SequenceId.L: 3}


class RefutationMode(Enum):
    POSITIVE_SQUEEZE = "positive_squeeze"
    NONZERO_SQUEEZE = "nonzero_squeeze"


@dataclass(frozen=True)
class EnclosureRecord:
    """One enclosure actually used by a certificate (fn, argument, interval)."""

    fn: str
    arg: Fraction
    lo: Fraction
    hi: Fraction

    def interval(self) -> RatInterval:
        return RatInterval(self.lo, self.hi)


@dataclass(frozen=True)
class TransformRecord:
    """Identity used to reduce a squared-trig claim to a cos claim."""

    identity: str
    delegated: Claim


@dataclass(frozen=True)
class Certificate:
    claim: Claim
    n: int
    sequence: Optional[SequenceId]
    mode: RefutationMode
    witness: int
    bound: Fraction
    enclosures: Tuple[EnclosureRecord, ...]
    transform: Optional[TransformRecord]


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: Optional[str] = None


class RefutationError(Exception):
    """Base class for refusal to emit a certificate."""


class DegenerateClaimError(RefutationError):
    """The claim is outside the engines' hypotheses (e.g. argument zero)."""


class NegativeSquareUnsupportedError(RefutationError):
    """tan-ratio claims with s < 0 are not supported."""


class SinZeroUnresolvedError(RefutationError):
    """Could not bound sin r (or sinc) away from zero at maximum precision."""


class InconclusiveError(RefutationError):
    """n_cap was reached without an accepted (n, witness) pair."""

    def __init__(
        self,
        last_n: int,
        last_bound: Optional[Fraction],
        largest_bound: Optional[Fraction],
    ):
        self.last_n = last_n
        self.last_bound = last_bound
        self.largest_bound = largest_bound
        shown = format_rational(largest_bound) if largest_bound is not None else "none"
        super().__init__(f"no certificate up to n={last_n} (largest bound seen: {shown})")


def _resolve_width(target_width: Optional[Fraction]) -> Fraction:
    if target_width is None:
        return _DEFAULT_TARGET_WIDTH
    width = Fraction(target_width)
    if width <= 0:
        raise ValueError("target width must be positive")
    return width


def _enclosure_away_from_zero(
    fn: Func, arg: Fraction, start_width: Fraction
) -> Tuple[RatInterval, EnclosureRecord]:
    """Deterministic zero-excluding enclosure: halve the width until the
    interval no longer straddles zero."""
    width = start_width
    for _ in range(_MAX_ZERO_EXCLUSION_HALVINGS):
        iv = enclose(EnclosureRequest(fn, arg, width))
        if not iv.contains_zero():
            return iv, EnclosureRecord(fn.value, arg, iv.lo, iv.hi)
        width /= 2
    raise SinZeroUnresolvedError(
        f"{fn.value}({arg}) not separable from zero at width {width}"
    )


def _sqrt_record(x: Fraction) -> Tuple[Fraction, EnclosureRecord]:
    iv = sqrt_bounds(x)
    return iv.hi, EnclosureRecord("sqrt", x, iv.lo, iv.hi)


# --------------------------------------------------------------------------
# tan engine: claim tan(t) = p/q, t = a/b != 0.  With r = 2t, the scaled
# combination B**n (p u_n(r) + q v_n(r)) equals B**n q csc(r) I_n under the
# claim; the tail bound on I_n and a zero-excluded sin enclosure trap it in
# (-1, 1).
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _TanParts:
    p: int
    q: int
    r: Fraction
    csc_upper: Fraction
    sin_record: EnclosureRecord


def _tan_parts(claim: Claim, start_width: Fraction) -> _TanParts:
    t = claim.arg
    if t == 0:
        raise DegenerateClaimError("tan claim requires a nonzero argument")
    value = claim.value
    if t < 0:  # tan is odd
        t, value = -t, -value
    r = 2 * t
    sin_iv, sin_record = _enclosure_away_from_zero(Func.SIN, r, start_width)
    return _TanParts(
        p=value.numerator,
        q=value.denominator,
        r=r,
        csc_upper=1 / sin_iv.min_abs(),
        sin_record=sin_record,
    )


def _tan_witness(parts: _TanParts, pair: SequencePair) -> int:
    a, b = parts.r.numerator, parts.r.denominator
    return (
        parts.p * pair.u.eval_scaled_integer(a, b, pair.n)
        + parts.q * pair.v.eval_scaled_integer(a, b, pair.n)
    )


def _tan_bound(parts: _TanParts, n: int) -> Fraction:
    r = parts.r
    scale = Fraction(r.denominator) ** n
    tail = tail_bound(TailBoundSpec(TailKernel.SIN_KERNEL, r, n))
    return scale * parts.q * tail * parts.csc_upper


def _tan_default_cap(parts: _TanParts) -> int:
    r = parts.r
    base = r.denominator * r * r / 4
    threshold = 1 / (parts.q * r * parts.csc_upper)
    return 4 * factorial_dominance_index(base, threshold) + 4


def refute_tan(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    parts = _tan_parts(claim, _resolve_width(target_width))
    if n_cap is None:
        n_cap = _tan_default_cap(parts)
    largest = last = None
    pairs = iter_tan_sequence()
    for n in range(n_cap + 1):
        pair = next(pairs)
        bound = last = _tan_bound(parts, n)
        largest = bound if largest is None else max(largest, bound)
        if bound >= 1:
            continue
        witness = _tan_witness(parts, pair)
        if witness == 0:
            continue
        return Certificate(
            claim=claim,
            n=n,
            sequence=None,
            mode=RefutationMode.NONZERO_SQUEEZE,
            witness=witness,
            bound=bound,
            enclosures=(parts.sin_record,),
            transform=None,
        )
    raise InconclusiveError(n_cap, last, largest)


# --------------------------------------------------------------------------
# pi engine: claim pi = a/b > 0.  Under the claim b**n P_n(a/b) is the
# integer value of b**n I_n, which is strictly positive and at most
# B_n = b**n (a/b) ((a/b)**2/4)**n / n! — an integer in (0, 1) once B_n < 1.
# --------------------------------------------------------------------------

def _positive_bound_search(a: int, b: int, prefactor: int, n_cap: int) -> Tuple[int, Fraction]:
    """Least n with prefactor * a**(2n+1) / (4**n b**(n+1) n!) < 1, by exact
    integer comparison; raises InconclusiveError past n_cap."""
    num = prefactor * a
    den = b
    largest = last = None
    for n in range(n_cap + 1):
        if n > 0:
            num *= a * a
            den *= 4 * b * n
        if num < den:
            return n, Fraction(num, den)
        last = Fraction(num, den)
        largest = last if largest is None else max(largest, last)
    raise InconclusiveError(n_cap, last, largest)


def _pi_params(claim: Claim) -> Tuple[int, int]:
    value = claim.value
    if value <= 0:
        raise DegenerateClaimError("claimed value of pi must be positive")
    return value.numerator, value.denominator


def refute_pi(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    _resolve_width(target_width)
    a, b = _pi_params(claim)
    if n_cap is None:
        n_cap = 4 * factorial_dominance_index(Fraction(a * a, 4 * b), Fraction(b, a)) + 4
    n, bound = _positive_bound_search(a, b, 1, n_cap)
    polys = iter_pi_sequence()
    for _ in range(n):
        next(polys)
    witness = next(polys).eval_scaled_integer(a, b, n)
    return Certificate(
        claim=claim,
        n=n,
        sequence=None,
        mode=RefutationMode.POSITIVE_SQUEEZE,
        witness=witness,
        bound=bound,
        enclosures=(),
        transform=None,
    )


# --------------------------------------------------------------------------
# pi-squared engine: claim pi**2 = a/b > 0.  P_n has only even powers, so
# P_n(t) = Q_n(t**2) and b**n Q_n(a/b) is an integer (deg Q_n <= n).  The
# tail bound needs a rational stand-in for pi = sqrt(a/b) under the claim;
# the sqrt over-approximation goes into the transcript.
# --------------------------------------------------------------------------

def _pi_squared_params(claim: Claim) -> Tuple[int, int, Fraction, EnclosureRecord]:
    value = claim.value
    if value <= 0:
        raise DegenerateClaimError("claimed value of pi**2 must be positive")
    root_hi, record = _sqrt_record(value)
    return value.numerator, value.denominator, root_hi, record


def refute_pi_squared(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    _resolve_width(target_width)
    a, b, root_hi, record = _pi_squared_params(claim)
    if n_cap is None:
        n_cap = 4 * factorial_dominance_index(Fraction(a, 4), 1 / root_hi) + 4
    # B_n = root_hi * (a/4)**n / n!, decreasing by a/(4n) each step
    bound = root_hi
    found = None
    largest = last = None
    for n in range(n_cap + 1):
        if n > 0:
            bound = bound * a / (4 * n)
        if bound < 1:
            found = n
            break
        last = bound
        largest = bound if largest is None else max(largest, bound)
    if found is None:
        raise InconclusiveError(n_cap, last, largest)
    polys = iter_pi_sequence()
    for _ in range(found):
        next(polys)
    squared_poly = next(polys).even_part_in_square()
    witness = squared_poly.eval_scaled_integer(a, b, found)
    return Certificate(
        claim=claim,
        n=found,
        sequence=None,
        mode=RefutationMode.POSITIVE_SQUEEZE,
        witness=witness,
        bound=bound,
        enclosures=(record,),
        transform=None,
    )


# --------------------------------------------------------------------------
# exp engine: claim e**(a/b) = p/q.  Normalized to a > 0 via e**-r = 1/e**r;
# the claimed value must then be positive.  Under the claim the integer
# b**n (q u_n + p v_n)(a/b) equals b**n q I_n with 0 < I_n and the kernel
# bound gives b**n q I_n <= p b**n r (r**2/4)**n / n! — hypothesis-
# conditional, exact, and rational.
# --------------------------------------------------------------------------

def _exp_params(claim: Claim) -> Tuple[int, int, Fraction]:
    t = claim.arg
    if t == 0:
        raise DegenerateClaimError("exp claim requires a nonzero exponent")
    value = claim.value
    if value <= 0:
        raise DegenerateClaimError("claimed value of an exponential must be positive")
    if t < 0:
        t, value = -t, 1 / value
    return value.numerator, value.denominator, t


def refute_exp(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    _resolve_width(target_width)
    p, q, r = _exp_params(claim)
    a, b = r.numerator, r.denominator
    if n_cap is None:
        n_cap = 4 * factorial_dominance_index(Fraction(a * a, 4 * b), Fraction(b, a * p)) + 4
    n, bound = _positive_bound_search(a, b, p, n_cap)
    pairs = iter_exp_sequence()
    for _ in range(n):
        next(pairs)
    pair = next(pairs)
    witness = (
        q * pair.u.eval_scaled_integer(a, b, n)
        + p * pair.v.eval_scaled_integer(a, b, n)
    )
    return Certificate(
        claim=claim,
        n=n,
        sequence=None,
        mode=RefutationMode.POSITIVE_SQUEEZE,
        witness=witness,
        bound=bound,
        enclosures=(),
        transform=None,
    )


# --------------------------------------------------------------------------
# cos system: claim cos r = p/q with s = r**2 = a/b (either sign; s < 0 is
# the hyperbolic case cosh).  For each sequence X_n = u_n(s) + v_n(s) cos r,
# the integer b**(2n+1) (q u_n + p v_n)(s) equals b**(2n+1) q X_n under the
# claim; enclosing cos r from s makes the true value's window exact.
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _CosParts:
    p: int
    q: int
    s: Fraction


def _cos_parts(claim: Claim) -> _CosParts:
    s = claim.arg
    if s == 0:
        raise DegenerateClaimError("cos claim requires a nonzero squared argument")
    return _CosParts(p=claim.value.numerator, q=claim.value.denominator, s=s)


def _cos_witness(parts: _CosParts, pair: SequencePair) -> int:
    a, b = parts.s.numerator, parts.s.denominator
    exponent = 2 * pair.n + 1
    return (
        parts.q * pair.u.eval_scaled_integer(a, b, exponent)
        + parts.p * pair.v.eval_scaled_integer(a, b, exponent)
    )


def _cos_gate(parts: _CosParts, n: int, weight_power: int) -> Fraction:
    """Decay gate b**(2n+1) * tail_bound; sequences are only attempted once
    this drops below 1, so the certificate's n sits past the tail crossing."""
    scale = Fraction(parts.s.denominator) ** (2 * n + 1)
    return scale * tail_bound(TailBoundSpec(TailKernel.COS_SYSTEM, parts.s, n, weight_power))


def _cos_subset_attempt(
    parts: _CosParts, pair: SequencePair, start_width: Fraction
) -> Optional[Tuple[Fraction, EnclosureRecord]]:
    """Adaptive subset-of-(-1,1) test for b**(2n+1) q (u + v cos r).

    Returns (bound, cos enclosure record) on success, None if the scaled
    value is provably outside or the width floor is hit while straddling."""
    s = parts.s
    u_val = pair.u.eval_rational(s)
    v_val = pair.v.eval_rational(s)
    scale = Fraction(parts.q) * Fraction(s.denominator) ** (2 * pair.n + 1)
    # a width-w cos enclosure becomes a value window of width w |v| scale, so
    # divide the coefficient out up front; the halvings below then only fire
    # when the true value sits within start_width of the unit boundary
    width = start_width / max(1, 2 * abs(v_val) * scale)
    for _ in range(_MAX_SUBSET_HALVINGS):
        cos_iv = enclose(EnclosureRequest(Func.COS_FROM_S, s, width))
        value_iv = cos_iv.scale(v_val).translate(u_val).scale(scale)
        if value_iv.is_inside_open_unit():
            record = EnclosureRecord(Func.COS_FROM_S.value, s, cos_iv.lo, cos_iv.hi)
            return value_iv.max_abs(), record
        if value_iv.lo >= 1 or value_iv.hi <= -1:
            return None
        width /= 2
    return None


def _cos_default_cap(parts: _CosParts) -> int:
    s, b, q = parts.s, parts.s.denominator, parts.q
    kernel_base = s * s / 4 if s > 0 else 2 * s * s
    root_hi = sqrt_bounds(abs(s)).hi
    hyper = exp_upper_bound(root_hi) if s < 0 else Fraction(1)
    prefactor = b * q * max(root_hi, 1) ** 4 * hyper
    return 4 * factorial_dominance_index(b * b * kernel_base, 1 / prefactor) + 8


_COS_SEQUENCE_ORDER = (SequenceId.I, SequenceId.J, SequenceId.K, SequenceId.L)


def refute_cos(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    width = _resolve_width(target_width)
    parts = _cos_parts(claim)
    if n_cap is None:
        n_cap = _cos_default_cap(parts)
    largest = last = None
    states = iter_cos_system()
    for n in range(n_cap + 1):
        state = next(states)
        for seq_id in _COS_SEQUENCE_ORDER:
            gate = last = _cos_gate(parts, n, _SEQUENCE_WEIGHT_POWER[seq_id])
            largest = gate if largest is None else max(largest, gate)
            if gate >= 1:
                continue
            pair = state.by_id(seq_id.value)
            witness = _cos_witness(parts, pair)
            if witness == 0:
                continue
            accepted = _cos_subset_attempt(parts, pair, width)
            if accepted is None:
                continue
            bound, record = accepted
            return Certificate(
                claim=claim,
                n=n,
                sequence=seq_id,
                mode=RefutationMode.NONZERO_SQUEEZE,
                witness=witness,
                bound=bound,
                enclosures=(record,),
                transform=None,
            )
    raise InconclusiveError(n_cap, last, largest)


# --------------------------------------------------------------------------
# tan-ratio engine: claim tan(t)/t = p/q with s = t**2 = a/b > 0.  The tan
# polynomials split by parity, u_n(r) = U_n(r**2) and v_n(r) = r V_n(r**2);
# with r = 2t this gives the integer b**n (p U_n(4s) + 2 q V_n(4s)), equal
# under the claim to (q/t) csc(r) I_n.  Division by t sin(2t) = 2 s sinc
# keeps everything inside rationals-of-s.
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _TanRatioParts:
    p: int
    q: int
    s: Fraction
    sinc_min: Fraction
    root_hi: Fraction
    records: Tuple[EnclosureRecord, EnclosureRecord]


def _tan_ratio_parts(claim: Claim, start_width: Fraction) -> _TanRatioParts:
    s = claim.arg
    if s == 0:
        raise DegenerateClaimError("tan-ratio claim requires a nonzero squared argument")
    if s < 0:
        raise NegativeSquareUnsupportedError("tan-ratio claims with s < 0 are unsupported")
    sinc_iv, sinc_record = _enclosure_away_from_zero(Func.SINC_FROM_S, 4 * s, start_width)
    root_hi, sqrt_rec = _sqrt_record(s)
    return _TanRatioParts(
        p=claim.value.numerator,
        q=claim.value.denominator,
        s=s,
        sinc_min=sinc_iv.min_abs(),
        root_hi=root_hi,
        records=(sinc_record, sqrt_rec),
    )


def _tan_ratio_witness(parts: _TanRatioParts, pair: SequencePair) -> int:
    a, b = parts.s.numerator, parts.s.denominator
    u_in_square = pair.u.even_part_in_square()
    v_in_square = pair.v.odd_part_in_square()
    return (
        parts.p * u_in_square.eval_scaled_integer(4 * a, b, pair.n)
        + 2 * parts.q * v_in_square.eval_scaled_integer(4 * a, b, pair.n)
    )


def _tan_ratio_bound(parts: _TanRatioParts, n: int) -> Fraction:
    # b**n q |I_n| / (t sin 2t) with |I_n| <= 2 sqrt(s) s**n / n! and
    # t sin 2t = 2 s sinc(4s)
    s = parts.s
    scale = Fraction(s.denominator) ** n
    return scale * parts.q * parts.root_hi * s ** n / (s * factorial(n) * parts.sinc_min)


def _tan_ratio_default_cap(parts: _TanRatioParts) -> int:
    base = Fraction(parts.s.numerator)  # b**n s**n = a**n
    prefactor = parts.q * parts.root_hi / (parts.s * parts.sinc_min)
    return 4 * factorial_dominance_index(base, 1 / prefactor) + 4


def refute_tan_ratio(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    parts = _tan_ratio_parts(claim, _resolve_width(target_width))
    if n_cap is None:
        n_cap = _tan_ratio_default_cap(parts)
    largest = last = None
    pairs = iter_tan_sequence()
    for n in range(n_cap + 1):
        pair = next(pairs)
        bound = last = _tan_ratio_bound(parts, n)
        largest = bound if largest is None else max(largest, bound)
        if bound >= 1:
            continue
        witness = _tan_ratio_witness(parts, pair)
        if witness == 0:
            continue
        return Certificate(
            claim=claim,
            n=n,
            sequence=None,
            mode=RefutationMode.NONZERO_SQUEEZE,
            witness=witness,
            bound=bound,
            enclosures=parts.records,
            transform=None,
        )
    raise InconclusiveError(n_cap, last, largest)


# --------------------------------------------------------------------------
# squared-trig transforms: sin**2, cos**2 and tan**2 claims reduce to a cos
# claim at (2r)**2 = 4s through the double-angle identities
#   cos 2r = 1 - 2 sin**2 r = 2 cos**2 r - 1 = (1 - tan**2 r)/(1 + tan**2 r).
# --------------------------------------------------------------------------

def _delegated_cos_claim(claim: Claim) -> Claim:
    s = claim.arg
    if s == 0:
        raise DegenerateClaimError("squared-trig claim requires a nonzero squared argument")
    value = claim.value
    if claim.kind is ClaimKind.SIN_SQ:
        delegated_value = 1 - 2 * value
    elif claim.kind is ClaimKind.COS_SQ:
        delegated_value = 2 * value - 1
    else:
        if value == -1:
            raise DegenerateClaimError("tan**2 = -1 leaves cos 2r undefined")
        delegated_value = (1 - value) / (1 + value)
    return Claim(ClaimKind.COS, 4 * s, delegated_value)


def refute_squared_trig(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    if claim.kind not in _TRANSFORM_KINDS:
        raise ValueError(f"not a squared-trig claim: {claim.kind.value}")
    delegated = _delegated_cos_claim(claim)
    inner = refute_cos(delegated, n_cap, target_width)
    return Certificate(
        claim=claim,
        n=inner.n,
        sequence=inner.sequence,
        mode=inner.mode,
        witness=inner.witness,
        bound=inner.bound,
        enclosures=inner.enclosures,
        transform=TransformRecord(identity=claim.kind.value, delegated=delegated),
    )


_REFUTERS = {
    ClaimKind.TAN: refute_tan,
    ClaimKind.TAN_RATIO: refute_tan_ratio,
    ClaimKind.PI: refute_pi,
    ClaimKind.PI_SQUARED: refute_pi_squared,
    ClaimKind.COS: refute_cos,
    ClaimKind.EXP: refute_exp,
    ClaimKind.SIN_SQ: refute_squared_trig,
    ClaimKind.COS_SQ: refute_squared_trig,
    ClaimKind.TAN_SQ: refute_squared_trig,
}


def refute(
    claim: Claim,
    n_cap: Optional[int] = None,
    target_width: Optional[Fraction] = None,
) -> Certificate:
    """Dispatch a claim to its engine; deterministic for fixed claim/cap/width."""
    return _REFUTERS[claim.kind](claim, n_cap, target_width)


# --------------------------------------------------------------------------
# checker: re-derives every stored number from the claim, then replays the
# canonical search.  Nothing in the certificate is trusted.
# --------------------------------------------------------------------------

_POSITIVE_KINDS = frozenset({ClaimKind.PI, ClaimKind.PI_SQUARED, ClaimKind.EXP})
_SEQUENCE_KINDS = frozenset({ClaimKind.COS}) | _TRANSFORM_KINDS


def _advance(iterator: Iterator, n: int):
    for _ in range(n):
        next(iterator)
    return next(iterator)


def _check_structure(cert: Certificate) -> Optional[str]:
    if cert.n < 0:
        return f"malformed: negative index n={cert.n}"
    expected_mode = (
        RefutationMode.POSITIVE_SQUEEZE
        if cert.claim.kind in _POSITIVE_KINDS
        else RefutationMode.NONZERO_SQUEEZE
    )
    if cert.mode is not expected_mode:
        return f"mode mismatch: {cert.claim.kind.value} requires {expected_mode.value}"
    needs_sequence = cert.claim.kind in _SEQUENCE_KINDS
    if needs_sequence and cert.sequence is None:
        return "malformed: missing sequence id"
    if not needs_sequence and cert.sequence is not None:
        return "malformed: unexpected sequence id"
    has_transform = cert.transform is not None
    if has_transform != (cert.claim.kind in _TRANSFORM_KINDS):
        return "malformed: transform record does not match claim kind"
    return None


def _check_replayed_fields(
    cert: Certificate,
    witness: int,
    bound: Fraction,
    enclosures: Tuple[EnclosureRecord, ...],
    squeeze_ok: bool,
) -> Optional[str]:
    if cert.witness != witness:
        return "witness mismatch"
    if cert.mode is RefutationMode.NONZERO_SQUEEZE and cert.witness == 0:
        return "witness is zero"
    if cert.enclosures != enclosures:
        return "enclosure transcript mismatch"
    if cert.bound != bound:
        return "bound mismatch"
    if not squeeze_ok:
        return "squeeze condition fails"
    return None


def _replay_at_certificate(cert: Certificate, claim: Claim, width: Fraction) -> Optional[str]:
    """Recompute witness/bound/enclosures at the certificate's own (n, seq)."""
    kind = claim.kind
    try:
        if kind is ClaimKind.TAN:
            parts = _tan_parts(claim, width)
            pair = _advance(iter_tan_sequence(), cert.n)
            bound = _tan_bound(parts, cert.n)
            return _check_replayed_fields(
                cert, _tan_witness(parts, pair), bound, (parts.sin_record,), bound < 1
            )
        if kind is ClaimKind.TAN_RATIO:
            parts = _tan_ratio_parts(claim, width)
            pair = _advance(iter_tan_sequence(), cert.n)
            bound = _tan_ratio_bound(parts, cert.n)
            return _check_replayed_fields(
                cert, _tan_ratio_witness(parts, pair), bound, parts.records, bound < 1
            )
        if kind is ClaimKind.PI:
            a, b = _pi_params(claim)
            poly = _advance(iter_pi_sequence(), cert.n)
            bound = Fraction(a) ** (2 * cert.n + 1) / (
                Fraction(4) ** cert.n * Fraction(b) ** (cert.n + 1) * factorial(cert.n)
            )
            witness = poly.eval_scaled_integer(a, b, cert.n)
            return _check_replayed_fields(cert, witness, bound, (), bound < 1)
        if kind is ClaimKind.PI_SQUARED:
            a, b, root_hi, record = _pi_squared_params(claim)
            poly = _advance(iter_pi_sequence(), cert.n).even_part_in_square()
            bound = root_hi * Fraction(a, 4) ** cert.n / factorial(cert.n)
            witness = poly.eval_scaled_integer(a, b, cert.n)
            return _check_replayed_fields(cert, witness, bound, (record,), bound < 1)
        if kind is ClaimKind.EXP:
            p, q, r = _exp_params(claim)
            a, b = r.numerator, r.denominator
            pair = _advance(iter_exp_sequence(), cert.n)
            bound = p * Fraction(a) ** (2 * cert.n + 1) / (
                Fraction(4) ** cert.n * Fraction(b) ** (cert.n + 1) * factorial(cert.n)
            )
            witness = (
                q * pair.u.eval_scaled_integer(a, b, cert.n)
                + p * pair.v.eval_scaled_integer(a, b, cert.n)
            )
            return _check_replayed_fields(cert, witness, bound, (), bound < 1)
        if kind is ClaimKind.COS:
            parts = _cos_parts(claim)
            state = _advance(iter_cos_system(), cert.n)
            pair = state.by_id(cert.sequence.value)
            if _cos_gate(parts, cert.n, _SEQUENCE_WEIGHT_POWER[cert.sequence]) >= 1:
                return "decay gate not satisfied at certificate index"
            witness = _cos_witness(parts, pair)
            attempt = _cos_subset_attempt(parts, pair, width)
            if attempt is None:
                return "squeeze condition fails"
            bound, record = attempt
            return _check_replayed_fields(cert, witness, bound, (record,), True)
    except RefutationError as exc:
        return f"claim rejected on replay: {exc}"
    return f"unsupported kind {kind.value}"


def check_certificate(
    cert: Certificate, target_width: Optional[Fraction] = None
) -> CheckResult:
    """VALID iff every stored field reproduces from the claim alone and the
    certificate is the canonical search result for its claim.

    A certificate produced with a non-default target width verifies only
    when the same width is passed here; the replay is claim-driven.
    """
    width = _resolve_width(target_width)
    problem = _check_structure(cert)
    if problem is not None:
        return CheckResult(False, problem)
    claim = cert.claim
    if cert.transform is not None:
        try:
            delegated = _delegated_cos_claim(claim)
        except RefutationError as exc:
            return CheckResult(False, f"claim rejected on replay: {exc}")
        if cert.transform.identity != claim.kind.value or cert.transform.delegated != delegated:
            return CheckResult(False, "transform mismatch")
        claim = delegated
    problem = _replay_at_certificate(cert, claim, width)
    if problem is not None:
        return CheckResult(False, problem)
    try:
        canonical = refute(cert.claim, n_cap=cert.n, target_width=width)
    except RefutationError:
        return CheckResult(False, "no refutation found within certificate's index")
    if canonical != cert:
        return CheckResult(False, "not the canonical certificate for this claim")
    return CheckResult(True, None)


# --------------------------------------------------------------------------
# canonical JSON serialization (version 1): sorted keys, no whitespace,
# integers and rationals as decimal strings — byte-stable across runs.
# --------------------------------------------------------------------------

def _claim_to_jsonable(claim: Claim) -> dict:
    return {
        "kind": claim.kind.value,
        "arg": None if claim.arg is None else format_rational(claim.arg),
        "value": format_rational(claim.value),
    }


def certificate_to_jsonable(cert: Certificate) -> dict:
    doc = {
        "version": SCHEMA_VERSION,
        "claim": _claim_to_jsonable(cert.claim),
        "n": cert.n,
        "sequence": None if cert.sequence is None else cert.sequence.value,
        "mode": cert.mode.value,
        "witness": str(cert.witness),
        "bound": format_rational(cert.bound),
        "enclosures": [
            {
                "fn": rec.fn,
                "arg": format_rational(rec.arg),
                "lo": format_rational(rec.lo),
                "hi": format_rational(rec.hi),
            }
            for rec in cert.enclosures
        ],
        "transform": None
        if cert.transform is None
        else {
            "identity": cert.transform.identity,
            "delegated_claim": _claim_to_jsonable(cert.transform.delegated),
        },
    }
    return doc


def to_canonical_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_jsonable(cert), sort_keys=True, separators=(",", ":"))


def _claim_from_jsonable(doc) -> Claim:
    if not isinstance(doc, dict) or set(doc) != {"kind", "arg", "value"}:
        raise ValueError("malformed claim object")
    kind = ClaimKind(doc["kind"])
    arg = None if doc["arg"] is None else parse_rational(doc["arg"])
    return Claim(kind, arg, parse_rational(doc["value"]))


def certificate_from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("certificate must be a JSON object")
    expected_keys = {
        "version", "claim", "n", "sequence", "mode",
        "witness", "bound", "enclosures", "transform",
    }
    if set(doc) != expected_keys:
        raise ValueError("certificate object has unexpected structure")
    if doc["version"] != SCHEMA_VERSION:
        raise ValueError(f"unsupported certificate version {doc['version']!r}")
    claim = _claim_from_jsonable(doc["claim"])
    if not isinstance(doc["n"], int) or isinstance(doc["n"], bool):
        raise ValueError("index n must be an integer")
    sequence = None if doc["sequence"] is None else SequenceId(doc["sequence"])
    mode = RefutationMode(doc["mode"])
    if not isinstance(doc["witness"], str):
        raise ValueError("witness must be a decimal string")
    witness = int(doc["witness"])
    bound = parse_rational(doc["bound"])
    if not isinstance(doc["enclosures"], list):
        raise ValueError("enclosures must be a list")
    records = []
    for rec in doc["enclosures"]:
        if not isinstance(rec, dict) or set(rec) != {"fn", "arg", "lo", "hi"}:
            raise ValueError("malformed enclosure record")
        records.append(
            EnclosureRecord(
                rec["fn"],
                parse_rational(rec["arg"]),
                parse_rational(rec["lo"]),
                parse_rational(rec["hi"]),
            )
        )
    transform = None
    if doc["transform"] is not None:
        tr = doc["transform"]
        if not isinstance(tr, dict) or set(tr) != {"identity", "delegated_claim"}:
            raise ValueError("malformed transform record")
        transform = TransformRecord(tr["identity"], _claim_from_jsonable(tr["delegated_claim"]))
    return Certificate(
        claim=claim,
        n=doc["n"],
        sequence=sequence,
        mode=mode,
        witness=witness,
        bound=bound,
        enclosures=tuple(records),
        transform=transform,
    )
