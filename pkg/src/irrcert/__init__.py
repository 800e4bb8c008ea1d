"""Exact-arithmetic refutation certificates for rational claims about
tan, cos, exp and pi, with an independent checker and a quadrature oracle."""

from .certificates import (
    Certificate,
    CheckResult,
    Claim,
    ClaimKind,
    DegenerateClaimError,
    EnclosureRecord,
    InconclusiveError,
    NegativeSquareUnsupportedError,
    RefutationError,
    RefutationMode,
    SequenceId,
    SinZeroUnresolvedError,
    TransformRecord,
    certificate_from_json,
    certificate_to_jsonable,
    check_certificate,
    refute,
    to_canonical_json,
)
from .enclosure import (
    EnclosureRequest,
    Func,
    TailBoundSpec,
    TailKernel,
    enclose,
    factorial_dominance_index,
    tail_bound,
)
from .exactnum import (
    DegreeBoundError,
    IntPoly,
    RatInterval,
    format_rational,
    parse_rational,
    sqrt_bounds,
)
from .oracle import IntegrandFamily, IntegrandSpec, integrate
from .recurrences import (
    BasisTag,
    CosSystemState,
    SequencePair,
    cos_system,
    exp_sequence,
    pi_sequence,
    tan_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "BasisTag",
    "Certificate",
    "CheckResult",
    "Claim",
    "ClaimKind",
    "CosSystemState",
    "DegenerateClaimError",
    "DegreeBoundError",
    "EnclosureRecord",
    "EnclosureRequest",
    "Func",
    "InconclusiveError",
    "IntegrandFamily",
    "IntegrandSpec",
    "IntPoly",
    "NegativeSquareUnsupportedError",
    "RatInterval",
    "RefutationError",
    "RefutationMode",
    "SequenceId",
    "SequencePair",
    "SinZeroUnresolvedError",
    "TailBoundSpec",
    "TailKernel",
    "TransformRecord",
    "certificate_from_json",
    "certificate_to_jsonable",
    "check_certificate",
    "cos_system",
    "enclose",
    "exp_sequence",
    "factorial_dominance_index",
    "format_rational",
    "integrate",
    "parse_rational",
    "pi_sequence",
    "refute",
    "sqrt_bounds",
    "tail_bound",
    "tan_sequence",
    "to_canonical_json",
]
