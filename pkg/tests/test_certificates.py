"""Tests for the refutation engines, the checker, and serialization."""

import json
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from irrcert.certificates import (
    Certificate,
    Claim,
    ClaimKind,
    DegenerateClaimError,
    EnclosureRecord,
    InconclusiveError,
    NegativeSquareUnsupportedError,
    RefutationMode,
    SequenceId,
    TransformRecord,
    certificate_from_json,
    check_certificate,
    refute,
    to_canonical_json,
)
from irrcert.recurrences import cos_system


def F(*args):
    return Fraction(*args)


class TestEngineLandingSpots:
    """First verified run constants, kept as regression anchors."""

    def test_pi_three(self):
        cert = refute(Claim(ClaimKind.PI, None, F(3)))
        assert (cert.n, cert.witness) == (6, 104382)
        assert cert.mode is RefutationMode.POSITIVE_SQUEEZE
        assert cert.sequence is None and cert.enclosures == ()

    def test_pi_squared_ten(self):
        cert = refute(Claim(ClaimKind.PI_SQUARED, None, F(10)))
        assert (cert.n, cert.witness) == (7, -394240)
        assert len(cert.enclosures) == 1 and cert.enclosures[0].fn == "sqrt"

    def test_exp_convergent_witness_zero_is_fine(self):
        # 19/7 is a continued-fraction convergent of e, so the forced
        # integer vanishes; positivity of the integral still contradicts it
        cert = refute(Claim(ClaimKind.EXP, F(1), F(19, 7)))
        assert (cert.n, cert.witness) == (2, 0)
        assert cert.mode is RefutationMode.POSITIVE_SQUEEZE
        assert check_certificate(cert).ok

    def test_exp_squared(self):
        cert = refute(Claim(ClaimKind.EXP, F(2), F(7)))
        assert (cert.n, cert.witness) == (4, -224)

    def test_cos_one_half(self):
        cert = refute(Claim(ClaimKind.COS, F(1), F(1, 2)))
        assert (cert.n, cert.sequence, cert.witness) == (1, SequenceId.I, -2)
        assert cert.bound < 1 and cert.witness != 0

    def test_cosh_hyperbolic_path(self):
        cert = refute(Claim(ClaimKind.COS, F(-1), F(3, 2)))
        assert (cert.n, cert.sequence, cert.witness) == (
            5,
            SequenceId.I,
            -1724014125907680,
        )

    def test_tan_one(self):
        cert = refute(Claim(ClaimKind.TAN, F(1), F(1557, 1000)))
        assert (cert.n, cert.witness) == (7, -3960448)
        assert cert.enclosures[0].fn == "sin"

    def test_tan_ratio(self):
        cert = refute(Claim(ClaimKind.TAN_RATIO, F(1), F(14, 9)))
        assert (cert.n, cert.witness) == (4, -16)
        assert [rec.fn for rec in cert.enclosures] == ["sinc_from_s", "sqrt"]

    def test_tan_ratio_at_one_half(self):
        cert = refute(Claim(ClaimKind.TAN_RATIO, F(1, 4), F(1)))
        assert (cert.n, cert.witness) == (3, -640)

    def test_squared_trig_delegation(self):
        cert = refute(Claim(ClaimKind.SIN_SQ, F(1), F(7, 10)))
        assert cert.transform == TransformRecord(
            "sin_sq", Claim(ClaimKind.COS, F(4), F(-2, 5))
        )
        cert = refute(Claim(ClaimKind.COS_SQ, F(1), F(1, 4)))
        assert cert.transform.delegated == Claim(ClaimKind.COS, F(4), F(-1, 2))
        cert = refute(Claim(ClaimKind.TAN_SQ, F(1), F(9, 4)))
        assert cert.transform.delegated == Claim(ClaimKind.COS, F(4), F(-5, 13))


class TestNormalization:
    def test_tan_is_odd(self):
        pos = refute(Claim(ClaimKind.TAN, F(1), F(1557, 1000)))
        neg = refute(Claim(ClaimKind.TAN, F(-1), F(-1557, 1000)))
        assert (neg.n, neg.witness, neg.bound) == (pos.n, pos.witness, pos.bound)
        assert check_certificate(neg).ok

    def test_exp_negative_exponent(self):
        pos = refute(Claim(ClaimKind.EXP, F(1), F(19, 7)))
        neg = refute(Claim(ClaimKind.EXP, F(-1), F(7, 19)))
        assert (neg.n, neg.witness, neg.bound) == (pos.n, pos.witness, pos.bound)
        assert check_certificate(neg).ok


class TestDegenerateClaims:
    @pytest.mark.parametrize(
        "claim",
        [
            Claim(ClaimKind.TAN, F(0), F(0)),
            Claim(ClaimKind.EXP, F(0), F(1)),
            Claim(ClaimKind.EXP, F(1), F(-2)),
            Claim(ClaimKind.EXP, F(1), F(0)),
            Claim(ClaimKind.PI, None, F(-1)),
            Claim(ClaimKind.PI, None, F(0)),
            Claim(ClaimKind.PI_SQUARED, None, F(-1)),
            Claim(ClaimKind.COS, F(0), F(1)),
            Claim(ClaimKind.TAN_RATIO, F(0), F(1)),
            Claim(ClaimKind.SIN_SQ, F(0), F(0)),
            Claim(ClaimKind.TAN_SQ, F(1), F(-1)),
        ],
    )
    def test_rejected(self, claim):
        with pytest.raises(DegenerateClaimError):
            refute(claim)

    def test_tan_ratio_negative_square_unsupported(self):
        with pytest.raises(NegativeSquareUnsupportedError):
            refute(Claim(ClaimKind.TAN_RATIO, F(-1), F(1, 2)))

    def test_claim_argument_arity_validated(self):
        with pytest.raises(ValueError):
            Claim(ClaimKind.PI, F(1), F(22, 7))
        with pytest.raises(ValueError):
            Claim(ClaimKind.TAN, None, F(1))


class TestInconclusive:
    def test_cap_reached_reports_bounds(self):
        with pytest.raises(InconclusiveError) as info:
            refute(Claim(ClaimKind.COS, F(9), F(2)), n_cap=4)
        assert info.value.last_n == 4
        assert info.value.largest_bound is not None
        assert info.value.largest_bound >= 1

    def test_pi_with_tiny_cap(self):
        with pytest.raises(InconclusiveError) as info:
            refute(Claim(ClaimKind.PI, None, F(22, 7)), n_cap=3)
        assert info.value.last_n == 3
        assert info.value.last_bound > 1


class TestHypothesisIndependence:
    def test_nonzero_enclosures_ignore_claimed_value(self):
        # rigor side of the tan squeeze depends on r only, never on p/q
        one = refute(Claim(ClaimKind.TAN, F(1), F(1557, 1000)))
        other = refute(Claim(ClaimKind.TAN, F(1), F(2)))
        assert one.enclosures == other.enclosures


class TestChecker:
    def test_structural_rejections(self):
        cert = refute(Claim(ClaimKind.TAN, F(1), F(2)))
        assert not check_certificate(replace(cert, n=-1)).ok
        assert not check_certificate(replace(cert, sequence=SequenceId.I)).ok
        assert not check_certificate(
            replace(cert, mode=RefutationMode.POSITIVE_SQUEEZE)
        ).ok
        assert not check_certificate(
            replace(
                cert,
                transform=TransformRecord("sin_sq", Claim(ClaimKind.COS, F(4), F(1, 3))),
            )
        ).ok
        cos_cert = refute(Claim(ClaimKind.COS, F(1), F(1, 2)))
        assert not check_certificate(replace(cos_cert, sequence=None)).ok

    def test_transform_mutations(self):
        cert = refute(Claim(ClaimKind.SIN_SQ, F(1), F(7, 10)))
        wrong_value = replace(
            cert, transform=TransformRecord("sin_sq", Claim(ClaimKind.COS, F(4), F(1, 5)))
        )
        assert check_certificate(wrong_value).reason == "transform mismatch"
        wrong_identity = replace(
            cert, transform=TransformRecord("cos_sq", cert.transform.delegated)
        )
        assert check_certificate(wrong_identity).reason == "transform mismatch"

    def test_witness_and_bound_mutations(self):
        cert = refute(Claim(ClaimKind.PI, None, F(22, 7)))
        assert check_certificate(replace(cert, witness=cert.witness + 1)).reason == "witness mismatch"
        worse = replace(cert, bound=cert.bound + 1)
        assert check_certificate(worse).reason == "bound mismatch"

    def test_enclosure_mutation(self):
        cert = refute(Claim(ClaimKind.COS, F(1), F(1, 2)))
        widened = replace(
            cert,
            enclosures=(replace(cert.enclosures[0], lo=F(-2), hi=F(2)),),
        )
        assert check_certificate(widened).reason == "enclosure transcript mismatch"

    def test_non_canonical_sequence_rejected(self):
        # at (n=1, J) the cos engine's local conditions all hold for the
        # claim cos 1 = 1/2, but the canonical search picks (1, I); a
        # record-replay-only checker would wave this certificate through
        from irrcert.certificates import (
            _DEFAULT_TARGET_WIDTH,
            _cos_parts,
            _cos_subset_attempt,
        )

        claim = Claim(ClaimKind.COS, F(1), F(1, 2))
        cert = refute(claim)
        pair = cos_system(1)[1].J
        witness = 2 * pair.u.eval_scaled_integer(1, 1, 3) + 1 * pair.v.eval_scaled_integer(1, 1, 3)
        assert witness == -10
        accepted = _cos_subset_attempt(_cos_parts(claim), pair, _DEFAULT_TARGET_WIDTH)
        assert accepted is not None
        bound, record = accepted
        forged = replace(
            cert,
            sequence=SequenceId.J,
            witness=witness,
            bound=bound,
            enclosures=(record,),
        )
        result = check_certificate(forged)
        assert not result.ok
        assert result.reason == "not the canonical certificate for this claim"

    def test_checker_rejects_degenerate_claim_certificates(self):
        cert = refute(Claim(ClaimKind.TAN, F(1), F(2)))
        doctored = replace(cert, claim=Claim(ClaimKind.TAN, F(0), F(2)))
        result = check_certificate(doctored)
        assert not result.ok
        assert "rejected on replay" in result.reason


class TestSerialization:
    def test_schema_shape(self):
        cert = refute(Claim(ClaimKind.PI_SQUARED, None, F(10)))
        doc = json.loads(to_canonical_json(cert))
        assert set(doc) == {
            "version", "claim", "n", "sequence", "mode",
            "witness", "bound", "enclosures", "transform",
        }
        assert doc["version"] == 1
        assert doc["claim"] == {"kind": "pi_squared", "arg": None, "value": "10/1"}
        assert isinstance(doc["n"], int)
        assert doc["witness"] == "-394240"
        assert doc["mode"] == "positive_squeeze"
        assert "/" in doc["bound"]
        assert set(doc["enclosures"][0]) == {"fn", "arg", "lo", "hi"}

    def test_round_trip_and_byte_stability(self):
        for claim in [
            Claim(ClaimKind.TAN, F(1), F(2)),
            Claim(ClaimKind.COS, F(-1), F(3, 2)),
            Claim(ClaimKind.SIN_SQ, F(1), F(7, 10)),
            Claim(ClaimKind.PI, None, F(22, 7)),
        ]:
            cert = refute(claim)
            text = to_canonical_json(cert)
            assert to_canonical_json(refute(claim)) == text
            restored = certificate_from_json(text)
            assert restored == cert
            assert to_canonical_json(restored) == text

    @pytest.mark.parametrize(
        "mangle",
        [
            lambda d: d.update(version=2),
            lambda d: d.pop("bound"),
            lambda d: d.update(extra=1),
            lambda d: d.update(witness=5),
            lambda d: d.update(n=True),
            lambda d: d.update(n="7"),
            lambda d: d.update(sequence="Z"),
            lambda d: d.update(mode="squeeze"),
            lambda d: d.update(enclosures={}),
            lambda d: d.update(claim={"kind": "tan"}),
            lambda d: d.update(transform={"identity": "sin_sq"}),
        ],
    )
    def test_malformed_documents_rejected(self, mangle):
        doc = json.loads(to_canonical_json(refute(Claim(ClaimKind.TAN, F(1), F(2)))))
        mangle(doc)
        with pytest.raises(ValueError):
            certificate_from_json(json.dumps(doc))

    def test_not_json_rejected(self):
        with pytest.raises(ValueError):
            certificate_from_json("{not json")
        with pytest.raises(ValueError):
            certificate_from_json("[1,2,3]")


@settings(max_examples=25, deadline=None)
@given(
    kind=st.sampled_from([ClaimKind.TAN, ClaimKind.COS, ClaimKind.EXP]),
    a=st.integers(min_value=-6, max_value=6).filter(lambda v: v != 0),
    b=st.integers(min_value=1, max_value=6),
    p=st.integers(min_value=-40, max_value=40),
    q=st.integers(min_value=1, max_value=40),
)
def test_random_claims_produce_valid_certificates(kind, a, b, p, q):
    value = F(p, q)
    if kind is ClaimKind.EXP and value <= 0:
        value = value + 1 + abs(value)
    claim = Claim(kind, F(a, b), value)
    cert = refute(claim)
    assert check_certificate(cert).ok
    assert certificate_from_json(to_canonical_json(cert)) == cert
