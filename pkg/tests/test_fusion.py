"""Algebraic properties of the consensus and recommendation operators."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from .conftest import (
    dogmatic_opinions,
    non_dogmatic_opinions,
    opinions,
    random_opinion,
    unit_floats,
)
from polyrep import (
    BothDogmatic,
    EvidenceCount,
    Opinion,
    PropositionMismatch,
    RecommenderMismatch,
    consensus,
    from_evidence,
    make_opinion,
    recommend,
    to_evidence,
)

_TOL = 1e-9
_OP_TOL = 1e-12


def _close(x: Opinion, y: Opinion, tol: float = _OP_TOL) -> None:
    assert x.belief == pytest.approx(y.belief, abs=tol)
    assert x.disbelief == pytest.approx(y.disbelief, abs=tol)
    assert x.uncertainty == pytest.approx(y.uncertainty, abs=tol)


def _reference_consensus(x: Opinion, y: Opinion) -> tuple[float, float, float]:
    """Direct transcription of the consensus formulas, kept independent of
    the implementation under test."""
    kappa = x.uncertainty + y.uncertainty - x.uncertainty * y.uncertainty
    return (
        (x.belief * y.uncertainty + y.belief * x.uncertainty) / kappa,
        (x.disbelief * y.uncertainty + y.disbelief * x.uncertainty) / kappa,
        (x.uncertainty * y.uncertainty) / kappa,
    )


class TestConsensus:
    def test_opposed_certain_observers(self):
        a = make_opinion("A", "x", 0.8, 0.0, 0.2, 0.5)
        b = make_opinion("B", "x", 0.0, 0.8, 0.2, 0.5)
        fused = consensus(a, b)
        _close(fused, make_opinion("", "x", 4 / 9, 4 / 9, 1 / 9, 0.5))
        assert fused.base_rate == pytest.approx(0.5, abs=_OP_TOL)
        assert fused.owner == "A,B"
        # Cross-check through the evidence route: both map to 8 observations.
        ev = to_evidence(a) + to_evidence(b)
        assert ev.positive == pytest.approx(8.0, abs=_TOL)
        assert ev.negative == pytest.approx(8.0, abs=_TOL)

    def test_vacuous_neutral_element(self):
        rng = np.random.default_rng(613)
        for _ in range(1000):
            x = random_opinion(rng, owner="X")
            vac = Opinion("V", "x", 0.0, 0.0, 1.0, rng.uniform())
            fused = consensus(vac, x)
            _close(fused, x)
            assert fused.base_rate == pytest.approx(x.base_rate, abs=_OP_TOL)
            # Brute-force cross-check against the raw formulas.
            ref_b, ref_d, ref_u = _reference_consensus(vac, x)
            assert fused.belief == pytest.approx(ref_b, abs=1e-15)
            assert fused.disbelief == pytest.approx(ref_d, abs=1e-15)
            assert fused.uncertainty == pytest.approx(ref_u, abs=1e-15)

    def test_two_vacuous_average_their_base_rates(self):
        fused = consensus(
            Opinion("A", "x", 0.0, 0.0, 1.0, 0.2), Opinion("B", "x", 0.0, 0.0, 1.0, 0.6)
        )
        assert (fused.belief, fused.disbelief, fused.uncertainty) == (0.0, 0.0, 1.0)
        assert fused.base_rate == pytest.approx(0.4, abs=_OP_TOL)

    def test_both_dogmatic_rejected(self):
        with pytest.raises(BothDogmatic, match="kappa"):
            consensus(
                make_opinion("A", "x", 1.0, 0.0, 0.0, 0.5),
                make_opinion("B", "x", 0.0, 1.0, 0.0, 0.5),
            )

    def test_proposition_mismatch_rejected(self):
        with pytest.raises(PropositionMismatch):
            consensus(
                make_opinion("A", "x", 0.5, 0.0, 0.5, 0.5),
                make_opinion("B", "y", 0.5, 0.0, 0.5, 0.5),
            )

    def test_one_dogmatic_side_is_fine(self):
        dogmatic = make_opinion("A", "x", 1.0, 0.0, 0.0, 0.5)
        open_minded = make_opinion("B", "x", 0.0, 0.0, 1.0, 0.5)
        fused = consensus(dogmatic, open_minded)
        _close(fused, dogmatic)

    @given(x=opinions(owner="A"), y=opinions(owner="B"))
    def test_commutative(self, x, y):
        if x.is_dogmatic and y.is_dogmatic:
            return
        left = consensus(x, y)
        right = consensus(y, x)
        _close(left, right)
        assert left.base_rate == pytest.approx(right.base_rate, abs=_OP_TOL)

    @given(
        x=non_dogmatic_opinions(owner="A"),
        y=non_dogmatic_opinions(owner="B"),
        z=non_dogmatic_opinions(owner="C"),
        a=unit_floats(),
    )
    def test_associative_within_tolerance(self, x, y, z, a):
        x, y, z = (
            Opinion(o.owner, o.proposition, o.belief, o.disbelief, o.uncertainty, a)
            for o in (x, y, z)
        )
        left = consensus(consensus(x, y), z)
        right = consensus(x, consensus(y, z))
        _close(left, right, tol=_TOL)
        assert left.base_rate == pytest.approx(right.base_rate, abs=_TOL)

    @given(
        x=non_dogmatic_opinions(owner="A", min_uncertainty=1e-6),
        y=non_dogmatic_opinions(owner="B", min_uncertainty=1e-6),
        a=unit_floats(),
    )
    def test_equals_evidence_addition(self, x, y, a):
        x = Opinion(x.owner, x.proposition, x.belief, x.disbelief, x.uncertainty, a)
        y = Opinion(y.owner, y.proposition, y.belief, y.disbelief, y.uncertainty, a)
        direct = consensus(x, y)
        summed = from_evidence("A,B", x.proposition, to_evidence(x) + to_evidence(y), a)
        _close(direct, summed, tol=_TOL)

    @given(x=opinions(owner="A"), y=opinions(owner="B"))
    def test_never_increases_uncertainty(self, x, y):
        if x.is_dogmatic and y.is_dogmatic:
            return
        fused = consensus(x, y)
        assert fused.uncertainty <= min(x.uncertainty, y.uncertainty) + _OP_TOL

    @given(x=opinions(owner="A"), y=opinions(owner="B"))
    def test_output_on_simplex(self, x, y):
        if x.is_dogmatic and y.is_dogmatic:
            return
        fused = consensus(x, y)
        total = fused.belief + fused.disbelief + fused.uncertainty
        assert total == pytest.approx(1.0, abs=_OP_TOL)
        assert 0.0 <= fused.base_rate <= 1.0


class TestRecommend:
    def test_worked_example(self):
        trust = make_opinion("A", "B", 0.5, 0.25, 0.25, 0.5)
        rec = make_opinion("B", "x", 0.8, 0.1, 0.1, 0.6)
        fused = recommend(trust, rec)
        _close(fused, make_opinion("", "x", 0.4, 0.05, 0.55, 0.6))
        assert fused.base_rate == 0.6
        assert fused.owner == "A;B"
        assert fused.proposition == "x"
        assert fused.recommended

    def test_full_trust_is_identity(self):
        trust = make_opinion("A", "B", 1.0, 0.0, 0.0, 0.5)
        rec = make_opinion("B", "x", 0.7, 0.1, 0.2, 0.3)
        fused = recommend(trust, rec)
        assert fused.components == rec.components

    @given(x=unit_floats(), a=unit_floats(), rec=opinions(owner="B"))
    def test_zero_trust_yields_complete_uncertainty(self, x, a, rec):
        trust = Opinion("A", "B", 0.0, x, 1.0 - x, a)
        fused = recommend(trust, rec)
        assert fused.uncertainty == 1.0
        assert fused.belief == 0.0 and fused.disbelief == 0.0

    def test_recommender_mismatch_rejected(self):
        trust = make_opinion("A", "B", 0.5, 0.25, 0.25, 0.5)
        rec = make_opinion("C", "x", 0.8, 0.1, 0.1, 0.6)
        with pytest.raises(RecommenderMismatch):
            recommend(trust, rec)

    @given(trust=opinions(owner="A", proposition="B"), rec=opinions(owner="B"))
    def test_never_decreases_uncertainty(self, trust, rec):
        fused = recommend(trust, rec)
        assert fused.uncertainty >= rec.uncertainty - _OP_TOL
        # The gap has a closed form: (1 - b_trust) * (1 - u_rec).
        gap = (1.0 - trust.belief) * (1.0 - rec.uncertainty)
        assert fused.uncertainty - rec.uncertainty == pytest.approx(gap, abs=_OP_TOL)

    @given(trust=opinions(owner="A", proposition="B"), rec=opinions(owner="B"))
    def test_output_on_simplex_and_base_rate_kept(self, trust, rec):
        fused = recommend(trust, rec)
        total = fused.belief + fused.disbelief + fused.uncertainty
        assert total == pytest.approx(1.0, abs=_OP_TOL)
        assert fused.base_rate == rec.base_rate

    @given(trust=dogmatic_opinions(owner="A", proposition="B"), rec=opinions(owner="B"))
    def test_defined_for_dogmatic_inputs(self, trust, rec):
        # Unlike consensus, recommendation has no undefined corner.
        fused = recommend(trust, rec)
        assert 0.0 <= fused.uncertainty <= 1.0


class TestEvidenceSemantics:
    @given(
        r1=st.floats(min_value=0, max_value=500),
        s1=st.floats(min_value=0, max_value=500),
        r2=st.floats(min_value=0, max_value=500),
        s2=st.floats(min_value=0, max_value=500),
        a=unit_floats(),
    )
    def test_consensus_adds_observations(self, r1, s1, r2, s2, a):
        x = from_evidence("A", "x", EvidenceCount(r1, s1), a)
        y = from_evidence("B", "x", EvidenceCount(r2, s2), a)
        fused = consensus(x, y)
        expected = from_evidence("A,B", "x", EvidenceCount(r1 + r2, s1 + s2), a)
        _close(fused, expected, tol=_TOL)
        assert fused.base_rate == pytest.approx(a, abs=_TOL)
