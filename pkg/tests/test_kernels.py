"""Array kernels: backend parity, scalar agreement, validation."""

import os
import subprocess
import sys

import numpy as np
import pytest

from polyrep import kernels
from polyrep.errors import BothDogmatic, ConstraintViolation, DogmaticOpinion
from polyrep.fusion import consensus as scalar_consensus
from polyrep.fusion import recommend as scalar_recommend
from polyrep.opinions import (
    EvidenceCount,
    Opinion,
    expectation as scalar_expectation,
    from_evidence,
    to_evidence,
)

from .conftest import random_opinion


def _has_numba() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


@pytest.fixture(params=["numpy", "numba"])
def each_backend(request):
    """Run the requesting test once per available backend."""
    name = request.param
    if name == "numba" and not _has_numba():
        pytest.skip("numba not importable")
    previous = kernels.set_backend(name)
    yield name
    kernels.set_backend(previous)


def _opinion_arrays(rng: np.random.Generator, n: int):
    """Component arrays of n opinions whose masses sum to 1.0 bit-exactly.

    Drawing u as the complement of b + d keeps the scalar constructor's
    renormalization inactive, so the kernels and the scalar operators see
    identical inputs and their outputs can be compared for equality.
    """
    b = rng.uniform(0.0, 1.0, size=n)
    d = (1.0 - b) * rng.uniform(0.0, 1.0, size=n)
    u = 1.0 - (b + d)
    a = rng.uniform(0.0, 1.0, size=n)
    return b, d, u, a


class TestEvidenceToOpinion:
    def test_matches_scalar_bitwise(self, each_backend):
        rng = np.random.default_rng(2001)
        r = rng.uniform(0.0, 1000.0, size=500)
        s = rng.uniform(0.0, 1000.0, size=500)
        b, d, u = kernels.evidence_to_opinion(r, s)
        for i in range(500):
            op = from_evidence("o", "p", EvidenceCount(r[i], s[i]))
            assert b[i] == op.belief
            assert d[i] == op.disbelief
            assert u[i] == op.uncertainty

    def test_additivity_exact(self, each_backend):
        rng = np.random.default_rng(2002)
        r = rng.uniform(0.0, 1000.0, size=10_000)
        s = rng.uniform(0.0, 1000.0, size=10_000)
        b, d, u = kernels.evidence_to_opinion(r, s)
        assert np.all(b + d + u == 1.0)

    def test_negative_counts_rejected(self):
        with pytest.raises(ConstraintViolation):
            kernels.evidence_to_opinion([1.0, -0.5], [0.0, 0.0])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ConstraintViolation):
            kernels.evidence_to_opinion([1.0, 2.0], [0.0])

    def test_two_dimensional_rejected(self):
        with pytest.raises(ConstraintViolation):
            kernels.evidence_to_opinion([[1.0]], [[0.0]])


class TestOpinionToEvidence:
    def test_round_trip(self, each_backend):
        rng = np.random.default_rng(2003)
        r = rng.uniform(0.0, 1000.0, size=2000)
        s = rng.uniform(0.0, 1000.0, size=2000)
        b, d, u = kernels.evidence_to_opinion(r, s)
        r2, s2 = kernels.opinion_to_evidence(b, d, u)
        assert np.max(np.abs(r2 - r)) <= 1e-9 * np.maximum(r, 1.0).max()
        assert np.max(np.abs(s2 - s)) <= 1e-9 * np.maximum(s, 1.0).max()

    def test_dogmatic_entry_named(self):
        with pytest.raises(DogmaticOpinion, match="index 1"):
            kernels.opinion_to_evidence([0.5, 1.0], [0.2, 0.0], [0.3, 0.0])


class TestConsensusKernel:
    def test_matches_scalar_bitwise(self, each_backend):
        rng = np.random.default_rng(2004)
        b1, d1, u1, a1 = _opinion_arrays(rng, 400)
        b2, d2, u2, a2 = _opinion_arrays(rng, 400)
        fb, fd, fu, fa = kernels.consensus(b1, d1, u1, a1, b2, d2, u2, a2)
        for i in range(400):
            left = Opinion("A", "x", b1[i], d1[i], u1[i], a1[i])
            right = Opinion("B", "x", b2[i], d2[i], u2[i], a2[i])
            fused = scalar_consensus(left, right)
            assert fb[i] == fused.belief
            assert fd[i] == fused.disbelief
            assert fu[i] == fused.uncertainty
            assert fa[i] == fused.base_rate

    def test_vacuous_pair_averages_base_rates(self, each_backend):
        fb, fd, fu, fa = kernels.consensus(
            [0.0], [0.0], [1.0], [0.2], [0.0], [0.0], [1.0], [0.6]
        )
        assert (fb[0], fd[0], fu[0]) == (0.0, 0.0, 1.0)
        assert fa[0] == pytest.approx(0.4, abs=1e-12)

    def test_both_dogmatic_named(self):
        with pytest.raises(BothDogmatic, match="index 0"):
            kernels.consensus(
                [1.0], [0.0], [0.0], [0.5], [0.0], [1.0], [0.0], [0.5]
            )

    def test_one_dogmatic_side_allowed(self, each_backend):
        fb, fd, fu, fa = kernels.consensus(
            [1.0], [0.0], [0.0], [0.5], [0.2], [0.3], [0.5], [0.5]
        )
        assert fb[0] + fd[0] + fu[0] == pytest.approx(1.0, abs=1e-12)


class TestRecommendKernel:
    def test_matches_scalar_bitwise(self, each_backend):
        rng = np.random.default_rng(2005)
        bt, dt, ut, _ = _opinion_arrays(rng, 400)
        br, dr, ur, ar = _opinion_arrays(rng, 400)
        fb, fd, fu, fa = kernels.recommend(bt, dt, ut, br, dr, ur, ar)
        for i in range(400):
            trust = Opinion("T", "R", bt[i], dt[i], ut[i], 0.5)
            rec = Opinion("R", "x", br[i], dr[i], ur[i], ar[i])
            fused = scalar_recommend(trust, rec)
            assert fb[i] == fused.belief
            assert fd[i] == fused.disbelief
            assert fu[i] == fused.uncertainty
            assert fa[i] == fused.base_rate

    def test_zero_trust_fully_uncertain(self, each_backend):
        fb, fd, fu, fa = kernels.recommend(
            [0.0], [1.0], [0.0], [0.7], [0.1], [0.2], [0.5]
        )
        assert fu[0] == 1.0
        assert fb[0] == 0.0


class TestExpectationKernel:
    def test_matches_scalar(self, each_backend):
        rng = np.random.default_rng(2006)
        b, d, u, a = _opinion_arrays(rng, 300)
        values = kernels.expectation(b, u, a)
        for i in range(300):
            op = Opinion("o", "p", b[i], d[i], u[i], a[i])
            assert values[i] == scalar_expectation(op)


@pytest.mark.skipif(not _has_numba(), reason="numba not importable")
class TestBackendParity:
    def test_all_kernels_bit_identical(self):
        rng = np.random.default_rng(2007)
        b1, d1, u1, a1 = _opinion_arrays(rng, 5000)
        b2, d2, u2, a2 = _opinion_arrays(rng, 5000)
        r = rng.uniform(0.0, 1000.0, size=5000)
        s = rng.uniform(0.0, 1000.0, size=5000)

        def snapshot():
            return (
                kernels.evidence_to_opinion(r, s),
                kernels.opinion_to_evidence(b1, d1, u1),
                kernels.consensus(b1, d1, u1, a1, b2, d2, u2, a2),
                kernels.recommend(b1, d1, u1, b2, d2, u2, a2),
                kernels.expectation(b1, u1, a1),
            )

        previous = kernels.set_backend("numpy")
        try:
            plain = snapshot()
            kernels.set_backend("numba")
            jitted = snapshot()
        finally:
            kernels.set_backend(previous)

        for numpy_out, numba_out in zip(plain[:-1], jitted[:-1]):
            for left, right in zip(numpy_out, numba_out):
                assert np.array_equal(left, right)
        assert np.array_equal(plain[-1], jitted[-1])


class TestBackendSelection:
    def test_set_backend_round_trip(self):
        original = kernels.active_backend()
        previous = kernels.set_backend("numpy")
        assert previous == original
        assert kernels.active_backend() == "numpy"
        kernels.set_backend(original)
        assert kernels.active_backend() == original

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError):
            kernels.set_backend("fortran")

    @pytest.mark.parametrize("value", ["numpy", "auto"])
    def test_env_selection(self, value):
        code = (
            "from polyrep import kernels; print(kernels.active_backend())"
        )
        proc = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={**os.environ, "POLYREP_BACKEND": value},
        )
        assert proc.returncode == 0, proc.stderr
        name = proc.stdout.strip()
        if value == "numpy":
            assert name == "numpy"
        else:
            assert name in ("numba", "numpy")

    def test_env_rejects_unknown(self):
        code = "import polyrep.kernels"
        proc = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={**os.environ, "POLYREP_BACKEND": "cuda"},
        )
        assert proc.returncode != 0
        assert "POLYREP_BACKEND" in proc.stderr


class TestScalarKernelConsistency:
    def test_random_sweep_agrees_with_objects(self):
        rng = np.random.default_rng(424242)
        lefts = [random_opinion(rng, "A", "x") for _ in range(50)]
        rights = [
            random_opinion(rng, "B", "x", base_rate=left.base_rate)
            for left in lefts
        ]
        fb, fd, fu, fa = kernels.consensus(
            [o.belief for o in lefts],
            [o.disbelief for o in lefts],
            [o.uncertainty for o in lefts],
            [o.base_rate for o in lefts],
            [o.belief for o in rights],
            [o.disbelief for o in rights],
            [o.uncertainty for o in rights],
            [o.base_rate for o in rights],
        )
        for i, (left, right) in enumerate(zip(lefts, rights)):
            fused = scalar_consensus(left, right)
            assert fb[i] == fused.belief
            assert fu[i] == fused.uncertainty

    def test_round_trip_matches_scalar_evidence(self):
        ops = [
            Opinion("o", "p", 0.5, 0.25, 0.25, 0.5),
            Opinion("o", "p", 0.0, 0.0, 1.0, 0.5),
            Opinion("o", "p", 0.9, 0.05, 0.05000000000000004, 0.5),
        ]
        r, s = kernels.opinion_to_evidence(
            [o.belief for o in ops],
            [o.disbelief for o in ops],
            [o.uncertainty for o in ops],
        )
        for i, op in enumerate(ops):
            ev = to_evidence(op)
            assert r[i] == ev.positive
            assert s[i] == ev.negative
