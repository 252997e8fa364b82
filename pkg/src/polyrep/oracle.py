"""Validation oracles: independent checks of the opinion calculus.

Two families of checks are provided, each producing an
:class:`OracleReport` whose pass rule is uniformly "empirical value within
three standard errors of the analytic value":

* :func:`beta_mean_check` samples the Beta distribution an evidence pair
  encodes, Beta(alpha = r + 2a, beta = s + 2(1 - a)), and compares the
  sample mean against the opinion expectation b + a*u, which analytically
  equals (r + 2a) / (r + s + 2).

* :func:`consensus_evidence_check` exploits that consensus is evidence
  addition: fusing two opinions directly must agree with converting both
  to evidence counts, adding them, and mapping back.  This check is
  deterministic, so its "standard error" is a fixed tolerance divided by
  three, making the three-sigma rule enforce agreement within 1e-9.

Sampling uses numpy's PCG64 generator seeded explicitly, so every report
is reproducible bit for bit from its seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintViolation, DegenerateDistribution, DogmaticOpinion
from .fusion import consensus
from .opinions import EvidenceCount, Opinion, expectation, from_evidence, to_evidence

__all__ = [
    "MIN_SAMPLES",
    "CONSENSUS_TOL",
    "OracleReport",
    "beta_mean_check",
    "consensus_evidence_check",
    "run_suite",
    "render_reports",
]

MIN_SAMPLES = 100_000

# Componentwise agreement required between the two consensus routes.
CONSENSUS_TOL = 1e-9

# Evidence/base-rate fixtures exercised by the standard suite.
SUITE_FIXTURES: tuple[tuple[float, float, float], ...] = (
    (0.0, 0.0, 0.3),
    (0.0, 0.0, 0.5),
    (2.0, 0.0, 0.3),
    (2.0, 0.0, 0.5),
    (8.0, 8.0, 0.3),
    (8.0, 8.0, 0.5),
    (50.0, 10.0, 0.3),
    (50.0, 10.0, 0.5),
)

_SWEEP_PAIRS = 10_000


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one oracle check.

    ``passed`` is derived, never supplied: it holds exactly when the
    empirical value lies within three standard errors of the analytic one.
    """

    quantity: str
    analytic: float
    empirical: float
    samples: int
    stderr: float
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        ok = abs(self.analytic - self.empirical) <= 3.0 * self.stderr
        object.__setattr__(self, "passed", ok)


def beta_mean_check(
    ev: EvidenceCount,
    base_rate: float,
    samples: int = 1_000_000,
    seed: int | np.random.SeedSequence = 0,
) -> OracleReport:
    """Monte-Carlo check of the expectation against the encoded Beta mean.

    Draws ``samples`` values from Beta(r + 2a, s + 2(1 - a)) using a
    seeded PCG64 generator and compares their mean with the analytic
    expectation of ``from_evidence(ev, base_rate)``.  The standard error
    is the exact Beta standard deviation over sqrt(samples).

    Raises :class:`DegenerateDistribution` when a shape parameter is zero
    (extreme base rate with no matching evidence) and
    :class:`ConstraintViolation` for sample counts below ``MIN_SAMPLES``.
    """
    if samples < MIN_SAMPLES:
        raise ConstraintViolation(
            f"oracle runs need at least {MIN_SAMPLES} samples, got {samples}"
        )
    alpha = ev.positive + 2.0 * base_rate
    beta = ev.negative + 2.0 * (1.0 - base_rate)
    if alpha == 0.0 or beta == 0.0:
        raise DegenerateDistribution(
            f"Beta({alpha}, {beta}) is degenerate; the sample mean is a constant"
        )
    op = from_evidence("beta-oracle", "beta-oracle", ev, base_rate)
    analytic = expectation(op)
    rng = np.random.default_rng(seed)
    draws = rng.beta(alpha, beta, size=samples)
    empirical = float(draws.mean())
    total = alpha + beta
    stdev = math.sqrt(alpha * beta / (total * total * (total + 1.0)))
    stderr = stdev / math.sqrt(samples)
    quantity = f"beta_mean(r={ev.positive:g},s={ev.negative:g},a={base_rate:g})"
    return OracleReport(quantity, analytic, empirical, samples, stderr)


def _consensus_route_gap(a: Opinion, b: Opinion) -> float:
    """Largest componentwise gap between the two consensus routes."""
    direct = consensus(a, b)
    summed = from_evidence(
        f"{a.owner},{b.owner}", a.proposition, to_evidence(a) + to_evidence(b), a.base_rate
    )
    return max(
        abs(direct.belief - summed.belief),
        abs(direct.disbelief - summed.disbelief),
        abs(direct.uncertainty - summed.uncertainty),
    )


def consensus_evidence_check(a: Opinion, b: Opinion) -> OracleReport:
    """Deterministic check that consensus equals evidence addition.

    Both opinions must be non-dogmatic (so the evidence route exists) and
    share a base rate.  The report's standard error is ``CONSENSUS_TOL/3``,
    so the uniform three-sigma pass rule demands componentwise agreement
    within ``CONSENSUS_TOL``.
    """
    if a.is_dogmatic or b.is_dogmatic:
        raise DogmaticOpinion("the evidence route needs non-dogmatic opinions")
    if a.base_rate != b.base_rate:
        raise ConstraintViolation(
            f"the two routes compare only under a shared base rate, "
            f"got {a.base_rate!r} and {b.base_rate!r}"
        )
    gap = _consensus_route_gap(a, b)
    quantity = f"consensus_vs_evidence({a.owner},{b.owner})"
    return OracleReport(quantity, 0.0, gap, 1, CONSENSUS_TOL / 3.0)


def _random_opinion_rows(rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniformly random (b, d, u) rows; u > 0 almost surely."""
    return rng.dirichlet((1.0, 1.0, 1.0), size=count)


def run_suite(seed: int = 42, samples: int = 1_000_000) -> tuple[OracleReport, ...]:
    """Run the standard oracle suite.

    Covers the Beta mean over ``SUITE_FIXTURES``, the vacuous consensus
    pair, and seeded sweeps of random non-dogmatic opinion pairs through
    both consensus routes: once per pair through the scalar operators and
    once in bulk through the array kernels.  Deterministic for a given
    seed: child seeds are spawned from one ``SeedSequence``.
    """
    root = np.random.SeedSequence(seed)
    children = root.spawn(len(SUITE_FIXTURES) + 2)
    reports = [
        beta_mean_check(EvidenceCount(r, s), a, samples, seed=child)
        for (r, s, a), child in zip(SUITE_FIXTURES, children)
    ]

    vacuous = Opinion("vacuous-A", "suite", 0.0, 0.0, 1.0, 0.5)
    reports.append(consensus_evidence_check(vacuous, Opinion("vacuous-B", "suite", 0.0, 0.0, 1.0, 0.5)))

    rng = np.random.default_rng(children[-2])
    rows_a = _random_opinion_rows(rng, _SWEEP_PAIRS)
    rows_b = _random_opinion_rows(rng, _SWEEP_PAIRS)
    rates = rng.uniform(0.0, 1.0, size=_SWEEP_PAIRS)
    worst = 0.0
    for (ba, da, ua), (bb, db, ub), rate in zip(rows_a, rows_b, rates):
        left = Opinion("sweep-A", "suite", ba, da, ua, rate)
        right = Opinion("sweep-B", "suite", bb, db, ub, rate)
        worst = max(worst, _consensus_route_gap(left, right))
    reports.append(
        OracleReport(
            f"consensus_vs_evidence[sweep n={_SWEEP_PAIRS}]",
            0.0,
            worst,
            _SWEEP_PAIRS,
            CONSENSUS_TOL / 3.0,
        )
    )
    reports.append(_batch_sweep(np.random.default_rng(children[-1])))
    return tuple(reports)


def _batch_sweep(rng: np.random.Generator) -> OracleReport:
    """Run the two consensus routes through the array kernels in bulk."""
    from . import kernels  # deferred: keeps plain oracle use free of the JIT

    rows_a = _random_opinion_rows(rng, _SWEEP_PAIRS)
    rows_b = _random_opinion_rows(rng, _SWEEP_PAIRS)
    rates = rng.uniform(0.0, 1.0, size=_SWEEP_PAIRS)
    direct = kernels.consensus(
        rows_a[:, 0], rows_a[:, 1], rows_a[:, 2], rates,
        rows_b[:, 0], rows_b[:, 1], rows_b[:, 2], rates,
    )
    r_a, s_a = kernels.opinion_to_evidence(rows_a[:, 0], rows_a[:, 1], rows_a[:, 2])
    r_b, s_b = kernels.opinion_to_evidence(rows_b[:, 0], rows_b[:, 1], rows_b[:, 2])
    summed = kernels.evidence_to_opinion(r_a + r_b, s_a + s_b)
    worst = max(
        float(np.max(np.abs(direct[i] - summed[i]))) for i in range(3)
    )
    return OracleReport(
        f"consensus_vs_evidence[batch n={_SWEEP_PAIRS}]",
        0.0,
        worst,
        _SWEEP_PAIRS,
        CONSENSUS_TOL / 3.0,
    )


def render_reports(reports: tuple[OracleReport, ...] | list[OracleReport]) -> str:
    """Fixed-width text table, one line per report."""
    width = max([len(r.quantity) for r in reports] + [len("quantity")])
    header = (
        f"{'quantity':<{width}}  {'analytic':>14}  {'empirical':>14}  "
        f"{'samples':>9}  {'stderr':>12}  result"
    )
    lines = [header]
    for r in reports:
        lines.append(
            f"{r.quantity:<{width}}  {r.analytic:>14.6e}  {r.empirical:>14.6e}  "
            f"{r.samples:>9d}  {r.stderr:>12.3e}  {'PASS' if r.passed else 'FAIL'}"
        )
    return "\n".join(lines)
