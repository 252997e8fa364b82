"""Binary subjective opinions and the evidence mapping.

An opinion is a quadruple (b, d, u, a) held by an owner about a binary
proposition:

    b   belief mass: evidence speaks for the proposition
    d   disbelief mass: evidence speaks against it
    u   uncertainty mass: evidence is missing
    a   base rate: the prior probability used to resolve uncertainty

subject to b, d, u, a in [0, 1] and b + d + u = 1.  The probability
expectation of an opinion is E = b + a*u, which coincides with the mean of
the Beta distribution the opinion encodes (Josang's subjective logic).

Opinions and evidence counts interconvert through a bijection between the
opinion simplex (excluding u = 0) and pairs of non-negative counts:

    b = r / (r + s + 2)        r = 2b / u
    d = s / (r + s + 2)        s = 2d / u
    u = 2 / (r + s + 2)

where r counts positive and s negative observations, and the constant 2 is
the weight of the non-informative prior.  Dogmatic opinions (u = 0) encode
infinite evidence and have no finite preimage, so :func:`to_evidence`
rejects them.

Floating point note: :func:`from_evidence` computes u as 1 - (b + d) rather
than 2/(r+s+2).  The two expressions agree to within one rounding step, and
the former makes the additivity constraint b + d + u == 1.0 hold exactly in
IEEE-754 arithmetic for every input, which downstream code relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConstraintViolation, DogmaticOpinion

__all__ = [
    "Opinion",
    "EvidenceCount",
    "make_opinion",
    "from_evidence",
    "to_evidence",
    "expectation",
    "RANGE_TOL",
    "PRIOR_WEIGHT",
]

# Accepted numeric drift on components and on the additivity constraint.
# Inputs within this tolerance are clamped and renormalized; anything worse
# is rejected.  Fusion chains accumulate rounding on the order of 1e-16 per
# operation, so 1e-9 leaves ample headroom without masking real bugs.
RANGE_TOL = 1e-9

# Weight of the non-informative prior in the evidence mapping.
PRIOR_WEIGHT = 2.0


def _unit_interval(value: float, name: str) -> float:
    """Validate one opinion component and clamp away sub-tolerance drift."""
    try:
        x = float(value)
    except (TypeError, ValueError) as exc:
        raise ConstraintViolation(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(x):
        raise ConstraintViolation(f"{name} must be finite, got {value!r}")
    if x < -RANGE_TOL or x > 1.0 + RANGE_TOL:
        raise ConstraintViolation(f"{name} must lie in [0, 1], got {x!r}")
    return min(max(x, 0.0), 1.0)


@dataclass(frozen=True)
class Opinion:
    """An immutable subjective opinion about a binary proposition.

    The owner and proposition are opaque identifiers carried along so that
    fusion results can report where they came from; they never influence the
    arithmetic.  The constructor validates the component constraints,
    accepting drift up to ``RANGE_TOL`` and renormalizing b, d, u so the
    stored masses sum to 1 within 1e-12.

    ``recommended`` is a provenance flag set on opinions produced by the
    recommendation operator.  No semantics are attached to it and it is
    ignored by comparisons.
    """

    owner: str
    proposition: str
    belief: float
    disbelief: float
    uncertainty: float
    base_rate: float
    recommended: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        b = _unit_interval(self.belief, "belief")
        d = _unit_interval(self.disbelief, "disbelief")
        u = _unit_interval(self.uncertainty, "uncertainty")
        a = _unit_interval(self.base_rate, "base_rate")
        total = (b + d) + u
        if abs(total - 1.0) > RANGE_TOL:
            raise ConstraintViolation(
                f"belief + disbelief + uncertainty must equal 1, got {total!r}"
            )
        if total != 1.0:
            # total >= each component, so the quotients stay in [0, 1].
            b, d, u = b / total, d / total, u / total
        object.__setattr__(self, "belief", b)
        object.__setattr__(self, "disbelief", d)
        object.__setattr__(self, "uncertainty", u)
        object.__setattr__(self, "base_rate", a)

    @property
    def is_dogmatic(self) -> bool:
        """True when the opinion carries no uncertainty mass."""
        return self.uncertainty == 0.0

    @property
    def is_vacuous(self) -> bool:
        """True when the opinion is pure uncertainty."""
        return self.uncertainty == 1.0

    @property
    def components(self) -> tuple[float, float, float, float]:
        """The (b, d, u, a) quadruple as a plain tuple."""
        return (self.belief, self.disbelief, self.uncertainty, self.base_rate)

    def expectation(self) -> float:
        """Probability expectation E = b + a*u."""
        return expectation(self)


@dataclass(frozen=True)
class EvidenceCount:
    """Non-negative counts of positive and negative observations."""

    positive: float
    negative: float

    def __post_init__(self) -> None:
        for name in ("positive", "negative"):
            value = getattr(self, name)
            try:
                x = float(value)
            except (TypeError, ValueError) as exc:
                raise ConstraintViolation(
                    f"{name} count must be a real number, got {value!r}"
                ) from exc
            if not math.isfinite(x) or x < 0.0:
                raise ConstraintViolation(
                    f"{name} count must be finite and non-negative, got {value!r}"
                )
            object.__setattr__(self, name, x)

    def __add__(self, other: "EvidenceCount") -> "EvidenceCount":
        if not isinstance(other, EvidenceCount):
            return NotImplemented
        return EvidenceCount(self.positive + other.positive, self.negative + other.negative)


def make_opinion(
    owner: str,
    proposition: str,
    belief: float,
    disbelief: float,
    uncertainty: float,
    base_rate: float,
) -> Opinion:
    """Construct a validated opinion.

    Components may drift from their constraints by at most ``RANGE_TOL``;
    such drift is clamped and renormalized.  Larger violations raise
    :class:`ConstraintViolation`.
    """
    return Opinion(owner, proposition, belief, disbelief, uncertainty, base_rate)


def from_evidence(
    owner: str,
    proposition: str,
    ev: EvidenceCount,
    base_rate: float = 0.5,
) -> Opinion:
    """Map observation counts to the opinion they induce.

    With r positive and s negative observations:

        b = r / (r + s + 2),  d = s / (r + s + 2),  u = 1 - (b + d)

    Zero evidence yields the vacuous opinion (0, 0, 1, a).  The returned
    masses satisfy b + d + u == 1.0 exactly (see the module docstring).
    """
    total = ev.positive + ev.negative + PRIOR_WEIGHT
    b = ev.positive / total
    d = ev.negative / total
    u = 1.0 - (b + d)
    return Opinion(owner, proposition, b, d, u, base_rate)


def to_evidence(op: Opinion) -> EvidenceCount:
    """Invert the evidence mapping: r = 2b/u, s = 2d/u.

    Raises :class:`DogmaticOpinion` for u = 0, where no finite counts exist.
    Precision degrades as u approaches 0 because the counts grow like 1/u;
    no cutoff is applied beyond the exact zero check.
    """
    if op.uncertainty == 0.0:
        raise DogmaticOpinion(
            f"opinion held by {op.owner!r} is dogmatic (u = 0); "
            "no finite evidence counts exist"
        )
    r = PRIOR_WEIGHT * op.belief / op.uncertainty
    s = PRIOR_WEIGHT * op.disbelief / op.uncertainty
    return EvidenceCount(r, s)


def expectation(op: Opinion) -> float:
    """Probability expectation E = b + a*u of an opinion.

    Equals the mean (r + 2a) / (r + s + 2) of the Beta distribution encoded
    by the opinion's evidence counts.
    """
    return op.belief + op.base_rate * op.uncertainty
