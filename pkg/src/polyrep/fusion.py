"""Combination operators for subjective opinions.

Two operators are provided, following Josang's subjective logic:

Consensus (symbol ``(+)``) merges two independent opinions about the same
proposition as if a single observer had seen both bodies of evidence:

    kappa = u_A + u_B - u_A * u_B            (undefined when kappa = 0)
    b = (b_A * u_B + b_B * u_A) / kappa
    d = (d_A * u_B + d_B * u_A) / kappa
    u = (u_A * u_B) / kappa

The fused base rate is the evidence-weighted average of the inputs' base
rates, with weights u_A * (1 - u_B) and u_B * (1 - u_A); when both opinions
are vacuous the weights vanish and the plain average (a_A + a_B) / 2 is
used.  Consensus is commutative, associative up to rounding, reduces
uncertainty (u <= min(u_A, u_B)), and is equivalent to adding the two
evidence counts.  A vacuous opinion is its neutral element.

Recommendation (symbol ``(x)``) discounts an opinion through a chain of
trust: A holds an opinion about recommender B, and B holds an opinion about
the proposition.  Writing (b_t, d_t, u_t) for the trust opinion:

    b = b_t * b_B
    d = b_t * d_B
    u = d_t + u_t + b_t * u_B
    a = a_B

Distrust and ignorance both turn into uncertainty, so the result is never
more certain than the recommendation: u >= u_B, with equality exactly under
full trust (1, 0, 0).  Zero trust (b_t = 0) yields complete uncertainty.
Recommendation is not commutative.
"""

from __future__ import annotations

from .errors import BothDogmatic, PropositionMismatch, RecommenderMismatch
from .opinions import Opinion

__all__ = ["consensus", "recommend"]


def consensus(a: Opinion, b: Opinion) -> Opinion:
    """Fuse two opinions about the same proposition into one.

    The result's owner is ``"<owner_a>,<owner_b>"``.  Raises
    :class:`PropositionMismatch` when the inputs talk about different
    propositions and :class:`BothDogmatic` when both have u = 0, in which
    case the normalization factor kappa is zero and the operator is
    undefined.
    """
    if a.proposition != b.proposition:
        raise PropositionMismatch(
            f"cannot fuse opinions about {a.proposition!r} and {b.proposition!r}"
        )
    u_a, u_b = a.uncertainty, b.uncertainty
    if u_a == 0.0 and u_b == 0.0:
        raise BothDogmatic(
            "consensus is undefined for two dogmatic opinions: "
            "kappa = u_A + u_B - u_A*u_B = 0"
        )
    kappa = (u_a + u_b) - u_a * u_b
    fused_b = (a.belief * u_b + b.belief * u_a) / kappa
    fused_d = (a.disbelief * u_b + b.disbelief * u_a) / kappa
    fused_u = (u_a * u_b) / kappa

    # Base rate: evidence-weighted average, written in a cancellation-free
    # form (both weights are non-negative, so the quotient stays in [0, 1]
    # even when u_A and u_B are both close to 1).
    w_a = u_a * (1.0 - u_b)
    w_b = u_b * (1.0 - u_a)
    den = w_a + w_b
    if den == 0.0:
        fused_a = (a.base_rate + b.base_rate) / 2.0
    else:
        fused_a = (b.base_rate * w_a + a.base_rate * w_b) / den

    return Opinion(f"{a.owner},{b.owner}", a.proposition, fused_b, fused_d, fused_u, fused_a)


def recommend(trust: Opinion, rec: Opinion) -> Opinion:
    """Discount a recommended opinion by the trust placed in its owner.

    ``trust`` is the opinion about the recommender, so its proposition must
    equal ``rec.owner``; otherwise :class:`RecommenderMismatch` is raised.
    The result is an opinion about ``rec.proposition`` owned by
    ``"<trust_owner>;<rec_owner>"``, carries the recommendation's base rate,
    and has its ``recommended`` provenance flag set.
    """
    if trust.proposition != rec.owner:
        raise RecommenderMismatch(
            f"trust opinion targets {trust.proposition!r} but the "
            f"recommendation comes from {rec.owner!r}"
        )
    b_t = trust.belief
    fused_b = b_t * rec.belief
    fused_d = b_t * rec.disbelief
    fused_u = (trust.disbelief + trust.uncertainty) + b_t * rec.uncertainty
    return Opinion(
        f"{trust.owner};{rec.owner}",
        rec.proposition,
        fused_b,
        fused_d,
        fused_u,
        rec.base_rate,
        recommended=True,
    )
