"""Frames of discernment and basic mass assignments.

A frame is a small set of mutually exclusive states; a mass assignment puts
probability mass on non-empty subsets of the frame, in the style of belief
functions.  Coarsening a mass assignment onto one focal state yields a
binary opinion: mass on subsets contained in the state becomes belief, mass
on subsets disjoint from it becomes disbelief, and everything else (mass on
subsets that straddle the state) becomes uncertainty.

Frames are capped at 16 states so subsets can be carried as 16-bit masks.
Masses are stored sparsely: subsets never mentioned hold zero mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ConstraintViolation, InvalidFrame, UnknownState
from .opinions import RANGE_TOL, Opinion

__all__ = [
    "MAX_STATES",
    "Frame",
    "MassAssignment",
    "make_frame",
    "binary_frame",
    "assign_mass",
    "focus_opinion",
]

MAX_STATES = 16


@dataclass(frozen=True)
class Frame:
    """An ordered frame of discernment over a proposition."""

    proposition: str
    states: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.states)

    def index_of(self, state: str) -> int:
        """Position of a state, raising :class:`UnknownState` when absent."""
        try:
            return self.states.index(state)
        except ValueError:
            raise UnknownState(
                f"state {state!r} is not part of the frame over {self.proposition!r}"
            ) from None

    def subset_mask(self, subset: str | Iterable[str]) -> int:
        """Bitmask for a subset given as one state name or an iterable of them."""
        if isinstance(subset, str):
            return 1 << self.index_of(subset)
        mask = 0
        for state in subset:
            mask |= 1 << self.index_of(state)
        return mask

    def subset_from_mask(self, mask: int) -> frozenset[str]:
        """The states selected by a bitmask."""
        return frozenset(s for i, s in enumerate(self.states) if mask & (1 << i))


def make_frame(proposition: str, states: Iterable[str]) -> Frame:
    """Build a validated frame.

    States must be non-empty strings, pairwise distinct, and at most
    ``MAX_STATES`` many; violations raise :class:`InvalidFrame`.
    """
    ordered = tuple(states)
    if not ordered:
        raise InvalidFrame("a frame needs at least one state")
    if len(ordered) > MAX_STATES:
        raise InvalidFrame(f"a frame holds at most {MAX_STATES} states, got {len(ordered)}")
    seen: set[str] = set()
    for state in ordered:
        if not isinstance(state, str) or not state:
            raise InvalidFrame(f"state labels must be non-empty strings, got {state!r}")
        if state in seen:
            raise InvalidFrame(f"duplicated state {state!r}")
        seen.add(state)
    return Frame(proposition, ordered)


def binary_frame(proposition: str) -> Frame:
    """The default two-state frame: the need is met or it is not."""
    return make_frame(proposition, ("need", "not-need"))


@dataclass(frozen=True)
class MassAssignment:
    """Sparse masses over non-empty subsets of a frame, keyed by bitmask."""

    frame: Frame
    masses: Mapping[int, float]

    def mass(self, subset: str | Iterable[str]) -> float:
        """Mass of one subset (0.0 when the subset carries none)."""
        return self.masses.get(self.frame.subset_mask(subset), 0.0)

    def nonzero(self) -> tuple[tuple[frozenset[str], float], ...]:
        """All carried subsets with their masses, in bitmask order."""
        return tuple(
            (self.frame.subset_from_mask(mask), value)
            for mask, value in sorted(self.masses.items())
        )


def assign_mass(
    frame: Frame, masses: Mapping[str | Iterable[str], float]
) -> MassAssignment:
    """Validate and attach a mass function to a frame.

    Keys are single state names or iterables of state names; different
    spellings of the same subset accumulate.  Masses must be non-negative
    and sum to 1 within ``RANGE_TOL`` (drift is renormalized away).  The
    empty set may not appear as a key, even with zero mass.
    """
    accumulated: dict[int, float] = {}
    for subset, value in masses.items():
        try:
            x = float(value)
        except (TypeError, ValueError) as exc:
            raise ConstraintViolation(f"mass must be a real number, got {value!r}") from exc
        if not math.isfinite(x) or x < 0.0:
            raise ConstraintViolation(f"mass must be finite and non-negative, got {value!r}")
        mask = frame.subset_mask(subset)
        if mask == 0:
            raise ConstraintViolation("the empty set cannot carry mass")
        accumulated[mask] = accumulated.get(mask, 0.0) + x
    total = fsum(accumulated.values())
    if abs(total - 1.0) > RANGE_TOL:
        raise ConstraintViolation(f"masses must sum to 1, got {total!r}")
    if total != 1.0:
        accumulated = {mask: value / total for mask, value in accumulated.items()}
    accumulated = {mask: value for mask, value in accumulated.items() if value != 0.0}
    return MassAssignment(frame, MappingProxyType(accumulated))


def focus_opinion(ma: MassAssignment, state: str, owner: str) -> Opinion:
    """Coarsen a mass assignment onto one state, yielding a binary opinion.

    Belief collects the mass of subsets contained in {state}, disbelief the
    mass of subsets disjoint from it, and uncertainty the remainder (mass on
    straddling subsets).  The base rate is uniform, 1/|states|.  Sums are
    computed with ``fsum`` so the result does not depend on storage order.
    """
    focus = 1 << ma.frame.index_of(state)
    b = fsum(value for mask, value in ma.masses.items() if mask & ~focus == 0)
    d = fsum(value for mask, value in ma.masses.items() if mask & focus == 0)
    u = 1.0 - (b + d)
    return Opinion(owner, ma.frame.proposition, b, d, u, 1.0 / ma.frame.size)
