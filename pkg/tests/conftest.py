"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from polyrep import Opinion, parse_topic

FIXTURES = Path(__file__).parent / "data"

TOPIC_FILE = FIXTURES / "topic_001.txt"
SCENARIO_FILE = FIXTURES / "scenarios.cfg"


@pytest.fixture(scope="session")
def sample_topic():
    return parse_topic(TOPIC_FILE.read_text(encoding="utf-8"))


def unit_floats(max_value: float = 1.0):
    return st.floats(
        min_value=0.0, max_value=max_value, allow_nan=False, allow_infinity=False
    )


@st.composite
def opinions(draw, owner: str = "A", proposition: str = "x", max_belief: float = 1.0):
    """Valid opinions with b + d + u == 1.0 at the bit level.

    Drawing u as the complement of b + d keeps the generated masses exactly
    on the simplex, so the constructor's renormalization stays inactive.
    """
    b = draw(unit_floats(max_belief))
    d = draw(unit_floats(1.0 - b))
    u = 1.0 - (b + d)
    a = draw(unit_floats())
    return Opinion(owner, proposition, b, d, u, a)


@st.composite
def non_dogmatic_opinions(draw, owner: str = "A", proposition: str = "x",
                          min_uncertainty: float = 1e-9):
    b = draw(unit_floats(1.0 - min_uncertainty))
    d = draw(unit_floats(max(0.0, 1.0 - min_uncertainty - b)))
    u = 1.0 - (b + d)
    a = draw(unit_floats())
    if u < min_uncertainty:  # rounding can nibble at the bound
        b, d, u = 0.0, 0.0, 1.0
    return Opinion(owner, proposition, b, d, u, a)


@st.composite
def dogmatic_opinions(draw, owner: str = "A", proposition: str = "x"):
    b = draw(unit_floats())
    d = 1.0 - b
    a = draw(unit_floats())
    return Opinion(owner, proposition, b, d, 0.0, a)


def random_opinion(rng: np.random.Generator, owner: str = "A", proposition: str = "x",
                   base_rate: float | None = None) -> Opinion:
    """Uniformly random opinion from a seeded generator (u > 0 almost surely)."""
    b, d, u = rng.dirichlet((1.0, 1.0, 1.0))
    a = rng.uniform() if base_rate is None else base_rate
    return Opinion(owner, proposition, b, d, u, a)
