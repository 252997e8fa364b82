"""Pure-numpy kernel backend.

Formulas, operation order, and the clamp/renormalize epilogue match the
scalar operators in ``polyrep.opinions`` and ``polyrep.fusion`` exactly, so
scalar and batch results agree bit for bit.  Inputs are pre-validated by
the dispatch layer and assumed to be valid opinion components.
"""

from __future__ import annotations

import numpy as np


def _unit(x: np.ndarray) -> np.ndarray:
    return np.minimum(np.maximum(x, 0.0), 1.0)


def _renormalized(b, d, u):
    # Clamp rounding spill, then scale the masses back onto the simplex.
    # Dividing by an exact 1.0 is the identity, matching the scalar path.
    b, d, u = _unit(b), _unit(d), _unit(u)
    sigma = (b + d) + u
    return b / sigma, d / sigma, u / sigma


def evidence_to_opinion(r: np.ndarray, s: np.ndarray):
    total = r + s + 2.0
    b = r / total
    d = s / total
    u = 1.0 - (b + d)
    return b, d, u


def opinion_to_evidence(b: np.ndarray, d: np.ndarray, u: np.ndarray):
    r = 2.0 * b / u
    s = 2.0 * d / u
    return r, s


def consensus(b_a, d_a, u_a, a_a, b_b, d_b, u_b, a_b):
    kappa = (u_a + u_b) - u_a * u_b
    b = (b_a * u_b + b_b * u_a) / kappa
    d = (d_a * u_b + d_b * u_a) / kappa
    u = (u_a * u_b) / kappa
    b, d, u = _renormalized(b, d, u)

    w_a = u_a * (1.0 - u_b)
    w_b = u_b * (1.0 - u_a)
    den = w_a + w_b
    with np.errstate(invalid="ignore", divide="ignore"):
        weighted = (a_b * w_a + a_a * w_b) / den
    a = _unit(np.where(den == 0.0, (a_a + a_b) / 2.0, weighted))
    return b, d, u, a


def recommend(b_t, d_t, u_t, b_r, d_r, u_r, a_r):
    b = b_t * b_r
    d = b_t * d_r
    u = (d_t + u_t) + b_t * u_r
    b, d, u = _renormalized(b, d, u)
    return b, d, u, a_r.copy()


def expectation(b, u, a):
    return b + a * u
