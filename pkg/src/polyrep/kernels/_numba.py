"""Numba JIT kernel backend.

Scalar loops compiled with ``@njit`` (strict IEEE arithmetic, no fastmath),
applying the same operations in the same order as the numpy backend and
the scalar operators, for bit-identical results.  Compilation results are
cached on disk, so the JIT cost is paid once per environment.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def evidence_to_opinion(r, s):
    n = r.shape[0]
    b = np.empty(n, dtype=np.float64)
    d = np.empty(n, dtype=np.float64)
    u = np.empty(n, dtype=np.float64)
    for i in range(n):
        total = r[i] + s[i] + 2.0
        b_i = r[i] / total
        d_i = s[i] / total
        b[i] = b_i
        d[i] = d_i
        u[i] = 1.0 - (b_i + d_i)
    return b, d, u


@njit(cache=True)
def opinion_to_evidence(b, d, u):
    n = b.shape[0]
    r = np.empty(n, dtype=np.float64)
    s = np.empty(n, dtype=np.float64)
    for i in range(n):
        r[i] = 2.0 * b[i] / u[i]
        s[i] = 2.0 * d[i] / u[i]
    return r, s


@njit(cache=True)
def _unit(x):
    return min(max(x, 0.0), 1.0)


@njit(cache=True)
def consensus(b_a, d_a, u_a, a_a, b_b, d_b, u_b, a_b):
    n = b_a.shape[0]
    b = np.empty(n, dtype=np.float64)
    d = np.empty(n, dtype=np.float64)
    u = np.empty(n, dtype=np.float64)
    a = np.empty(n, dtype=np.float64)
    for i in range(n):
        kappa = (u_a[i] + u_b[i]) - u_a[i] * u_b[i]
        b_i = _unit((b_a[i] * u_b[i] + b_b[i] * u_a[i]) / kappa)
        d_i = _unit((d_a[i] * u_b[i] + d_b[i] * u_a[i]) / kappa)
        u_i = _unit((u_a[i] * u_b[i]) / kappa)
        sigma = (b_i + d_i) + u_i
        b[i] = b_i / sigma
        d[i] = d_i / sigma
        u[i] = u_i / sigma

        w_a = u_a[i] * (1.0 - u_b[i])
        w_b = u_b[i] * (1.0 - u_a[i])
        den = w_a + w_b
        if den == 0.0:
            a[i] = _unit((a_a[i] + a_b[i]) / 2.0)
        else:
            a[i] = _unit((a_b[i] * w_a + a_a[i] * w_b) / den)
    return b, d, u, a


@njit(cache=True)
def recommend(b_t, d_t, u_t, b_r, d_r, u_r, a_r):
    n = b_t.shape[0]
    b = np.empty(n, dtype=np.float64)
    d = np.empty(n, dtype=np.float64)
    u = np.empty(n, dtype=np.float64)
    for i in range(n):
        b_i = _unit(b_t[i] * b_r[i])
        d_i = _unit(b_t[i] * d_r[i])
        u_i = _unit((d_t[i] + u_t[i]) + b_t[i] * u_r[i])
        sigma = (b_i + d_i) + u_i
        b[i] = b_i / sigma
        d[i] = d_i / sigma
        u[i] = u_i / sigma
    return b, d, u, a_r.copy()


@njit(cache=True)
def expectation(b, u, a):
    n = b.shape[0]
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = b[i] + a[i] * u[i]
    return out
