"""Batch versions of the opinion calculus over float64 arrays.

Two interchangeable backends implement the same elementwise formulas:

* ``numba``: JIT-compiled loops (the default when numba imports cleanly)
* ``numpy``: plain vectorized expressions

Selection happens once at import through the ``POLYREP_BACKEND``
environment variable (``auto``, ``numba``, or ``numpy``) and can be
changed later with :func:`set_backend`.  Both backends apply IEEE-754
operations in the same order, so their outputs are expected to match bit
for bit; ``benchmarks/bench_kernels.py`` compares their speed.

Error semantics mirror the scalar operators: a pair of dogmatic opinions
in :func:`consensus` raises :class:`polyrep.errors.BothDogmatic`, and a
dogmatic opinion in :func:`opinion_to_evidence` raises
:class:`polyrep.errors.DogmaticOpinion`, each naming the first offending
index.  Validation runs before the kernel is invoked.
"""

from __future__ import annotations

import os
from typing import Any

import numpy as np

from ..errors import BothDogmatic, ConstraintViolation, DogmaticOpinion

__all__ = [
    "active_backend",
    "set_backend",
    "evidence_to_opinion",
    "opinion_to_evidence",
    "consensus",
    "recommend",
    "expectation",
]

_ENV_VAR = "POLYREP_BACKEND"
_CHOICES = ("auto", "numba", "numpy")

_impl: Any = None
_impl_name = ""


def _load(choice: str) -> None:
    global _impl, _impl_name
    if choice == "numpy":
        from . import _numpy as module
        _impl, _impl_name = module, "numpy"
        return
    try:
        from . import _numba as module
        _impl, _impl_name = module, "numba"
    except ImportError:
        if choice == "numba":
            raise
        from . import _numpy as module
        _impl, _impl_name = module, "numpy"


def set_backend(name: str) -> str:
    """Switch backends; returns the previously active backend name."""
    if name not in ("numba", "numpy"):
        raise ValueError(f"backend must be 'numba' or 'numpy', got {name!r}")
    previous = _impl_name
    _load(name)
    return previous


def active_backend() -> str:
    """Name of the backend currently serving the kernels."""
    return _impl_name


_initial = os.environ.get(_ENV_VAR, "auto").lower()
if _initial not in _CHOICES:
    raise ValueError(
        f"{_ENV_VAR} must be one of {', '.join(_CHOICES)}, got {_initial!r}"
    )
_load(_initial)


def _as_array(values: Any, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ConstraintViolation(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


def _same_length(*arrays: np.ndarray) -> None:
    sizes = {a.shape[0] for a in arrays}
    if len(sizes) > 1:
        raise ConstraintViolation(f"array lengths differ: {sorted(sizes)}")


def evidence_to_opinion(r: Any, s: Any) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map evidence count arrays to (b, d, u) arrays; b + d + u == 1 exactly."""
    r_arr, s_arr = _as_array(r, "r"), _as_array(s, "s")
    _same_length(r_arr, s_arr)
    if np.any(r_arr < 0.0) or np.any(s_arr < 0.0):
        raise ConstraintViolation("evidence counts must be non-negative")
    return _impl.evidence_to_opinion(r_arr, s_arr)


def opinion_to_evidence(b: Any, d: Any, u: Any) -> tuple[np.ndarray, np.ndarray]:
    """Invert the evidence mapping elementwise (rejects any u == 0)."""
    b_arr, d_arr, u_arr = _as_array(b, "b"), _as_array(d, "d"), _as_array(u, "u")
    _same_length(b_arr, d_arr, u_arr)
    dogmatic = np.flatnonzero(u_arr == 0.0)
    if dogmatic.size:
        raise DogmaticOpinion(
            f"opinion at index {int(dogmatic[0])} is dogmatic (u = 0); "
            "no finite evidence counts exist"
        )
    return _impl.opinion_to_evidence(b_arr, d_arr, u_arr)


def consensus(
    b_a: Any, d_a: Any, u_a: Any, a_a: Any,
    b_b: Any, d_b: Any, u_b: Any, a_b: Any,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Elementwise consensus of two opinion arrays."""
    arrays = [
        _as_array(v, n)
        for v, n in zip(
            (b_a, d_a, u_a, a_a, b_b, d_b, u_b, a_b),
            ("b_a", "d_a", "u_a", "a_a", "b_b", "d_b", "u_b", "a_b"),
        )
    ]
    _same_length(*arrays)
    both = np.flatnonzero((arrays[2] == 0.0) & (arrays[6] == 0.0))
    if both.size:
        raise BothDogmatic(
            f"opinion pair at index {int(both[0])} is dogmatic on both sides: "
            "kappa = u_A + u_B - u_A*u_B = 0"
        )
    return _impl.consensus(*arrays)


def recommend(
    b_t: Any, d_t: Any, u_t: Any,
    b_r: Any, d_r: Any, u_r: Any, a_r: Any,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Elementwise recommendation: trust arrays discounting recommended arrays."""
    arrays = [
        _as_array(v, n)
        for v, n in zip(
            (b_t, d_t, u_t, b_r, d_r, u_r, a_r),
            ("b_t", "d_t", "u_t", "b_r", "d_r", "u_r", "a_r"),
        )
    ]
    _same_length(*arrays)
    return _impl.recommend(*arrays)


def expectation(b: Any, u: Any, a: Any) -> np.ndarray:
    """Elementwise probability expectation b + a*u."""
    b_arr, u_arr, a_arr = _as_array(b, "b"), _as_array(u, "u"), _as_array(a, "a")
    _same_length(b_arr, u_arr, a_arr)
    return _impl.expectation(b_arr, u_arr, a_arr)
