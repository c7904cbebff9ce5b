"""Kernel backend selection.

The hot loops (discrete-log table walks, batched field arithmetic, row
reduction, per-stratum F_p solves, exhaustive weight enumeration) have two
interchangeable implementations:

* ``_corekern`` -- Cython extension compiled at install time;
* ``purekern``  -- numpy/pure-Python fallback with identical semantics.

The compiled backend is picked at import when present.  Override with the
environment variable ``HERMQUOT_KERNEL=pure`` or ``HERMQUOT_KERNEL=compiled``,
or at runtime through :func:`set_backend` (used by the benchmark and the
backend-equivalence tests).

Encoding convention shared by both backends: an element of F_{p^k} with
coefficient vector (c0, ..., c_{k-1}) is the integer sum c_i * p**i; zero is
0 and one is 1.  ``logt[0]`` is -1, ``expt`` has length Q-1 and
``expt[j] = g**j`` for the table generator g.  ``zech[s] = log(1 + g**s)``
with -1 marking 1 + g**s = 0.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from . import purekern

_compiled = None
try:
    from . import _corekern as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

_FORCED = os.environ.get("HERMQUOT_KERNEL", "auto").strip().lower()
if _FORCED in ("", "auto"):
    _active = _compiled if _compiled is not None else purekern
elif _FORCED in ("compiled", "c", "cython"):
    if _compiled is None:
        raise ImportError(
            "HERMQUOT_KERNEL=compiled but the compiled kernel extension is "
            "not built; reinstall with a C compiler or unset the variable")
    _active = _compiled
elif _FORCED in ("pure", "python"):
    _active = purekern
else:
    raise ValueError(f"unknown HERMQUOT_KERNEL value: {_FORCED!r}")


def backend_name() -> str:
    return "compiled" if _active is not None and _active is _compiled else "pure"


def available_backends() -> list[str]:
    return ["pure"] + (["compiled"] if _compiled is not None else [])


def set_backend(name: str) -> str:
    """Switch the active backend ('pure' or 'compiled'); returns the old name."""
    global _active
    old = backend_name()
    if name == "pure":
        _active = purekern
    elif name == "compiled":
        if _compiled is None:
            raise ValueError("compiled backend not available")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    return old


class Tables(NamedTuple):
    """Discrete-log tables for one field context."""

    p: int
    k: int
    Q: int
    expt: np.ndarray   # (Q-1,) int64, expt[j] = g**j
    logt: np.ndarray   # (Q,) int64, logt[0] = -1
    zech: np.ndarray   # (Q-1,) int64


def decode_digits(a, p: int, k: int) -> np.ndarray:
    """Base-p digit matrix (n, k) of encoded elements, digit i = coeff of X**i."""
    a = np.asarray(a, dtype=np.int64).ravel()
    pw = p ** np.arange(k, dtype=np.int64)
    return (a[:, None] // pw[None, :]) % p


def encode_digits(d, p: int, k: int) -> np.ndarray:
    d = np.asarray(d, dtype=np.int64)
    pw = p ** np.arange(k, dtype=np.int64)
    return d @ pw


def lex_order(a, p: int, k: int) -> np.ndarray:
    """Indices sorting encoded elements by coefficient tuple (c0 first)."""
    d = decode_digits(a, p, k)
    return np.lexsort(tuple(d[:, i] for i in range(k - 1, -1, -1)))


def _pair(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    shape = a.shape
    return np.ascontiguousarray(a).ravel(), np.ascontiguousarray(b).ravel(), shape


def mul(a, b, t: Tables) -> np.ndarray:
    af, bf, shape = _pair(a, b)
    return _active.mul_flat(af, bf, t.expt, t.logt).reshape(shape)


def add(a, b, t: Tables) -> np.ndarray:
    af, bf, shape = _pair(a, b)
    return _active.add_flat(af, bf, t.expt, t.logt, t.zech).reshape(shape)


def neg(a, t: Tables) -> np.ndarray:
    if t.p == 2:
        return np.asarray(a, dtype=np.int64).copy()
    return mul(a, np.int64(t.p - 1), t)


def sub(a, b, t: Tables) -> np.ndarray:
    return add(a, neg(b, t), t)


def pow_(a, e: int, t: Tables) -> np.ndarray:
    """Elementwise a**e with e a non-negative integer; 0**0 == 1."""
    if e < 0:
        raise ValueError("negative exponent")
    a = np.asarray(a, dtype=np.int64)
    shape = a.shape
    out = _active.pow_flat(np.ascontiguousarray(a).ravel(), int(e),
                           t.expt, t.logt)
    return out.reshape(shape)


def inv(a, t: Tables) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if np.any(a == 0):
        raise ZeroDivisionError("inversion of zero")
    return pow_(a, t.Q - 2, t)


def power_walk(mulmat: np.ndarray, p: int, k: int, maxlen: int) -> np.ndarray:
    """Encodings of g**0, g**1, ... for the element with multiplication
    matrix ``mulmat``; stops early when the walk returns to one, so the
    result length is min(order(g), maxlen)."""
    return _active.power_walk(np.ascontiguousarray(mulmat, dtype=np.int64),
                              int(p), int(k), int(maxlen))


def rref(M: np.ndarray, t: Tables) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form over the field; returns (R, rank, pivot cols)."""
    R = np.ascontiguousarray(M, dtype=np.int64).copy()
    rank, pivots = _active.rref_inplace(R, t.expt, t.logt, t.zech, t.p)
    return R, rank, list(pivots)


def min_weight(G: np.ndarray, t: Tables) -> int:
    """Minimum Hamming weight over all nonzero messages m of m @ G."""
    G = np.ascontiguousarray(G, dtype=np.int64)
    return int(_active.min_weight(G, t.Q, t.expt, t.logt, t.zech))


def solve_affine_batch(mats: np.ndarray, rhs: np.ndarray, p: int):
    """Solve M_i x = b_i over F_p for a batch of k-by-k systems.

    Returns (ok, sol, kdim, kbasis): ok[i] flags consistency, sol[i] is one
    solution, kbasis[i, :kdim[i]] spans the kernel of M_i.
    """
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    rhs = np.ascontiguousarray(rhs, dtype=np.int64)
    return _active.solve_affine_batch(mats, rhs, int(p))
