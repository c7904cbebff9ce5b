"""Dense linear algebra over a field context, on encoded integer matrices.

Matrices are numpy int64 arrays of encoded field elements (see _kernels for
the encoding).  Row reduction and weight search dispatch to the active
kernel backend.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as kern
from .gf import FieldContext, FieldElement


def to_matrix(ctx: FieldContext, rows) -> np.ndarray:
    """Encode a nested sequence of FieldElements into a matrix."""
    return np.array([[ctx.encode(e) for e in row] for row in rows],
                    dtype=np.int64)


def from_matrix(ctx: FieldContext, m: np.ndarray) -> list[list[FieldElement]]:
    return [[ctx.from_encoded(int(v)) for v in row] for row in m]


def rref(ctx: FieldContext, m: np.ndarray):
    return kern.rref(m, ctx.tables)


def rank(ctx: FieldContext, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return kern.rref(m, ctx.tables)[1]


def nullspace(ctx: FieldContext, m: np.ndarray) -> np.ndarray:
    """Basis of the right kernel as rows of an (n - rank) x n matrix."""
    ncols = m.shape[1]
    r, rk, pivots = kern.rref(m, ctx.tables)
    t = ctx.tables
    free = [c for c in range(ncols) if c not in pivots]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    if free:
        out[np.arange(len(free)), free] = 1
        if rk:
            block = kern.neg(r[:rk][:, free], t)  # (rk, nfree)
            out[:, pivots] = block.T
    return out


def matmul(ctx: FieldContext, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Field matrix product via tables (suitable for modest sizes)."""
    t = ctx.tables
    n, m = a.shape
    m2, k = b.shape
    assert m == m2
    out = np.zeros((n, k), dtype=np.int64)
    for i in range(m):
        term = kern.mul(a[:, i][:, None], b[i][None, :], t)
        out = kern.add(out, term, t)
    return out


def row_space_equal(ctx: FieldContext, a: np.ndarray, b: np.ndarray) -> bool:
    ra, ka, _ = kern.rref(a, ctx.tables)
    rb, kb, _ = kern.rref(b, ctx.tables)
    return ka == kb and bool(np.array_equal(ra[:ka], rb[:kb]))
