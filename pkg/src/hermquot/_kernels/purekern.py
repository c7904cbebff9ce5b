"""Pure numpy implementation of the kernel primitives.

Semantics and array conventions are documented in the package __init__;
the compiled backend mirrors these functions one for one.
"""

from __future__ import annotations

import numpy as np


def mul_flat(a, b, expt, logt):
    out = np.zeros_like(a)
    mask = (a != 0) & (b != 0)
    if mask.any():
        order = expt.shape[0]
        out[mask] = expt[(logt[a[mask]] + logt[b[mask]]) % order]
    return out


def add_flat(a, b, expt, logt, zech):
    out = np.where(a == 0, b, a)  # correct whenever either side is zero
    mask = (a != 0) & (b != 0)
    if mask.any():
        order = expt.shape[0]
        la = logt[a[mask]]
        s = (logt[b[mask]] - la) % order
        z = zech[s]
        vals = np.where(z < 0, 0, expt[(la + np.maximum(z, 0)) % order])
        out[mask] = vals
    return out


def pow_flat(a, e, expt, logt):
    if e == 0:
        return np.ones_like(a)
    order = expt.shape[0]
    out = np.zeros_like(a)
    mask = a != 0
    if mask.any():
        out[mask] = expt[(logt[a[mask]] * (e % order)) % order]
    return out


def power_walk(mulmat, p, k, maxlen):
    pw = p ** np.arange(k, dtype=np.int64)
    v = np.zeros(k, dtype=np.int64)
    v[0] = 1
    out = np.empty(maxlen, dtype=np.int64)
    out[0] = 1
    for j in range(1, maxlen):
        v = (mulmat @ v) % p
        code = int(v @ pw)
        if code == 1:
            return out[:j]
        out[j] = code
    return out


def _scale_row(row, f, expt, logt):
    return mul_flat(row, np.full_like(row, f), expt, logt)


def rref_inplace(M, expt, logt, zech, p):
    m, n = M.shape
    order = expt.shape[0]
    minus_one = p - 1
    rank = 0
    pivots = []
    for c in range(n):
        col = M[rank:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = rank + int(nz[0])
        if pr != rank:
            M[[rank, pr]] = M[[pr, rank]]
        piv = int(M[rank, c])
        if piv != 1:
            pinv = expt[(order - logt[piv]) % order]
            M[rank] = _scale_row(M[rank], pinv, expt, logt)
        colv = M[:, c].copy()
        colv[rank] = 0
        rows = np.nonzero(colv)[0]
        if rows.size:
            factors = mul_flat(colv[rows], np.full(rows.size, minus_one,
                                                   dtype=np.int64), expt, logt)
            prod = mul_flat(np.broadcast_to(factors[:, None],
                                            (rows.size, n)).copy().ravel(),
                            np.broadcast_to(M[rank][None, :],
                                            (rows.size, n)).copy().ravel(),
                            expt, logt).reshape(rows.size, n)
            M[rows] = add_flat(M[rows].ravel(), prod.ravel(),
                               expt, logt, zech).reshape(rows.size, n)
        pivots.append(c)
        rank += 1
        if rank == m:
            break
    return rank, pivots


def min_weight(G, Q, expt, logt, zech, chunk=1 << 13):
    k, n = G.shape
    total = Q ** k
    best = n + 1
    for start in range(1, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        cw = np.zeros((idx.size, n), dtype=np.int64)
        rem = idx
        for j in range(k):
            digit = rem % Q
            rem = rem // Q
            term = mul_flat(np.broadcast_to(digit[:, None],
                                            (idx.size, n)).copy().ravel(),
                            np.broadcast_to(G[j][None, :],
                                            (idx.size, n)).copy().ravel(),
                            expt, logt).reshape(idx.size, n)
            cw = add_flat(cw.ravel(), term.ravel(),
                          expt, logt, zech).reshape(idx.size, n)
        w = np.count_nonzero(cw, axis=1)
        wmin = int(w.min())
        if 0 < wmin < best:
            best = wmin
        if best == 1:
            break
    return best


def solve_affine_batch(mats, rhs, p):
    nsys, k, _ = mats.shape
    ok = np.zeros(nsys, dtype=np.uint8)
    sol = np.zeros((nsys, k), dtype=np.int64)
    kdim = np.zeros(nsys, dtype=np.int64)
    kbasis = np.zeros((nsys, k, k), dtype=np.int64)
    for i in range(nsys):
        aug = np.concatenate([mats[i] % p, rhs[i][:, None] % p],
                             axis=1).astype(np.int64)
        rank = 0
        piv = []
        for c in range(k):
            nz = np.nonzero(aug[rank:, c])[0]
            if nz.size == 0:
                continue
            pr = rank + int(nz[0])
            if pr != rank:
                aug[[rank, pr]] = aug[[pr, rank]]
            inv = pow(int(aug[rank, c]), -1, p)
            aug[rank] = (aug[rank] * inv) % p
            others = np.nonzero(aug[:, c])[0]
            others = others[others != rank]
            if others.size:
                aug[others] = (aug[others]
                               - np.outer(aug[others, c], aug[rank])) % p
            piv.append(c)
            rank += 1
            if rank == k:
                break
        if np.any(aug[rank:, k] != 0):
            continue
        ok[i] = 1
        for r, c in enumerate(piv):
            sol[i, c] = aug[r, k]
        free = [c for c in range(k) if c not in piv]
        kdim[i] = len(free)
        for bi, f in enumerate(free):
            kbasis[i, bi, f] = 1
            for r, c in enumerate(piv):
                kbasis[i, bi, c] = (-int(aug[r, f])) % p
    return ok, sol, kdim, kbasis
