# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend; mirrors purekern function for function.

Encoding, table layout and call signatures are documented in the package
__init__.  Keep the two backends byte-for-byte interchangeable.
"""

import numpy as np

from libc.stdint cimport int64_t

ctypedef int64_t i64


cdef inline i64 gmul(i64 a, i64 b, const i64[::1] expt, const i64[::1] logt,
                     i64 order) nogil:
    if a == 0 or b == 0:
        return 0
    return expt[(logt[a] + logt[b]) % order]


cdef inline i64 gadd(i64 a, i64 b, const i64[::1] expt, const i64[::1] logt,
                     const i64[::1] zech, i64 order) nogil:
    cdef i64 la, s, z
    if a == 0:
        return b
    if b == 0:
        return a
    la = logt[a]
    s = logt[b] - la
    if s < 0:
        s += order
    z = zech[s]
    if z < 0:
        return 0
    return expt[(la + z) % order]


def mul_flat(const i64[::1] a, const i64[::1] b, const i64[::1] expt,
             const i64[::1] logt):
    cdef Py_ssize_t n = a.shape[0], i
    cdef i64 order = expt.shape[0]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    with nogil:
        for i in range(n):
            out[i] = gmul(a[i], b[i], expt, logt, order)
    return out_arr


def add_flat(const i64[::1] a, const i64[::1] b, const i64[::1] expt,
             const i64[::1] logt, const i64[::1] zech):
    cdef Py_ssize_t n = a.shape[0], i
    cdef i64 order = expt.shape[0]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    with nogil:
        for i in range(n):
            out[i] = gadd(a[i], b[i], expt, logt, zech, order)
    return out_arr


def pow_flat(const i64[::1] a, e, const i64[::1] expt, const i64[::1] logt):
    cdef Py_ssize_t n = a.shape[0], i
    cdef i64 order = expt.shape[0]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef i64 er
    if e == 0:
        out_arr[:] = 1
        return out_arr
    er = e % order
    with nogil:
        for i in range(n):
            if a[i] != 0:
                out[i] = expt[(logt[a[i]] * er) % order]
    return out_arr


def power_walk(const i64[:, ::1] mulmat, int p, int k, maxlen):
    cdef Py_ssize_t mlen = maxlen, j
    cdef int r, c
    out_arr = np.empty(mlen, dtype=np.int64)
    cdef i64[::1] out = out_arr
    v_arr = np.zeros(k, dtype=np.int64)
    w_arr = np.zeros(k, dtype=np.int64)
    cdef i64[::1] v = v_arr
    cdef i64[::1] w = w_arr
    cdef i64 code, pw, acc
    v[0] = 1
    out[0] = 1
    for j in range(1, mlen):
        for r in range(k):
            acc = 0
            for c in range(k):
                acc += mulmat[r, c] * v[c]
            w[r] = acc % p
        code = 0
        pw = 1
        for r in range(k):
            v[r] = w[r]
            code += w[r] * pw
            pw *= p
        if code == 1:
            return out_arr[:j]
        out[j] = code
    return out_arr


def rref_inplace(i64[:, ::1] M, const i64[::1] expt, const i64[::1] logt,
                 const i64[::1] zech, int p):
    cdef Py_ssize_t m = M.shape[0], n = M.shape[1]
    cdef i64 order = expt.shape[0]
    cdef Py_ssize_t rank = 0, c, r, j, pr
    cdef i64 piv, pinv, f, tmp, minus_one = p - 1
    pivots = []
    for c in range(n):
        pr = -1
        for r in range(rank, m):
            if M[r, c] != 0:
                pr = r
                break
        if pr < 0:
            continue
        if pr != rank:
            for j in range(n):
                tmp = M[rank, j]
                M[rank, j] = M[pr, j]
                M[pr, j] = tmp
        piv = M[rank, c]
        if piv != 1:
            pinv = expt[(order - logt[piv]) % order]
            with nogil:
                for j in range(n):
                    M[rank, j] = gmul(M[rank, j], pinv, expt, logt, order)
        with nogil:
            for r in range(m):
                if r == rank or M[r, c] == 0:
                    continue
                f = gmul(M[r, c], minus_one, expt, logt, order)
                for j in range(n):
                    M[r, j] = gadd(M[r, j],
                                   gmul(f, M[rank, j], expt, logt, order),
                                   expt, logt, zech, order)
        pivots.append(c)
        rank += 1
        if rank == m:
            break
    return rank, pivots


def min_weight(const i64[:, ::1] G, Q, const i64[::1] expt,
               const i64[::1] logt, const i64[::1] zech):
    cdef Py_ssize_t k = G.shape[0], n = G.shape[1]
    cdef i64 order = expt.shape[0]
    cdef i64 q = Q
    cdef Py_ssize_t j, lvl, pos
    cdef i64 w, best = n + 1
    # partial[j] holds the codeword contribution of message digits 0..j-1
    partial_arr = np.zeros((k + 1, n), dtype=np.int64)
    digits_arr = np.zeros(k, dtype=np.int64)
    cdef i64[:, ::1] partial = partial_arr
    cdef i64[::1] digits = digits_arr
    cdef bint done = False
    with nogil:
        while not done:
            pos = k - 1
            while pos >= 0:
                digits[pos] += 1
                if digits[pos] < q:
                    break
                digits[pos] = 0
                pos -= 1
            if pos < 0:
                break
            for lvl in range(pos, k):
                if digits[lvl] == 0:
                    for j in range(n):
                        partial[lvl + 1, j] = partial[lvl, j]
                else:
                    for j in range(n):
                        partial[lvl + 1, j] = gadd(
                            partial[lvl, j],
                            gmul(digits[lvl], G[lvl, j], expt, logt, order),
                            expt, logt, zech, order)
            w = 0
            for j in range(n):
                if partial[k, j] != 0:
                    w += 1
            if 0 < w < best:
                best = w
                if best == 1:
                    done = True
    return int(best)


def solve_affine_batch(const i64[:, :, ::1] mats, const i64[:, ::1] rhs,
                       int p):
    cdef Py_ssize_t nsys = mats.shape[0], k = mats.shape[1]
    cdef Py_ssize_t i, r, c, j, pr, rank, bi
    cdef i64 inv, f, tmp
    ok_arr = np.zeros(nsys, dtype=np.uint8)
    sol_arr = np.zeros((nsys, k), dtype=np.int64)
    kdim_arr = np.zeros(nsys, dtype=np.int64)
    kbasis_arr = np.zeros((nsys, k, k), dtype=np.int64)
    aug_arr = np.zeros((k, k + 1), dtype=np.int64)
    piv_arr = np.zeros(k, dtype=np.int64)
    isfree_arr = np.zeros(k, dtype=np.uint8)
    inv_table_arr = np.zeros(p, dtype=np.int64)
    for j in range(1, p):
        inv_table_arr[j] = pow(j, -1, p)
    cdef unsigned char[::1] ok = ok_arr
    cdef i64[:, ::1] sol = sol_arr
    cdef i64[::1] kdim = kdim_arr
    cdef i64[:, :, ::1] kbasis = kbasis_arr
    cdef i64[:, ::1] aug = aug_arr
    cdef i64[::1] piv = piv_arr
    cdef unsigned char[::1] isfree = isfree_arr
    cdef i64[::1] inv_table = inv_table_arr
    cdef bint bad
    with nogil:
        for i in range(nsys):
            for r in range(k):
                for c in range(k):
                    aug[r, c] = mats[i, r, c] % p
                aug[r, k] = rhs[i, r] % p
            rank = 0
            for c in range(k):
                pr = -1
                for r in range(rank, k):
                    if aug[r, c] != 0:
                        pr = r
                        break
                if pr < 0:
                    continue
                if pr != rank:
                    for j in range(k + 1):
                        tmp = aug[rank, j]
                        aug[rank, j] = aug[pr, j]
                        aug[pr, j] = tmp
                inv = inv_table[aug[rank, c]]
                if inv != 1:
                    for j in range(k + 1):
                        aug[rank, j] = (aug[rank, j] * inv) % p
                for r in range(k):
                    if r == rank or aug[r, c] == 0:
                        continue
                    f = aug[r, c]
                    for j in range(k + 1):
                        aug[r, j] = (aug[r, j] - f * aug[rank, j]) % p
                        if aug[r, j] < 0:
                            aug[r, j] += p
                piv[rank] = c
                rank += 1
                if rank == k:
                    break
            bad = False
            for r in range(rank, k):
                if aug[r, k] != 0:
                    bad = True
                    break
            if bad:
                continue
            ok[i] = 1
            for c in range(k):
                isfree[c] = 1
            for r in range(rank):
                sol[i, piv[r]] = aug[r, k]
                isfree[piv[r]] = 0
            kdim[i] = k - rank
            bi = 0
            for c in range(k):
                if isfree[c]:
                    kbasis[i, bi, c] = 1
                    for r in range(rank):
                        kbasis[i, bi, piv[r]] = (p - aug[r, c] % p) % p
                    bi += 1
    return ok_arr, sol_arr, kdim_arr, kbasis_arr
