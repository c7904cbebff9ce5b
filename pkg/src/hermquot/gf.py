"""Exact arithmetic in F_p and its extensions F_{p^k}.

Elements are coefficient vectors over a fixed monic irreducible modulus:
the vector (c0, ..., c_{k-1}) stands for c0 + c1*X + ... + c_{k-1}*X^{k-1}.
Vectors are compared coefficientwise from the constant term upward; that
ordering fixes every deterministic choice made here (modulus, primitive
element, the constant omega with omega^(q-1) = -1, solver output order).

The context for F_{p^{2h}} is a single degree-2h extension of F_p, never a
tower: traces and additive (F_p-linear) polynomial equations then reduce to
one layer of linear algebra over F_p, and membership in the subfield F_q is
the Frobenius fixed-point test e^q == e.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as kern


class GFError(ValueError):
    """Invalid field construction or field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over F_p (little-endian coefficient lists) ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        f = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        _trim(a)
    return a


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _poly_powmod_xq(m: Sequence[int], p: int, e: int) -> list[int]:
    """X**(p**e) mod m, by e successive p-th powers."""
    cur = [0, 1]
    for _ in range(e):
        nxt = [0]
        base = _poly_mod(cur, m, p)
        # (sum c_i X^i)^p = sum c_i X^(i p) in characteristic p
        spread = [0] * (p * len(base))
        for i, c in enumerate(base):
            spread[i * p] = c
        nxt = _poly_mod(spread, m, p)
        cur = nxt
    return _poly_mod(cur, m, p)


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Monic mod of degree k: no F_p root for k <= 3, else the gcd test
    against X^(p^m) - X for every m <= k/2."""
    k = len(mod) - 1
    if k == 1:
        return True
    if k <= 3:
        for r in range(p):
            acc = 0
            for c in reversed(mod):
                acc = (acc * r + c) % p
            if acc == 0:
                return False
        return True
    for m in range(1, k // 2 + 1):
        xq = _poly_powmod_xq(mod, p, m)
        diff = list(xq)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(diff, mod, p)
        if len(g) - 1 >= 1:
            return False
    return True


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    for lower in itertools.product(range(p), repeat=k):
        cand = list(lower) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise GFError(f"no irreducible polynomial of degree {k} over F_{p}")


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> "FieldContext":
    """Field context for F_{p^k} with the lexicographically least monic
    irreducible modulus (coefficients compared from the constant term up)."""
    if not is_prime(p):
        raise GFError(f"p = {p} is not prime")
    if k < 1:
        raise GFError(f"extension degree must be >= 1, got {k}")
    return FieldContext(p, k, _least_irreducible(p, k))


class FieldContext:
    """Immutable description of F_{p^k}; owns the modulus and the lazily
    built discrete-log tables shared by the batch kernels."""

    __slots__ = ("p", "k", "modulus", "order", "_reductions", "_frob_mats",
                 "_tables", "_generator")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p ** k
        # X^(k+j) mod modulus for j = 0..k-2, used in products
        reds = []
        cur = [(-c) % p for c in self.modulus[:-1]]  # X^k mod m
        reds.append(tuple(cur + [0] * (k - len(cur))))
        for _ in range(k - 2):
            cur = [0] + cur
            cur = _poly_mod(cur, list(self.modulus), p)
            reds.append(tuple(cur + [0] * (k - len(cur))))
        self._reductions = tuple(reds)
        self._frob_mats: dict[int, np.ndarray] = {}
        self._tables = None
        self._generator = None

    # -- construction of elements ------------------------------------------

    def element(self, coeffs: Iterable[int]) -> "FieldElement":
        c = tuple(int(x) % self.p for x in coeffs)
        if len(c) != self.k:
            raise GFError(f"expected {self.k} coefficients, got {len(c)}")
        return FieldElement(self, c)

    def scalar(self, c: int) -> "FieldElement":
        return FieldElement(self, (int(c) % self.p,) + (0,) * (self.k - 1))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    @property
    def one(self) -> "FieldElement":
        return self.scalar(1)

    def from_encoded(self, code: int) -> "FieldElement":
        c = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            c.append(r)
        # encoding is little-endian base p, so digits come out in order
        c = [d for d in c]
        return FieldElement(self, tuple(c))

    def encode(self, e: "FieldElement") -> int:
        code = 0
        for c in reversed(e.coeffs):
            code = code * self.p + c
        return code

    def elements(self) -> list["FieldElement"]:
        """All elements in lexicographic coefficient order (small fields)."""
        return [self.element(t)
                for t in itertools.product(range(self.p), repeat=self.k)]

    def from_text(self, s: str) -> "FieldElement":
        return self.element(int(t) for t in s.split(","))

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- linear-algebra views ------------------------------------------------

    def mul_matrix(self, e: "FieldElement") -> np.ndarray:
        """k-by-k matrix over F_p of multiplication by e in the power basis."""
        cols = []
        basis = e
        for j in range(self.k):
            cols.append(basis.coeffs)
            basis = basis._shift()
        return np.array(cols, dtype=np.int64).T % self.p

    def frobenius_matrix(self, i: int) -> np.ndarray:
        i %= self.k
        if i not in self._frob_mats:
            if i == 0:
                self._frob_mats[0] = np.eye(self.k, dtype=np.int64)
            elif i == 1:
                cols = []
                xp = _poly_powmod_xq(list(self.modulus), self.p, 1)
                col = [1] + [0] * (self.k - 1)
                cur = [1]
                for j in range(self.k):
                    padded = cur + [0] * (self.k - len(cur))
                    cols.append(padded[:self.k])
                    cur = _poly_mod(_poly_mul(cur, xp, self.p),
                                    list(self.modulus), self.p)
                self._frob_mats[1] = np.array(cols, dtype=np.int64).T
            else:
                f1 = self.frobenius_matrix(1)
                self._frob_mats[i] = np.linalg.matrix_power(f1, i) % self.p
        return self._frob_mats[i]

    # -- discrete-log tables and deterministic constants ---------------------

    @property
    def tables(self) -> kern.Tables:
        if self._tables is None:
            self._build_tables()
        return self._tables

    @property
    def generator(self) -> "FieldElement":
        """Least primitive element in lexicographic coefficient order."""
        if self._generator is None:
            self._build_tables()
        return self._generator

    def _build_tables(self):
        Q = self.order
        for cand in itertools.product(range(self.p), repeat=self.k):
            if all(c == 0 for c in cand):
                continue
            g = self.element(cand)
            if g == self.one:
                continue
            walk = kern.power_walk(self.mul_matrix(g), self.p, self.k, Q - 1)
            if walk.shape[0] == Q - 1:
                expt = walk
                logt = np.full(Q, -1, dtype=np.int64)
                logt[expt] = np.arange(Q - 1, dtype=np.int64)
                digits = kern.decode_digits(expt, self.p, self.k)
                digits[:, 0] = (digits[:, 0] + 1) % self.p
                zech = logt[kern.encode_digits(digits, self.p, self.k)]
                self._tables = kern.Tables(self.p, self.k, Q, expt, logt, zech)
                self._generator = g
                return
        raise GFError("no primitive element found")  # unreachable for a field

    def __repr__(self):
        return f"FieldContext(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return (isinstance(other, FieldContext)
                and (self.p, self.k, self.modulus)
                == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))


class FieldElement:
    """Element of a FieldContext; immutable and hashable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other: "FieldElement"):
        if not isinstance(other, FieldElement) or other.ctx != self.ctx:
            raise GFError("operands belong to different field contexts")

    def __add__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElement(self.ctx, tuple(
            (a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElement(self.ctx, tuple(
            (a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def _shift(self) -> "FieldElement":
        """Multiplication by X."""
        ctx = self.ctx
        p = ctx.p
        shifted = (0,) + self.coeffs[:-1]
        top = self.coeffs[-1]
        if top == 0:
            return FieldElement(ctx, shifted)
        red = ctx._reductions[0]
        return FieldElement(ctx, tuple(
            (s + top * r) % p for s, r in zip(shifted, red)))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.ctx.p
            o = other % p
            return FieldElement(self.ctx,
                                tuple((a * o) % p for a in self.coeffs))
        self._check(other)
        ctx = self.ctx
        p, k = ctx.p, ctx.k
        prod = [0] * (2 * k - 1)
        a, b = self.coeffs, other.coeffs
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        for j in range(k, 2 * k - 1):
            cj = prod[j] % p
            if cj:
                red = ctx._reductions[j - k]
                for i in range(k):
                    out[i] = (out[i] + cj * red[i]) % p
        return FieldElement(ctx, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero")
        ctx = self.ctx
        p = ctx.p
        # extended Euclid in F_p[X] against the modulus
        r0, r1 = list(ctx.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            q = []
            a, b = list(r0), list(r1)
            inv_lead = pow(b[-1], -1, p)
            q = [0] * (len(a) - len(b) + 1)
            while len(a) >= len(b) and a:
                f = (a[-1] * inv_lead) % p
                shift = len(a) - len(b)
                q[shift] = f
                for i, bi in enumerate(b):
                    a[shift + i] = (a[shift + i] - f * bi) % p
                _trim(a)
            r0, r1 = r1, a
            s0, s1 = s1, _trim([(x - y) % p for x, y in
                                itertools.zip_longest(
                                    s0, _poly_mul(q, s1, p), fillvalue=0)])
        lead_inv = pow(r0[-1], -1, p)
        inv = [(c * lead_inv) % p for c in s0]
        inv += [0] * (ctx.k - len(inv))
        return FieldElement(ctx, tuple(inv[:ctx.k]))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, i: int = 1) -> "FieldElement":
        """self ** (p**i)."""
        ctx = self.ctx
        m = ctx.frobenius_matrix(i)
        v = (m @ np.array(self.coeffs, dtype=np.int64)) % ctx.p
        return FieldElement(ctx, tuple(int(x) for x in v))

    def trace(self, m: int | None = None) -> "FieldElement":
        """Partial trace sum_{i=0}^{m-1} self**(p**i); m defaults to k,
        in which case the value lies in the prime subfield."""
        if m is None:
            m = self.ctx.k
        acc = self
        cur = self
        for _ in range(m - 1):
            cur = cur.frobenius(1)
            acc = acc + cur
        return acc

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise GFError("zero has no multiplicative order")
        n = 1
        cur = self
        one = self.ctx.one
        while cur != one:
            cur = cur * self
            n += 1
        return n

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"<{self.text()} in GF({self.ctx.p}^{self.ctx.k})>"


def find_omega(ctx: FieldContext) -> FieldElement:
    """The constant omega with omega^(q-1) = -1 in F_{q^2}, chosen as
    g^((q+1)/2) for the least primitive element g (deterministic)."""
    if ctx.p == 2:
        raise GFError("omega requires odd characteristic")
    if ctx.k % 2 != 0:
        raise GFError("omega lives in F_{q^2}; need an even-degree context")
    q = ctx.p ** (ctx.k // 2)
    omega = ctx.generator ** ((q + 1) // 2)
    minus_one = -ctx.one
    assert omega ** (q - 1) == minus_one
    return omega


class AdditiveOperator:
    """F_p-linear operator L(Y) = sum c_i * Y^(p^i) on a field context."""

    def __init__(self, ctx: FieldContext,
                 terms: Iterable[tuple[FieldElement, int]]):
        self.ctx = ctx
        self.terms = tuple((c, int(i)) for c, i in terms)
        for c, _ in self.terms:
            if c.ctx != ctx:
                raise GFError("coefficient from a different context")
        self._matrix = None

    def __call__(self, e: FieldElement) -> FieldElement:
        acc = self.ctx.zero
        for c, i in self.terms:
            acc = acc + c * e.frobenius(i)
        return acc

    def matrix(self) -> np.ndarray:
        """The operator as a k-by-k matrix over F_p in the power basis."""
        if self._matrix is None:
            ctx = self.ctx
            m = np.zeros((ctx.k, ctx.k), dtype=np.int64)
            for c, i in self.terms:
                m = (m + ctx.mul_matrix(c) @ ctx.frobenius_matrix(i)) % ctx.p
            self._matrix = m
        return self._matrix

    def solve(self, rhs: FieldElement) -> list[FieldElement]:
        """All y with L(y) = rhs, in lexicographic coefficient order."""
        if rhs.ctx != self.ctx:
            raise GFError("rhs from a different context")
        ctx = self.ctx
        mats = self.matrix()[None, :, :]
        b = np.array(rhs.coeffs, dtype=np.int64)[None, :]
        ok, sol, kdim, kbasis = kern.solve_affine_batch(mats, b, ctx.p)
        if not ok[0]:
            return []
        base = sol[0]
        dim = int(kdim[0])
        combos = [base]
        if dim:
            grid = np.array(list(itertools.product(range(ctx.p), repeat=dim)),
                            dtype=np.int64)
            combos = (base[None, :] + grid @ kbasis[0, :dim]) % ctx.p
        out = [ctx.element(tuple(int(x) for x in v)) for v in np.atleast_2d(combos)]
        out.sort(key=lambda e: e.coeffs)
        return out


def additive_solve(op: AdditiveOperator, rhs: FieldElement) -> list[FieldElement]:
    return op.solve(rhs)
