"""Field arithmetic: construction determinism, axioms, Frobenius/trace,
omega, and the additive-equation solver (checked against brute scans)."""

import itertools
import json
import random

import pytest

from hermquot import gf
from hermquot.gf import (AdditiveOperator, GFError, additive_solve,
                         find_omega, make_field)


# -- independent irreducibility oracle: trial division by every monic
#    polynomial of degree up to half the candidate's degree ------------------

def _poly_divmod(a, b, p):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = (a[-1] * inv) % p
        shift = len(a) - len(b)
        q[shift] = f
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - f * bi) % p
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _oracle_irreducible(poly, p):
    deg = len(poly) - 1
    for ddeg in range(1, deg // 2 + 1):
        for lower in itertools.product(range(p), repeat=ddeg):
            divisor = list(lower) + [1]
            _, rem = _poly_divmod(poly, divisor, p)
            if not rem:
                return False
    return True


def _oracle_least_irreducible(p, k):
    for lower in itertools.product(range(p), repeat=k):
        cand = list(lower) + [1]
        if _oracle_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("oracle found no irreducible polynomial")


class TestMakeField:
    def test_prime_field_uses_modulus_x(self):
        ctx = make_field(7, 1)
        assert ctx.modulus == (0, 1)

    def test_degree4_modulus_matches_trial_division_oracle(self):
        ctx = make_field(7, 4)
        assert ctx.modulus == _oracle_least_irreducible(7, 4)

    def test_degree6_modulus_matches_trial_division_oracle(self):
        ctx = make_field(5, 6)
        assert ctx.modulus == _oracle_least_irreducible(5, 6)

    def test_deterministic(self):
        a = make_field(5, 4)
        b = make_field(5, 4)
        assert a.modulus == b.modulus

    def test_rejects_bad_input(self):
        with pytest.raises(GFError):
            make_field(6, 2)
        with pytest.raises(GFError):
            make_field(7, 0)

    def test_descriptor_json(self):
        ctx = make_field(5, 2)
        blob = json.dumps(ctx.descriptor())
        assert json.loads(blob) == {"p": 5, "k": 2,
                                    "modulus": list(ctx.modulus)}


class TestArith:
    def test_field_axioms_on_random_triples(self):
        ctx = make_field(7, 4)
        rng = random.Random(0)
        elems = [ctx.element([rng.randrange(7) for _ in range(4)])
                 for _ in range(60)]
        for _ in range(1000):
            a, b, c = rng.choice(elems), rng.choice(elems), rng.choice(elems)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + (-a)).is_zero()

    def test_inverse_of_one(self):
        ctx = make_field(11, 2)
        assert ctx.one.inverse() == ctx.one

    def test_lagrange_exponent_f49(self):
        ctx = make_field(7, 2)
        for e in ctx.elements():
            if not e.is_zero():
                assert e ** 48 == ctx.one

    def test_prime_field_inverse(self):
        ctx = make_field(7, 1)
        assert ctx.scalar(3).inverse() == ctx.scalar(5)  # 3*5 = 15 = 1 mod 7

    def test_zero_inversion_rejected(self):
        ctx = make_field(5, 2)
        with pytest.raises(ZeroDivisionError):
            ctx.zero.inverse()

    def test_context_mismatch_rejected(self):
        a = make_field(5, 2).one
        b = make_field(7, 2).one
        with pytest.raises(GFError):
            _ = a + b

    def test_pow_square_multiply(self):
        ctx = make_field(5, 3)
        rng = random.Random(1)
        for _ in range(50):
            e = ctx.element([rng.randrange(5) for _ in range(3)])
            acc = ctx.one
            for n in range(8):
                assert e ** n == acc
                acc = acc * e


class TestFrobenius:
    def test_identity_at_zero_power(self):
        ctx = make_field(7, 4)
        e = ctx.element([1, 2, 3, 4])
        assert e.frobenius(0) == e

    def test_full_orbit_closure_exhaustive(self):
        ctx = make_field(7, 4)  # 2401 elements <= 10^4
        for e in ctx.elements():
            assert e.frobenius(ctx.k) == e

    def test_full_orbit_closure_sampled_large(self):
        ctx = make_field(5, 6)
        rng = random.Random(2)
        for _ in range(200):
            e = ctx.element([rng.randrange(5) for _ in range(6)])
            assert e.frobenius(ctx.k) == e

    def test_prime_subfield_fixed(self):
        ctx = make_field(7, 2)
        for c in range(7):
            assert ctx.scalar(c).frobenius(1) == ctx.scalar(c)

    def test_additive_and_multiplicative(self):
        ctx = make_field(5, 4)
        rng = random.Random(3)
        for _ in range(200):
            a = ctx.element([rng.randrange(5) for _ in range(4)])
            b = ctx.element([rng.randrange(5) for _ in range(4)])
            assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
            assert (a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1)

    def test_matches_power(self):
        ctx = make_field(5, 4)
        rng = random.Random(4)
        for _ in range(50):
            e = ctx.element([rng.randrange(5) for _ in range(4)])
            for i in range(1, 4):
                assert e.frobenius(i) == e ** (5 ** i)


class TestTrace:
    def test_zero(self):
        ctx = make_field(5, 2)
        assert ctx.zero.trace().is_zero()

    def test_single_term_is_identity(self):
        ctx = make_field(5, 2)
        for e in ctx.elements():
            assert e.trace(1) == e

    def test_trace_zero_count_f25(self):
        # kernel of the surjective F_5-linear map onto F_5
        ctx = make_field(5, 2)
        count = sum(1 for e in ctx.elements() if e.trace(2).is_zero())
        assert count == 5

    def test_lands_in_prime_field(self):
        ctx = make_field(7, 4)
        rng = random.Random(5)
        for _ in range(100):
            e = ctx.element([rng.randrange(7) for _ in range(4)])
            t = e.trace()
            assert t.coeffs[1:] == (0,) * 3


class TestOmega:
    def test_q5(self):
        ctx = make_field(5, 2)
        w = find_omega(ctx)
        assert w ** 4 == -ctx.one
        assert w ** 8 == ctx.one

    def test_q49(self):
        ctx = make_field(7, 4)
        w = find_omega(ctx)
        assert w ** 48 == -ctx.one

    def test_omega_outside_fq(self):
        ctx = make_field(7, 2)
        w = find_omega(ctx)
        assert w ** 6 != ctx.one  # w^(q-1) = -1 != 1 in odd characteristic

    def test_deterministic(self):
        a = find_omega(make_field(5, 6))
        b = find_omega(make_field(5, 6))
        assert a.coeffs == b.coeffs

    def test_rejects_odd_degree_and_char2(self):
        with pytest.raises(GFError):
            find_omega(make_field(5, 3))
        with pytest.raises(GFError):
            find_omega(make_field(2, 2))


class TestAdditiveSolve:
    def test_identity_operator(self):
        ctx = make_field(5, 2)
        op = AdditiveOperator(ctx, [(ctx.one, 0)])
        c = ctx.element([3, 4])
        assert additive_solve(op, c) == [c]

    def test_artin_schreier_kernel_is_prime_field(self):
        ctx = make_field(7, 2)
        op = AdditiveOperator(ctx, [(ctx.one, 1), (-ctx.one, 0)])  # y^p - y
        roots = additive_solve(op, ctx.zero)
        assert roots == [ctx.scalar(c) for c in range(7)]

    def test_matches_brute_scan_f49(self):
        ctx = make_field(7, 2)
        rng = random.Random(6)
        ops = [
            AdditiveOperator(ctx, [(ctx.one, 0)]),
            AdditiveOperator(ctx, [(ctx.one, 1), (ctx.one, 0)]),
            AdditiveOperator(ctx, [(ctx.element([3, 1]), 1),
                                   (ctx.element([0, 2]), 0)]),
        ]
        for op in ops:
            for _ in range(10):
                c = ctx.element([rng.randrange(7), rng.randrange(7)])
                brute = sorted((e for e in ctx.elements() if op(e) == c),
                               key=lambda e: e.coeffs)
                assert additive_solve(op, c) == brute

    def test_linearity_by_sampling(self):
        ctx = make_field(5, 4)
        op = AdditiveOperator(ctx, [(ctx.element([2, 0, 1, 0]), 2),
                                    (ctx.one, 0)])
        rng = random.Random(7)
        for _ in range(100):
            u = ctx.element([rng.randrange(5) for _ in range(4)])
            v = ctx.element([rng.randrange(5) for _ in range(4)])
            s = rng.randrange(5)
            assert op(u + v) == op(u) + op(v)
            assert op(u * s) == op(u) * s

    def test_solution_count_power_of_p(self):
        ctx = make_field(5, 4)
        rng = random.Random(8)
        op = AdditiveOperator(ctx, [(ctx.one, 2), (-ctx.one, 0)])
        hits = set()
        for _ in range(30):
            c = ctx.element([rng.randrange(5) for _ in range(4)])
            roots = additive_solve(op, c)
            for r in roots:
                assert op(r) == c
            n = len(roots)
            hits.add(n)
            assert n == 0 or (n & (n - 1) == 0 or n % 5 == 0)
            if n:
                # 0 or a power of p, exactly
                m = n
                while m % 5 == 0:
                    m //= 5
                assert m == 1
        assert hits - {0} != set()

    def test_output_sorted_lexicographically(self):
        ctx = make_field(5, 2)
        op = AdditiveOperator(ctx, [(ctx.one, 1), (-ctx.one, 0)])
        roots = additive_solve(op, ctx.zero)
        assert roots == sorted(roots, key=lambda e: e.coeffs)


class TestSerialization:
    def test_text_round_trip(self):
        ctx = make_field(7, 4)
        e = ctx.element([6, 0, 3, 1])
        assert e.text() == "6,0,3,1"
        assert ctx.from_text(e.text()) == e

    def test_encode_decode_round_trip(self):
        ctx = make_field(5, 3)
        for code in range(ctx.order):
            e = ctx.from_encoded(code)
            assert ctx.encode(e) == code
