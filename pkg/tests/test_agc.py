"""Evaluation codes: generator matrices, duals, designed distances, gap-run
certificates, and exhaustive minimum distances (with an independent scalar
oracle for small codes)."""

import itertools

import numpy as np
import pytest

import hermquot as hq
from hermquot import linalg
from hermquot.agc import (CertificateRefused, CodeError, brute_min_distance,
                          build_CL, designed_distances, dual_code,
                          gkl_bound_CL, gkl_bound_COmega)
from hermquot.rrspace import weierstrass_semigroup


def oracle_min_distance(code):
    """Nested-loop weight search with scalar field arithmetic."""
    ctx = code.spec.ctx
    rows = [[ctx.from_encoded(int(v)) for v in row] for row in code.G]
    best = code.n + 1
    for msg in itertools.product(ctx.elements(), repeat=len(rows)):
        if all(m.is_zero() for m in msg):
            continue
        weight = 0
        for col in range(code.n):
            acc = ctx.zero
            for m, row in zip(msg, rows):
                acc = acc + m * row[col]
            if not acc.is_zero():
                weight += 1
        best = min(best, weight)
    return best


@pytest.fixture(scope="module")
def small_curve():
    return hq.build_curve("FamilyI", 5, 2, 13)


class TestBuildCL:
    def test_gamma0_repetition(self, small_curve):
        code = build_CL(small_curve, 0)
        assert code.k == 1
        assert np.all(code.G == 1)

    def test_example1_dimension(self):
        spec = hq.build_curve("FamilyI", 7, 2, 5)
        code = build_CL(spec, 13)
        assert (code.n, code.k) == (5047, 3)

    def test_dimension_equals_non_gap_count(self, small_curve):
        sg = weierstrass_semigroup(small_curve)
        pts = hq.enumerate_points(small_curve)[:20]
        for gamma in range(0, 14):
            code = build_CL(small_curve, gamma, D=pts)
            assert code.k == len(sg.non_gaps_upto(gamma))

    def test_empty_d_rejected(self, small_curve):
        with pytest.raises(CodeError):
            build_CL(small_curve, 3, D=[])

    def test_off_curve_point_rejected(self, small_curve):
        ctx = small_curve.ctx
        pts = hq.enumerate_points(small_curve)[:5]
        bad = hq.AffinePoint(pts[0].x, pts[0].y + ctx.one)
        if hq.equation_eval(small_curve, bad).is_zero():
            pytest.skip("perturbed point landed on the curve")
        with pytest.raises(CodeError):
            build_CL(small_curve, 3, D=pts + [bad])

    def test_non_cab_family_rejected(self):
        spec = hq.build_curve("FamilyII", 11, 1, 5)
        with pytest.raises(hq.CurveError):
            build_CL(spec, 3)

    def test_monotonicity_in_gamma(self, small_curve):
        # stepping gamma onto a non-gap adds one dimension and costs one
        # unit of designed distance
        pts = hq.enumerate_points(small_curve)[:20]
        sg = weierstrass_semigroup(small_curve)
        for gamma in range(0, 12):
            if (gamma + 1) in sg:
                c0 = build_CL(small_curve, gamma, D=pts)
                c1 = build_CL(small_curve, gamma + 1, D=pts)
                assert c1.k == c0.k + 1
                assert designed_distances(c1)[0] == designed_distances(c0)[0] - 1


class TestDual:
    def test_repetition_dual_is_parity(self, small_curve):
        pts = hq.enumerate_points(small_curve)[:10]
        code = build_CL(small_curve, 0, D=pts)
        dual = dual_code(code)
        assert dual.k == 9
        ctx = small_curve.ctx
        prod = linalg.matmul(ctx, code.G, dual.G.T)
        assert np.all(prod == 0)

    def test_dual_dual_row_space(self, small_curve):
        pts = hq.enumerate_points(small_curve)[:16]
        code = build_CL(small_curve, 5, D=pts)
        dd = dual_code(dual_code(code))
        assert linalg.row_space_equal(small_curve.ctx, code.G, dd.G)

    def test_rank_nullity_and_orthogonality(self, small_curve):
        code = build_CL(small_curve, 13)  # n = 725
        dual = dual_code(code)
        assert code.k + dual.k == code.n
        ctx = small_curve.ctx
        prod = linalg.matmul(ctx, code.G, dual.G[:50].T)
        assert np.all(prod == 0)

    def test_example1_dual_dimension(self):
        spec = hq.build_curve("FamilyI", 7, 2, 5)
        code = build_CL(spec, 13)
        dual = dual_code(code)
        assert code.k + dual.k == code.n == 5047
        # orthogonality spot check against a slice of the dual basis
        prod = linalg.matmul(spec.ctx, code.G, dual.G[:200].T)
        assert np.all(prod == 0)


class TestDesignedDistances:
    def test_example1(self):
        spec = hq.build_curve("FamilyI", 7, 2, 5)
        code = build_CL(spec, 13)
        d_cl, d_om = designed_distances(code)
        assert d_cl == 5047 - 13 == 5034
        assert d_om == 13 - 52  # vacuous (non-positive)

    def test_gamma0(self, small_curve):
        pts = hq.enumerate_points(small_curve)[:10]
        code = build_CL(small_curve, 0, D=pts)
        assert designed_distances(code)[0] == 10


class TestGKLBounds:
    def test_example1_certificate(self):
        sg = hq.from_generators([7, 10])
        cert = gkl_bound_CL(sg, 13, 5047)
        assert cert.value == 5037
        assert cert.witness["t"] == 2
        assert cert.witness["gap_run"] == [11, 13]

    def test_t0_run(self):
        sg = hq.from_generators([7, 10])
        cert = gkl_bound_CL(sg, 1, 100)
        assert cert.witness["t"] == 0 and cert.value == 100

    def test_gamma53_value_per_formula(self):
        sg = hq.from_generators([7, 10])
        cert = gkl_bound_CL(sg, 53, 5047)
        assert cert.witness["t"] == 0  # 52 = 7*6 + 10 is a non-gap
        assert cert.value == 5047 - 53 + 1

    def test_non_gap_refused(self):
        sg = hq.from_generators([7, 10])
        with pytest.raises(CertificateRefused):
            gkl_bound_CL(sg, 14, 100)

    def test_comega_valid_instance(self):
        sg = hq.from_generators([7, 10])
        cert = gkl_bound_COmega(sg, 22, 33, 1, 27)
        assert cert.value == 22 + 33 - 1 - 52 + 2 == 4

    def test_comega_t0_degenerate(self):
        sg = hq.from_generators([7, 10])
        cert = gkl_bound_COmega(sg, 29, 29, 0, 27)
        assert cert.value == (29 + 29 - 1 - 52) + 1

    def test_comega_example2_refused(self):
        # the reference gap runs at 1022..1030 / 1063..1072 do not exist in
        # <25,42> (its largest gap is 983), so the certificate is refused
        sg = hq.from_generators([25, 42])
        with pytest.raises(CertificateRefused):
            gkl_bound_COmega(sg, 1022, 1072, 8, 492)

    def test_comega_hypothesis_check(self):
        sg = hq.from_generators([25, 42])
        assert all(g in sg.gaps for g in (22, 23, 24))
        cert = gkl_bound_COmega(sg, 22, 24, 2, 492)
        assert cert.value == 22 + 24 - 1 - 982 + 3  # vacuous but well-formed


class TestBruteMinDistance:
    def test_repetition_code(self, small_curve):
        pts = hq.enumerate_points(small_curve)[:10]
        code = build_CL(small_curve, 0, D=pts)
        cert = brute_min_distance(code)
        assert cert.kind == "brute" and cert.value == 10

    def test_matches_scalar_oracle(self):
        # Hermitian over F_25 keeps the message space small enough for the
        # nested-loop oracle
        spec = hq.build_curve("Hermitian", 5, 1)
        pts = hq.enumerate_points(spec)[:10]
        for gamma in (5, 6):
            code = build_CL(spec, gamma, D=pts)
            cert = brute_min_distance(code)
            assert cert.value == oracle_min_distance(code)

    def test_budget_guard(self, small_curve):
        code = build_CL(small_curve, 13)
        with pytest.raises(CodeError):
            brute_min_distance(code, budget=10)

    def test_dual_designed_bound_holds(self, small_curve):
        # C_Omega(D, gamma P) = dual of C_L; its distance is at least
        # gamma - (2g - 2) for any D
        pts = hq.enumerate_points(small_curve)[:8]
        code = build_CL(small_curve, 7, D=pts)
        dual = dual_code(code)
        assert dual.k == 8 - 6
        d = brute_min_distance(dual).value
        assert d >= 7 - (2 * small_curve.genus - 2) == 5
