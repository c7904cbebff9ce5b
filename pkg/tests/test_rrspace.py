"""C_ab shapes, Weierstrass semigroups, pole orders and monomial bases."""

import pytest

import hermquot as hq
from hermquot.curves import CurveError
from hermquot.rrspace import (PartialMembership, cab_parameters, pole_order,
                              noncenter_telescopic_sequence, rr_basis,
                              weierstrass_semigroup)


class TestCabParameters:
    def test_family_i_example1(self):
        shape = cab_parameters(hq.build_curve("FamilyI", 7, 2, 5))
        assert (shape.a, shape.b) == (7, 10)

    def test_family_i_example2(self):
        shape = cab_parameters(hq.build_curve("FamilyI", 5, 3, 3))
        assert (shape.a, shape.b) == (25, 42)

    def test_hermitian(self):
        shape = cab_parameters(hq.build_curve("Hermitian", 5, 1))
        assert (shape.a, shape.b) == (5, 6)

    def test_intermediate_center(self):
        shape = cab_parameters(hq.build_curve("IntermediateCenter", 5, 2))
        assert (shape.a, shape.b) == (5, 26)

    def test_non_cab_families_rejected(self):
        for family, p, h, d in [("FamilyII", 11, 2, 5),
                                ("FamilyIII", 11, 1, 5),
                                ("IntermediateNoncenter", 5, 2, None)]:
            with pytest.raises(CurveError):
                cab_parameters(hq.build_curve(family, p, h, d))


class TestWeierstrassSemigroup:
    def test_family_i_example1(self):
        sg = weierstrass_semigroup(hq.build_curve("FamilyI", 7, 2, 5))
        assert sg.generators == (7, 10) and sg.genus == 27

    def test_hermitian_genus_consistency(self):
        spec = hq.build_curve("Hermitian", 5, 1)
        sg = weierstrass_semigroup(spec)
        assert sg.generators == (5, 6)
        assert sg.genus == spec.genus == 10

    def test_family_ii_partial(self):
        spec = hq.build_curve("FamilyII", 11, 2, 5)
        pm = weierstrass_semigroup(spec)
        assert isinstance(pm, PartialMembership)
        assert pm.members == (11, 24)  # q/p and (q-1)/d
        assert pm.status == "asserted, unverified"

    def test_family_iii_carries_both_lists(self):
        # the two published member lists disagree; both are recorded as data
        spec = hq.build_curve("FamilyIII", 11, 1, 5)
        pm = weierstrass_semigroup(spec)
        assert pm.members == (4, 10)          # 2(q-1)/d and q-1
        assert pm.alternate_members == (2, 1)  # (q-1)/d and q/p

    def test_genus_cross_check_all_cab_instances(self):
        # the central tie between the quotient genus formulas and the
        # semigroup view: g(curve) = g(<a,b>) = (a-1)(b-1)/2
        cases = [("Hermitian", 5, 1, None), ("Hermitian", 7, 1, None),
                 ("IntermediateCenter", 5, 2, None),
                 ("IntermediateCenter", 7, 2, None),
                 ("FamilyI", 7, 2, 5), ("FamilyI", 5, 3, 3),
                 ("FamilyI", 5, 2, 13)]
        for family, p, h, d in cases:
            spec = hq.build_curve(family, p, h, d)
            shape = cab_parameters(spec)
            sg = weierstrass_semigroup(spec)
            assert sg.genus == spec.genus
            assert spec.genus == (shape.a - 1) * (shape.b - 1) // 2


class TestPoleOrder:
    def test_generators(self):
        shape = cab_parameters(hq.build_curve("FamilyI", 7, 2, 5))
        assert pole_order(1, 0, shape) == 7
        assert pole_order(0, 1, shape) == 10
        assert pole_order(2, 3, shape) == 44

    def test_y_degree_guard(self):
        shape = cab_parameters(hq.build_curve("FamilyI", 7, 2, 5))
        with pytest.raises(CurveError):
            pole_order(0, 7, shape)


class TestRRBasis:
    def test_constants_only(self):
        spec = hq.build_curve("FamilyI", 7, 2, 5)
        basis = rr_basis(spec, 0)
        assert basis.monomials == ((0, 0),)

    def test_example1_gamma13(self):
        spec = hq.build_curve("FamilyI", 7, 2, 5)
        basis = rr_basis(spec, 13)
        assert basis.pole_orders == (0, 7, 10)

    def test_beyond_2g_minus_2(self):
        spec = hq.build_curve("FamilyI", 7, 2, 5)
        basis = rr_basis(spec, 60)
        assert len(basis.monomials) == 60 - 27 + 1 == 34

    def test_counts_match_non_gaps(self):
        spec = hq.build_curve("FamilyI", 5, 2, 13)
        sg = weierstrass_semigroup(spec)
        for m in range(0, 30):
            basis = rr_basis(spec, m)
            assert len(basis.monomials) == len(sg.non_gaps_upto(m))
            assert basis.pole_orders == tuple(sg.non_gaps_upto(m))

    def test_unit_steps_at_non_gaps(self):
        spec = hq.build_curve("Hermitian", 5, 1)
        sg = weierstrass_semigroup(spec)
        prev = len(rr_basis(spec, 0).monomials)
        for m in range(1, 40):
            cur = len(rr_basis(spec, m).monomials)
            assert cur - prev == (1 if m in sg else 0)
            prev = cur

    def test_pole_orders_distinct(self):
        spec = hq.build_curve("FamilyI", 5, 3, 3)
        basis = rr_basis(spec, 300)
        assert len(set(basis.pole_orders)) == len(basis.pole_orders)


class TestCoverSequence:
    def test_arithmetic_as_printed_q49(self):
        rep = noncenter_telescopic_sequence(7, 2)
        assert rep.sequence == (14, 49, 50)
        assert rep.l_g == 49 ** 2 // 7 - 7 - 1 == 335

    def test_matches_noncenter_genus_across_parameters(self):
        for p, h in [(5, 1), (5, 2), (7, 2), (11, 1), (5, 3)]:
            rep = noncenter_telescopic_sequence(p, h)
            q = p ** h
            assert rep.g == (q // p) * (q - 1) // 2
