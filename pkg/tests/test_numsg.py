"""Semigroup engine: gap tables against closed forms and brute checks,
telescopic sequences against the definition and the Kirfel-Pellikaan
numbers."""

from math import gcd

import pytest

from hermquot.numsg import (NumericalSemigroup, SemigroupError,
                            from_generators, gap_runs, is_telescopic,
                            telescopic_numbers)


def brute_semigroup_upto(gens, bound):
    """Reachability by plain breadth-first closure, no DP tricks."""
    reach = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = v + g
                if w <= bound and w not in reach:
                    reach.add(w)
                    nxt.append(w)
        frontier = nxt
    return reach


class TestFromGenerators:
    def test_full_semigroup(self):
        s = from_generators([1])
        assert s.gaps == () and s.frobenius == -1

    def test_example1_gap_sequence(self):
        s = from_generators([7, 10])
        assert list(s.gaps) == [1, 2, 3, 4, 5, 6, 8, 9, 11, 12, 13, 15, 16,
                                18, 19, 22, 23, 25, 26, 29, 32, 33, 36, 39,
                                43, 46, 53]
        assert s.genus == 27 and s.frobenius == 53

    def test_example2_semigroup(self):
        s = from_generators([25, 42])
        assert s.frobenius == 983 and s.genus == 492

    def test_example2_has_no_gaps_above_frobenius(self):
        # every integer above the largest gap is a member; in particular the
        # interval 1022..1072 consists of non-gaps of <25,42>
        s = from_generators([25, 42])
        assert all(n in s for n in range(984, 1100))
        assert 1022 == 25 * 14 + 42 * 16  # an explicit representation

    def test_gcd_not_one_rejected(self):
        with pytest.raises(SemigroupError):
            from_generators([2, 4])

    def test_empty_rejected(self):
        with pytest.raises(SemigroupError):
            from_generators([])

    def test_matches_brute_closure(self):
        for gens in ([3, 5], [4, 7, 9], [6, 10, 15], [25, 42]):
            s = from_generators(gens)
            bound = len(s.membership) - 1
            reach = brute_semigroup_upto(gens, bound)
            assert all((n in s) == (n in reach) for n in range(bound + 1))

    def test_membership_closed_under_addition(self):
        s = from_generators([7, 10])
        members = [n for n in range(len(s.membership)) if n in s]
        for m1 in members:
            for m2 in members:
                if m1 + m2 < len(s.membership):
                    assert (m1 + m2) in s

    def test_coprime_pair_closed_forms_sampled(self):
        for a, b in [(2, 3), (3, 8), (7, 10), (11, 13), (25, 42), (59, 60)]:
            assert gcd(a, b) == 1
            s = from_generators([a, b])
            assert s.frobenius == a * b - a - b
            assert s.genus == (a - 1) * (b - 1) // 2


class TestGapRuns:
    def test_example1_run(self):
        s = from_generators([7, 10])
        assert (11, 3) in s.gap_runs()

    def test_full_semigroup_has_no_runs(self):
        assert gap_runs(from_generators([1])) == []

    def test_runs_partition_gaps(self):
        for gens in ([7, 10], [25, 42], [4, 9]):
            s = from_generators(gens)
            covered = []
            for start, length in s.gap_runs():
                covered.extend(range(start, start + length))
            assert covered == list(s.gaps)

    def test_example2_runs_stay_below_frobenius(self):
        s = from_generators([25, 42])
        runs = s.gap_runs()
        assert max(start + length - 1 for start, length in runs) == 983
        assert not any(start <= 1022 < start + length for start, length in runs)


class TestTelescopic:
    def test_pairs_are_telescopic(self):
        rep = is_telescopic([7, 10])
        assert rep.telescopic and (rep.l_g, rep.g) == (53, 27)

    def test_small_pair(self):
        assert telescopic_numbers([2, 3]) == (1, 1)

    def test_cover_sequence_q49(self):
        rep = is_telescopic([14, 49, 50])
        assert rep.telescopic
        assert rep.l_g == -14 + 49 + 6 * 50 == 335
        assert rep.g == 168

    def test_4_6_9_is_telescopic_by_the_definition(self):
        # d-chain (0, 4, 2, 1); 6/2 = 3 lies in S_1 = <4/4> = <1>, and
        # 9 lies in S_2 = <2, 3>; the closed forms match brute force
        rep = is_telescopic([4, 6, 9])
        assert rep.telescopic
        s = from_generators([4, 6, 9])
        assert (rep.l_g, rep.g) == (s.frobenius, s.genus) == (11, 6)

    def test_non_telescopic_sequence(self):
        # S_2 = <5, 6> misses 7 = a_3/d_3
        rep = is_telescopic([25, 30, 7])
        assert not rep.telescopic and rep.failed_index == 3
        with pytest.raises(SemigroupError):
            telescopic_numbers([25, 30, 7])

    def test_gcd_not_one_rejected(self):
        with pytest.raises(SemigroupError):
            is_telescopic([4, 6])

    def test_closed_form_equals_brute_for_triples(self):
        for seq in ([14, 49, 50], [6, 10, 15], [4, 6, 9], [9, 6, 4],
                    [8, 12, 13]):
            rep = is_telescopic(seq)
            if not rep.telescopic:
                continue
            s = from_generators(seq)
            assert rep.l_g == s.frobenius
            assert rep.g == s.genus
