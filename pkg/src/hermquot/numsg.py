"""Numerical semigroups: membership tables, gaps, Frobenius numbers,
telescopic sequences and their closed-form largest gap and genus.

Only cofinite semigroups are accepted (generator gcd 1).  The membership
table runs past the pairwise Frobenius bound a1*a2 of the two smallest
generators, which dominates the true Frobenius number, so every query
above the table resolves to membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class SemigroupError(ValueError):
    pass


class NumericalSemigroup:
    """Additive submonoid of N generated by a finite gcd-1 set."""

    __slots__ = ("generators", "membership", "frobenius", "_gaps_arr",
                 "_gaps")

    def __init__(self, generators: Sequence[int]):
        gens = sorted(set(int(g) for g in generators))
        if not gens:
            raise SemigroupError("empty generator list")
        if any(g < 1 for g in gens):
            raise SemigroupError("generators must be positive")
        g = 0
        for a in gens:
            g = gcd(g, a)
        if g != 1:
            raise SemigroupError(
                f"gcd of generators is {g} != 1: infinitely many gaps")
        self.generators = tuple(gens)
        if len(gens) == 1:  # necessarily <1>
            bound = 3
        else:
            bound = max(gens[0] * gens[1], gens[-1]) + 2
        # coin-closure DP, one forward pass per generator: along each residue
        # chain mod a, membership propagates by running maximum
        table = np.zeros(bound, dtype=bool)
        table[0] = True
        for a in gens:
            for r in range(a):
                table[r::a] = np.maximum.accumulate(table[r::a])
        self.membership = table
        self._gaps_arr = np.nonzero(~table)[0]
        self._gaps = None
        self.frobenius = int(self._gaps_arr[-1]) if self._gaps_arr.size else -1

    @property
    def gaps(self) -> tuple[int, ...]:
        if self._gaps is None:
            self._gaps = tuple(int(n) for n in self._gaps_arr)
        return self._gaps

    @property
    def genus(self) -> int:
        return int(self._gaps_arr.size)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < len(self.membership):
            return bool(self.membership[n])
        return True

    def non_gaps_upto(self, m: int) -> list[int]:
        return [n for n in range(m + 1) if n in self]

    def gap_runs(self) -> list[tuple[int, int]]:
        """Maximal runs of consecutive gaps as (start, length), by start."""
        runs = []
        start = None
        prev = None
        for g in self.gaps:
            if start is None:
                start, prev = g, g
            elif g == prev + 1:
                prev = g
            else:
                runs.append((start, prev - start + 1))
                start, prev = g, g
        if start is not None:
            runs.append((start, prev - start + 1))
        return runs

    def as_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "genus": self.genus,
            "frobenius": self.frobenius,
            "gaps": list(self.gaps),
            "runs": [list(r) for r in self.gap_runs()],
        }

    def __repr__(self):
        gens = ",".join(str(g) for g in self.generators)
        return f"NumericalSemigroup(<{gens}>)"


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup(list(gens))


@dataclass(frozen=True)
class TelescopicReport:
    sequence: tuple[int, ...]
    d_chain: tuple[int, ...]   # (d_0, d_1, ..., d_k) with d_0 = 0
    telescopic: bool
    failed_index: int | None   # first i (1-based) with a_i/d_i not in S_{i-1}
    l_g: int | None            # largest gap by the closed form
    g: int | None              # genus by the closed form


def is_telescopic(seq: Sequence[int]) -> TelescopicReport:
    """Telescopic test: with d_i = gcd(a_1..a_i) and S_{i-1} generated by
    {a_1/d_{i-1}, ..., a_{i-1}/d_{i-1}}, every a_i/d_i must lie in S_{i-1}."""
    a = tuple(int(x) for x in seq)
    if not a or any(x < 1 for x in a):
        raise SemigroupError("sequence entries must be positive")
    d = [0]
    for x in a:
        d.append(gcd(d[-1], x))
    if d[-1] != 1:
        raise SemigroupError("gcd of the sequence must be 1")
    telescopic = True
    failed = None
    for i in range(2, len(a) + 1):
        prev = [x // d[i - 1] for x in a[:i - 1]]
        s_prev = NumericalSemigroup(prev)
        if (a[i - 1] // d[i]) not in s_prev:
            telescopic = False
            failed = i
            break
    if not telescopic:
        return TelescopicReport(a, tuple(d), False, failed, None, None)
    l_g, g = _closed_form_numbers(a, d)
    return TelescopicReport(a, tuple(d), True, None, l_g, g)


def _closed_form_numbers(a, d) -> tuple[int, int]:
    # sum_i (d_{i-1}/d_i - 1) a_i with d_0 = 0, so the first summand is -a_1
    l_g = -a[0]
    for i in range(2, len(a) + 1):
        l_g += (d[i - 1] // d[i] - 1) * a[i - 1]
    g2 = l_g + 1
    if g2 % 2:
        raise SemigroupError(f"closed form produced odd l_g + 1 = {g2}")
    return l_g, g2 // 2


def telescopic_numbers(seq: Sequence[int]) -> tuple[int, int]:
    """(largest gap, genus) of the semigroup of a telescopic sequence, by
    the closed form; rejects non-telescopic input."""
    rep = is_telescopic(seq)
    if not rep.telescopic:
        raise SemigroupError(
            f"sequence {tuple(seq)} is not telescopic "
            f"(membership fails at index {rep.failed_index})")
    return rep.l_g, rep.g


def gap_runs(s: NumericalSemigroup) -> list[tuple[int, int]]:
    return s.gap_runs()
