"""Pole orders at the place at infinity and monomial bases of the one-point
Riemann-Roch spaces on the families with a C_ab plane model.

A C_ab model has a single place P at infinity where x and y have coprime
pole orders a and b, with a equal to the y-degree of the model; x^i y^j with
j < a then has pole order ia + jb, all such orders are distinct, and the
monomials with pole order <= m form a basis of L(mP).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .curves import (CurveSpec, FAMILY_I, FAMILY_II, FAMILY_III, HERMITIAN,
                     INTERMEDIATE_CENTER, INTERMEDIATE_NONCENTER, CurveError,
                     family_genus)
from .numsg import NumericalSemigroup, TelescopicReport, is_telescopic

_CAB_FAMILIES = (HERMITIAN, INTERMEDIATE_CENTER, FAMILY_I)


@dataclass(frozen=True)
class CabShape:
    a: int       # pole order of x at P_inf
    b: int       # pole order of y at P_inf
    deg_y: int   # y-degree of the plane model (= a)

    def __post_init__(self):
        if gcd(self.a, self.b) != 1:
            raise CurveError(f"pole orders {self.a}, {self.b} are not coprime")
        if self.a != self.deg_y:
            raise CurveError("C_ab normalization requires a = deg_y")


@dataclass(frozen=True)
class MonomialBasis:
    m: int
    monomials: tuple[tuple[int, int], ...]
    pole_orders: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"m": self.m,
                "monomials": [list(mn) for mn in self.monomials],
                "pole_orders": list(self.pole_orders)}


@dataclass(frozen=True)
class PartialMembership:
    """Asserted (unverified) Weierstrass non-gaps for the families whose
    plane models are not in C_ab position here.  FamilyIII carries the two
    published lists, which disagree; neither is treated as an invariant."""

    family: str
    members: tuple[int, ...]
    alternate_members: tuple[int, ...] | None
    status: str = "asserted, unverified"


def cab_parameters(spec: CurveSpec) -> CabShape:
    q, p, d = spec.q, spec.p, spec.d
    if spec.family == HERMITIAN:
        return CabShape(q, q + 1, q)
    if spec.family == INTERMEDIATE_CENTER:
        return CabShape(q // p, q + 1, q // p)
    if spec.family == FAMILY_I:
        return CabShape(q // p, (q + 1) // d, q // p)
    raise CurveError(f"{spec.family} has no C_ab plane model in this artifact")


def weierstrass_semigroup(spec: CurveSpec):
    """Weierstrass semigroup at P_inf where determined (the C_ab families),
    otherwise the published membership assertions."""
    if spec.family in _CAB_FAMILIES:
        shape = cab_parameters(spec)
        return NumericalSemigroup([shape.a, shape.b])
    q, p, d = spec.q, spec.p, spec.d
    if spec.family == FAMILY_II:
        return PartialMembership(spec.family, (q // p, (q - 1) // d), None)
    if spec.family == FAMILY_III:
        return PartialMembership(spec.family, (2 * (q - 1) // d, q - 1),
                                 ((q - 1) // d, q // p))
    if spec.family == INTERMEDIATE_NONCENTER:
        return PartialMembership(spec.family, (2 * q // p, q, q + 1), None)
    raise CurveError(f"unknown family {spec.family!r}")


def pole_order(i: int, j: int, shape: CabShape) -> int:
    if i < 0 or j < 0:
        raise CurveError("exponents must be non-negative")
    if j >= shape.deg_y:
        raise CurveError(f"y-exponent {j} >= deg_y {shape.deg_y}: reduce "
                         f"against the model first")
    return i * shape.a + j * shape.b


def rr_basis(spec: CurveSpec, m: int) -> MonomialBasis:
    """Monomials x^i y^j with j < deg_y and pole order <= m, sorted by pole
    order; their count equals the number of semigroup non-gaps <= m."""
    if m < 0:
        raise CurveError("pole bound must be non-negative")
    shape = cab_parameters(spec)
    entries = []
    for j in range(min(shape.deg_y, m // shape.b + 1)):
        rem = m - j * shape.b
        for i in range(rem // shape.a + 1):
            entries.append((i * shape.a + j * shape.b, (i, j)))
    entries.sort()
    orders = tuple(e[0] for e in entries)
    if len(set(orders)) != len(orders):
        raise CurveError("pole orders collide; C_ab normalization broken")
    return MonomialBasis(m, tuple(e[1] for e in entries), orders)


def noncenter_telescopic_sequence(p: int, h: int) -> TelescopicReport:
    """The sequence (2q/p, q, q+1) attached to the degree-p subcover whose
    genus is (q/p)(q-1)/2; its closed-form numbers reproduce that genus."""
    q = p ** h
    rep = is_telescopic((2 * q // p, q, q + 1))
    if not rep.telescopic:
        raise CurveError("(2q/p, q, q+1) failed the telescopic test")
    expected = family_genus(INTERMEDIATE_NONCENTER, p, h, None)
    if rep.g != expected:
        raise CurveError(
            f"telescopic genus {rep.g} does not match the subcover genus "
            f"{expected}")
    return rep
