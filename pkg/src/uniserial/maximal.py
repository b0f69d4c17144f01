"""Maximal subgroups, the avoiding sets, and the zeta function over them.

For a normal subgroup N the relevant maximal subgroups are those not
containing N; the zeta value at s sums index^(-s) over all of them, which
collapses to a sum over conjugacy-class representatives at exponent s-1
whenever N is the unique minimal normal subgroup (such maximals are
self-normalizing).  Integer exponents are evaluated in exact rationals;
other rational exponents yield certified intervals.

The definition display sometimes quoted for the second form puts the order
of N in the denominator; summing m_n/n^s over indices n is the reading
coherent with the first form and is what this module computes, with the
order-denominator variant reported alongside for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .alpha import alpha as alpha_of
from .errors import CapExceeded, CaseInconsistency, NotNormal, NotUniqueMinimalNormal
from .intervals import RatInterval
from .lattice import DEFAULT_LATTICE_CAP, lattice_of
from .perm import PermGroup
from .structure import (
    _socle_components,
    _table_feasible,
    identify_factor_group,
    minimal_normal_subgroups,
)


def subgroup_classes(group: PermGroup, cap: int = DEFAULT_LATTICE_CAP):
    """All subgroups up to conjugacy."""
    return lattice_of(group, cap=cap).subgroup_classes()


def maximal_subgroups(group: PermGroup, cap: int = DEFAULT_LATTICE_CAP):
    """Conjugacy classes of maximal subgroups, sorted by index."""
    return lattice_of(group, cap=cap).maximal_classes()


def _check_normal(group: PermGroup, normal: PermGroup):
    if not normal.is_normal_in(group):
        raise NotNormal("the avoided subgroup must be normal")


def maximal_avoiding(group: PermGroup, normal: PermGroup, cap: int = DEFAULT_LATTICE_CAP):
    """Classes of maximal subgroups not containing N.

    Containment of a normal subgroup is a class property, so filtering the
    representatives settles the whole class.
    """
    _check_normal(group, normal)
    out = []
    for cls in maximal_subgroups(group, cap=cap):
        if not all(cls.representative.contains(g) for g in normal.generators):
            out.append(cls)
    return out


@dataclass
class ZetaResult:
    """Value and terms of the maximal-subgroup zeta sum."""

    value: Fraction | RatInterval
    terms: list[tuple[int, int]]          # (index, multiplicity), sorted
    s: Fraction
    n_width: int | None = None            # width of N = T^n when known
    iota: Fraction | None = None          # 3/2 for abelian T, 1 otherwise
    order_form_value: Fraction | RatInterval | None = None  # m_n / |N|^s reading

    def as_float(self) -> float:
        return float(self.value)


def _power_sum(terms, s: Fraction, weight=lambda mult, index: mult):
    """Sum of weight/index^s over the terms, exact or interval."""
    s = Fraction(s)
    if s.denominator == 1:
        total = Fraction(0)
        for index, mult in terms:
            total += Fraction(weight(mult, index), index ** s.numerator)
        return total
    total = RatInterval.exact(0)
    for index, mult in terms:
        total = total + RatInterval.exact(index).pow_rational(-s) * weight(mult, index)
    return total


def zeta(group: PermGroup, normal: PermGroup, s, cap: int = DEFAULT_LATTICE_CAP) -> ZetaResult:
    """Sum of |G:M|^(-s) over maximal subgroups M not containing N."""
    s = Fraction(s)
    classes = maximal_avoiding(group, normal, cap=cap)
    by_index: dict[int, int] = {}
    for cls in classes:
        by_index[cls.index] = by_index.get(cls.index, 0) + cls.class_length
    terms = sorted(by_index.items())
    value = _power_sum(terms, s)
    n_order = normal.order()
    count = sum(m for _, m in terms)
    if s.denominator == 1:
        order_form = Fraction(count, n_order ** s.numerator)
    else:
        order_form = RatInterval.exact(n_order).pow_rational(-s) * count
    return ZetaResult(value=value, terms=terms, s=s, order_form_value=order_form)


def _unique_minimal_normal(group: PermGroup) -> PermGroup:
    minimals = minimal_normal_subgroups(group)
    if len(minimals) != 1:
        raise NotUniqueMinimalNormal(
            f"group has {len(minimals)} minimal normal subgroups"
        )
    return minimals[0]


def zeta_by_classes(group: PermGroup, normal: PermGroup, s,
                    cap: int = DEFAULT_LATTICE_CAP) -> ZetaResult:
    """The class form: sum of |G:M|^(-(s-1)) over class representatives.

    Valid when N is the unique minimal normal subgroup, where every member of
    the avoiding set is self-normalizing, so class lengths equal indices.
    """
    s = Fraction(s)
    unique = _unique_minimal_normal(group)
    if not unique.equals(normal):
        raise NotUniqueMinimalNormal("N must be the unique minimal normal subgroup")
    _check_normal(group, normal)
    classes = maximal_avoiding(group, normal, cap=cap)
    terms = sorted((cls.index, cls.class_length) for cls in classes)
    value = _power_sum(terms, s - 1, weight=lambda mult, index: 1)
    return ZetaResult(value=value, terms=terms, s=s)


def verify_zeta_bound(group: PermGroup, d: int, cap: int = DEFAULT_LATTICE_CAP) -> dict:
    """Check zeta_{G,N}(d) < alpha(T)^(-n(d-iota)) for the unique minimal N = T^n."""
    if d < 2:
        raise ValueError("the bound needs an integer exponent of at least 2")
    normal = _unique_minimal_normal(group)
    desc, width = identify_factor_group(normal)
    if desc is None:
        raise CapExceeded("cannot identify the socle type")
    iota = Fraction(3, 2) if desc.kind == "cyclic" else Fraction(1)
    zres = zeta(group, normal, d, cap=cap)
    alpha_interval = alpha_of(desc)
    exponent = -width * (d - iota)
    bound = alpha_interval.pow_rational(exponent)
    value = zres.value
    passed = (
        value < bound.lo if isinstance(value, Fraction) else value.strictly_less_than(bound)
    )
    zres.n_width = width
    zres.iota = iota
    return {
        "zeta": zres,
        "socle_type": str(desc),
        "width": width,
        "iota": iota,
        "alpha": alpha_interval,
        "bound": bound,
        "passed": bool(passed),
    }


def complement_classes(group: PermGroup, normal: PermGroup,
                       cap: int = DEFAULT_LATTICE_CAP) -> int:
    """Number of classes of maximal subgroups avoiding an abelian minimal N.

    Asserts that every representative intersects N trivially (each one is a
    complement) and that the class count stays within the square root of |N|.
    """
    unique = _unique_minimal_normal(group)
    if not unique.equals(normal):
        raise NotUniqueMinimalNormal("N must be the unique minimal normal subgroup")
    if not normal.is_abelian():
        raise NotNormal("the complement count applies to abelian N")
    classes = maximal_avoiding(group, normal, cap=cap)
    lat = lattice_of(group, cap=cap)
    n_ids = np.sort(
        lat.table.lookup_rows(np.stack([p.images for p in _elements_of(normal)]))
    )
    ident = lat.table.identity_id
    for cls in classes:
        common = np.intersect1d(cls.rep_ids, n_ids)
        if common.size != 1 or common[0] != ident:
            raise AssertionError("an avoiding maximal subgroup meets N nontrivially")
        if cls.order * normal.order() != group.order():
            raise AssertionError("an avoiding maximal subgroup is not a complement")
    count = len(classes)
    if count**2 > normal.order():
        raise AssertionError("complement class count exceeds sqrt(|N|)")
    return count


def _elements_of(group: PermGroup):
    from .structure import brute_elements

    return brute_elements(group)


def classify_maximal_projection(group: PermGroup, normal: PermGroup,
                                maximal: PermGroup,
                                cap: int = DEFAULT_LATTICE_CAP) -> int:
    """Which of the three projection cases a maximal subgroup falls into.

    For nonabelian N = T_1 x ... x T_n and M maximal not containing N, the
    projections H_i of M∩N onto the factors are automorphic images of each
    other, so exactly one of three shapes occurs: every H_i = T_i (1), every
    1 < H_i < T_i (2), or every H_i = 1 (3).  Mixed shapes indicate a bug.
    """
    unique = _unique_minimal_normal(group)
    if not unique.equals(normal):
        raise NotUniqueMinimalNormal("N must be the unique minimal normal subgroup")
    if normal.is_abelian():
        raise NotUniqueMinimalNormal("the projection cases concern nonabelian N")
    if not maximal.is_subgroup_of(group) or all(
        maximal.contains(g) for g in normal.generators
    ):
        raise NotNormal("M must be a maximal subgroup not containing N")
    components, soc = _socle_components(group, normal)
    if soc.order() != normal.order():
        raise AssertionError("component decomposition failed")
    lat = lattice_of(group, cap=cap)
    table = lat.table
    m_ids = table.closure(
        table.lookup_rows(np.stack([g.images for g in maximal.generators]))
    )
    n_ids = table.closure(
        table.lookup_rows(np.stack([g.images for g in normal.generators]))
    )
    inter = np.intersect1d(m_ids, n_ids)
    inter_gens = table.generating_ids(inter) if inter.size > 1 else []
    comp_id_sets = []
    for comp in components:
        comp_id_sets.append(
            np.sort(table.closure(
                table.lookup_rows(np.stack([g.images for g in comp.generators]))
            ))
        )
    cases = set()
    for i, comp_ids in enumerate(comp_id_sets):
        others = [c for j, c in enumerate(comp_id_sets) if j != i]
        rest_gens: list[int] = []
        for c in others:
            rest_gens.extend(table.generating_ids(c))
        rest = table.closure(rest_gens) if rest_gens else np.asarray(
            [table.identity_id], dtype=np.int64
        )
        rest_mask = np.zeros(table.m, dtype=bool)
        rest_mask[rest] = True
        proj_gens = []
        for x in inter_gens:
            hit = None
            for t in comp_ids.tolist():
                if rest_mask[table.mult(int(x), int(table.inv[t]))]:
                    hit = t
                    break
            if hit is None:
                raise AssertionError("projection failed: element not in the product")
            proj_gens.append(hit)
        h_ids = table.closure(proj_gens) if proj_gens else np.asarray(
            [table.identity_id], dtype=np.int64
        )
        if h_ids.size == comp_ids.size:
            cases.add(1)
        elif h_ids.size == 1:
            cases.add(3)
        else:
            cases.add(2)
    if len(cases) != 1:
        raise CaseInconsistency(f"projections fall into distinct cases: {sorted(cases)}")
    return cases.pop()
