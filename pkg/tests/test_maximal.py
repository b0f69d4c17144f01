from fractions import Fraction

import numpy as np
import pytest

from uniserial import corpus
from uniserial.errors import NotUniqueMinimalNormal
from uniserial.intervals import RatInterval
from uniserial.lattice import lattice_of, table_of
from uniserial.maximal import (
    classify_maximal_projection,
    complement_classes,
    maximal_avoiding,
    maximal_subgroups,
    subgroup_classes,
    verify_zeta_bound,
    zeta,
    zeta_by_classes,
)
from uniserial.perm import Permutation
from uniserial.structure import frattini, minimal_normal_subgroups, normal_subgroups

from oracles import all_subgroups


def v4_of(s4):
    return s4.normal_closure([Permutation.parse("(0,1)(2,3)", 4)])


class TestMaximalSubgroups:
    def test_a5_classes(self):
        got = {(c.order, c.index, c.class_length) for c in maximal_subgroups(corpus.load("a5"))}
        assert got == {(12, 5, 5), (10, 6, 6), (6, 10, 10)}

    def test_s4_classes(self):
        got = {(c.order, c.index) for c in maximal_subgroups(corpus.load("s4"))}
        assert got == {(12, 2), (8, 3), (6, 4)}

    def test_c4_single(self):
        got = [(c.order, c.index) for c in maximal_subgroups(corpus.load("c4"))]
        assert got == [(2, 2)]

    def test_subgroup_class_counts(self):
        assert len(subgroup_classes(corpus.load("s4"))) == 11
        assert len(subgroup_classes(corpus.load("a5"))) == 9
        assert len(subgroup_classes(corpus.load("c6"))) == 4

    def test_total_count_matches_bruteforce(self):
        for name in ("s4", "a5", "d12", "sl23"):
            group = corpus.load(name)
            lat = lattice_of(group)
            assert lat.total_subgroups() == len(all_subgroups(lat.table))


class TestMaximalAvoiding:
    def test_s4_v4(self):
        s4 = corpus.load("s4")
        classes = maximal_avoiding(s4, v4_of(s4))
        assert [(c.order, c.index) for c in classes] == [(6, 4)]

    def test_whole_group(self):
        a5 = corpus.load("a5")
        assert len(maximal_avoiding(a5, a5)) == 3

    def test_frattini_kernel_empty(self):
        c4 = corpus.load("c4")
        c2 = c4.normal_closure([Permutation.parse("(0,2)(1,3)", 4)])
        assert maximal_avoiding(c4, c2) == []

    def test_product_covers_group(self):
        # maximality plus avoidance forces MN = G
        for name in ("s4", "s5", "sl25"):
            group = corpus.load(name)
            for normal in normal_subgroups(group).members:
                if normal.order() == 1:
                    continue
                for cls in maximal_avoiding(group, normal):
                    m_order = cls.order
                    table = table_of(group)
                    m_ids = np.sort(cls.rep_ids)
                    from uniserial.structure import brute_elements

                    n_ids = np.sort(
                        table.lookup_rows(
                            np.stack([e.images for e in brute_elements(normal)])
                        )
                    )
                    inter = np.intersect1d(m_ids, n_ids).size
                    assert m_order * normal.order() // inter == group.order()

    def test_self_normalizing_when_socle_unique(self):
        for name in ("a5", "s5", "s6", "s4", "psl27"):
            group = corpus.load(name)
            minimals = minimal_normal_subgroups(group)
            if len(minimals) != 1:
                continue
            for cls in maximal_avoiding(group, minimals[0]):
                assert cls.class_length == cls.index, name


class TestZeta:
    def test_a5_value(self):
        res = zeta(corpus.load("a5"), corpus.load("a5"), 2)
        assert res.value == Fraction(7, 15)
        assert res.terms == [(5, 5), (6, 6), (10, 10)]

    def test_c2_powers(self):
        c2 = corpus.load("c2")
        assert zeta(c2, c2, 2).value == Fraction(1, 4)
        assert zeta(c2, c2, 5).value == Fraction(1, 32)

    def test_frattini_normal_gives_zero(self):
        c4 = corpus.load("c4")
        c2 = c4.normal_closure([Permutation.parse("(0,2)(1,3)", 4)])
        assert zeta(c4, c2, 2).value == 0

    def test_s4_v4(self):
        s4 = corpus.load("s4")
        assert zeta(s4, v4_of(s4), 2).value == Fraction(1, 4)

    def test_wreath_value(self):
        w = corpus.wreath_a5_c2()
        socle = w.derived_subgroup()
        res = zeta(w, socle, 2)
        assert res.value == Fraction(1, 9)
        assert res.terms == [(25, 25), (36, 36), (60, 120), (100, 100)]

    def test_rational_exponent_interval(self):
        res = zeta(corpus.load("a5"), corpus.load("a5"), Fraction(5, 2))
        assert isinstance(res.value, RatInterval)
        # between the integer-exponent values at 2 and 3
        assert Fraction(7, 15) > res.value.hi > res.value.lo > zeta(
            corpus.load("a5"), corpus.load("a5"), 3
        ).value

    def test_order_form_variant_reported(self):
        res = zeta(corpus.load("a5"), corpus.load("a5"), 2)
        assert res.order_form_value == Fraction(21, 60**2)

    def test_class_form_matches(self):
        s4 = corpus.load("s4")
        v4 = v4_of(s4)
        for s in (2, 3):
            assert zeta(s4, v4, s).value == zeta_by_classes(s4, v4, s).value

    def test_class_form_needs_unique_socle(self):
        c6 = corpus.load("c6")
        with pytest.raises(NotUniqueMinimalNormal):
            zeta_by_classes(c6, c6, 2)

    def test_prime_cyclic_is_the_known_exception(self):
        # the lone maximal subgroup of a prime-order group is normal, so the
        # class form genuinely differs there (1/p^s versus 1/p^(s-1))
        c3 = corpus.load("c3")
        assert zeta(c3, c3, 2).value == Fraction(1, 9)
        assert zeta_by_classes(c3, c3, 2).value == Fraction(1, 3)


class TestZetaBound:
    @pytest.mark.parametrize("name", ["a5", "s4", "a4", "s5", "psl27"])
    def test_instances(self, name):
        rep = verify_zeta_bound(corpus.load(name), 2)
        assert rep["passed"]

    def test_requires_unique_socle(self):
        with pytest.raises(NotUniqueMinimalNormal):
            verify_zeta_bound(corpus.load("c6"), 2)

    def test_values_s4(self):
        rep = verify_zeta_bound(corpus.load("s4"), 2)
        assert rep["socle_type"] == "C2" and rep["width"] == 2
        assert rep["iota"] == Fraction(3, 2)
        assert rep["zeta"].value == Fraction(1, 4)
        assert Fraction(1, 2) in rep["bound"]


class TestComplements:
    def test_counts(self):
        s4 = corpus.load("s4")
        assert complement_classes(s4, v4_of(s4)) == 1
        a4 = corpus.load("a4")
        assert complement_classes(a4, minimal_normal_subgroups(a4)[0]) == 1

    def test_requires_unique_abelian(self):
        a5 = corpus.load("a5")
        with pytest.raises(Exception):
            complement_classes(a5, a5)


class TestProjectionCases:
    def test_wreath_diagonal_is_full(self):
        w = corpus.wreath_a5_c2()
        socle = w.derived_subgroup()
        diag = next(c for c in maximal_avoiding(w, socle) if c.index == 60)
        assert classify_maximal_projection(w, socle, diag.representative) == 1

    def test_wreath_product_type_is_proper(self):
        w = corpus.wreath_a5_c2()
        socle = w.derived_subgroup()
        prod = next(c for c in maximal_avoiding(w, socle) if c.index == 25)
        assert classify_maximal_projection(w, socle, prod.representative) == 2

    def test_almost_simple_always_proper(self):
        s5 = corpus.load("s5")
        socle = s5.derived_subgroup()
        for cls in maximal_avoiding(s5, socle):
            assert classify_maximal_projection(s5, socle, cls.representative) == 2


class TestFrattiniConsistency:
    def test_intersection_of_maximals(self):
        for name in ("s4", "c4", "q8", "sl25", "d16"):
            group = corpus.load(name)
            lat = lattice_of(group)
            mask = np.ones(lat.table.m, dtype=bool)
            for idx, cls in enumerate(lat.classes):
                if not cls.is_maximal:
                    continue
                for conj in lat.conjugates_of(idx):
                    inside = np.zeros(lat.table.m, dtype=bool)
                    inside[conj] = True
                    mask &= inside
            assert frattini(group).order() == int(mask.sum())
