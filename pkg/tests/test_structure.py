import numpy as np
import pytest

from uniserial import corpus
from uniserial.errors import NotNormal, NotUniserial
from uniserial.lattice import table_of
from uniserial.perm import PermGroup, Permutation, direct_product
from uniserial.structure import (
    brute_elements,
    centralizer_in_quotient_trivial,
    chief_series,
    frattini,
    has_complement,
    identify_chief_factor,
    identify_factor_group,
    is_uniserial,
    minimal_normal_subgroups,
    normal_subgroups,
    quotient,
    width_sequence,
)

from oracles import all_subgroups, normal_subgroups_brute


def v4_in(s4):
    return s4.normal_closure([Permutation.parse("(0,1)(2,3)", 4)])


class TestNormalSubgroups:
    def test_s4(self):
        ns = normal_subgroups(corpus.load("s4"))
        assert ns.orders() == [1, 4, 12, 24]
        assert ns.is_chain()

    def test_a5_simple(self):
        assert normal_subgroups(corpus.load("a5")).orders() == [1, 60]

    def test_klein(self):
        assert len(normal_subgroups(corpus.load("v4")).members) == 5

    @pytest.mark.parametrize(
        "name", ["s4", "d8", "q8", "c12", "a4", "s3xs3", "sl23", "f20", "d16", "q16"]
    )
    def test_against_bruteforce(self, name):
        group = corpus.load(name)
        table = table_of(group)
        brute = sorted(len(s) for s in normal_subgroups_brute(table))
        assert sorted(normal_subgroups(group).orders()) == brute

    def test_minimal_normals(self):
        assert [m.order() for m in minimal_normal_subgroups(corpus.load("s4"))] == [4]
        assert sorted(m.order() for m in minimal_normal_subgroups(corpus.load("c6"))) == [2, 3]
        prod = direct_product(corpus.load("a5"), corpus.load("a5"))
        minimals = minimal_normal_subgroups(prod)
        assert sorted(m.order() for m in minimals) == [60, 60]

    def test_trivial_has_none(self):
        with pytest.raises(ValueError):
            minimal_normal_subgroups(PermGroup.trivial(3))


class TestChiefSeries:
    def test_s4_factors(self):
        series = chief_series(corpus.load("s4"))
        assert [f.describe() for f in series.factors] == ["C2", "C3", "C2^2"]
        assert series.unique

    def test_factor_orders_multiply(self):
        for name in ("s4", "a5", "s6", "d12", "q16", "sl25"):
            group = corpus.load(name)
            series = chief_series(group)
            prod = 1
            for f in series.factors:
                prod *= f.order
            assert prod == group.order()

    def test_boundaries_nest(self):
        series = chief_series(corpus.load("s6"))
        for f in series.factors:
            assert f.lower.is_subgroup_of(f.upper)
            assert f.upper.order() == f.lower.order() * f.order

    def test_no_intermediate_normal_subgroup(self):
        group = corpus.load("s4")
        series = chief_series(group)
        all_normals = normal_subgroups(group).members
        for f in series.factors:
            between = [
                n
                for n in all_normals
                if f.lower.order() < n.order() < f.upper.order()
                and f.lower.is_subgroup_of(n)
                and n.is_subgroup_of(f.upper)
            ]
            assert between == []

    def test_generator_order_invariance(self):
        base = corpus.load("s4")
        shuffled = PermGroup(4, list(reversed(base.generators)))
        a = [(f.type_name(), f.width, f.is_frattini) for f in chief_series(base).factors]
        b = [(f.type_name(), f.width, f.is_frattini) for f in chief_series(shuffled).factors]
        assert a == b

    def test_wreath_factors(self):
        series = chief_series(corpus.wreath_a5_c2())
        assert [f.describe() for f in series.factors] == ["C2", "A5^2"]


class TestUniseriality:
    @pytest.mark.parametrize(
        "name,expect",
        [
            ("a5", True),
            ("s4", True),
            ("v4", False),
            ("c6", False),
            ("q8", False),  # three incomparable cyclic subgroups of order 4
            ("d8", False),  # two Klein subgroups beside the cyclic one
            ("sl25", True),
            ("c12", False),
            ("s5", True),
            ("psl27", True),
            ("s3xs3", False),
        ],
    )
    def test_small_cases(self, name, expect):
        assert is_uniserial(corpus.load(name)) is expect

    @pytest.mark.parametrize("name", ["s4", "a4", "d8", "q8", "c12", "sl23", "f20"])
    def test_matches_chain_condition(self, name):
        group = corpus.load(name)
        assert is_uniserial(group) == normal_subgroups(group).is_chain()

    def test_width_sequence_s4(self):
        ws = width_sequence(corpus.load("s4"))
        assert [(str(d), w, fl) for d, w, fl in ws] == [
            ("C2", 1, False),
            ("C3", 1, False),
            ("C2", 2, False),
        ]

    def test_width_sequence_rejects_nonuniserial(self):
        with pytest.raises(NotUniserial):
            width_sequence(corpus.load("c6"))


class TestQuotient:
    def test_s4_mod_v4(self):
        s4 = corpus.load("s4")
        image, hom = quotient(s4, v4_in(s4))
        assert image.order() == 6
        assert hom.kernel_order() == 4

    def test_whole_and_trivial(self):
        g = corpus.load("a5")
        img, _ = quotient(g, g)
        assert img.order() == 1
        img2, _ = quotient(g, PermGroup.trivial(5))
        assert img2.order() == 60

    def test_not_normal_rejected(self):
        a5 = corpus.load("a5")
        a4 = a5.point_stabilizer(4)
        with pytest.raises(NotNormal):
            quotient(a5, a4)

    def test_image_times_kernel(self):
        for name in ("s4", "s6", "sl25", "d12"):
            group = corpus.load(name)
            for n in normal_subgroups(group).members:
                image, _ = quotient(group, n)
                assert image.order() * n.order() == group.order()


class TestFrattini:
    def test_values(self):
        assert frattini(corpus.load("s4")).order() == 1
        assert frattini(corpus.load("c4")).order() == 2
        assert frattini(corpus.load("sl25")).order() == 2
        assert frattini(corpus.load("q8")).order() == 2
        assert frattini(corpus.load("c12")).order() == 2

    def test_matches_bruteforce_intersection(self):
        group = corpus.load("d16")
        table = table_of(group)
        subs = all_subgroups(table)
        maximal = [
            s
            for s in subs
            if len(s) < table.m
            and not any(len(t) > len(s) and t > s and len(t) < table.m for t in subs)
        ]
        expect = set(range(table.m))
        for s in maximal:
            expect &= s
        assert frattini(group).order() == len(expect)


class TestIdentification:
    def test_abelian_factor(self):
        s4 = corpus.load("s4")
        desc, width = identify_chief_factor(v4_in(s4), PermGroup.trivial(4))
        assert str(desc) == "C2" and width == 2

    def test_simple_factor(self):
        desc, width = identify_chief_factor(corpus.load("a5"), PermGroup.trivial(5))
        assert str(desc) == "A5" and width == 1

    def test_socle_of_wreath(self):
        w = corpus.wreath_a5_c2()
        socle = w.derived_subgroup()
        desc, width = identify_factor_group(socle)
        assert str(desc) == "A5" and width == 2

    def test_order_20160_disambiguation(self):
        a8 = PermGroup.alternating(8)
        desc, width = identify_factor_group(a8)
        assert str(desc) == "A8" and width == 1
        psl34 = corpus.load("psl34")
        desc2, width2 = identify_factor_group(psl34)
        assert str(desc2) == "PSL3(4)" and width2 == 1


class TestBackgroundPredicates:
    """The complemented/faithful/Frattini-step facts as executable checks."""

    def corpus_with_unique_abelian_socle(self):
        for name in ("s4", "a4", "f20", "d10", "s3", "c7c3"):
            group = corpus.load(name)
            minimals = minimal_normal_subgroups(group)
            if len(minimals) == 1 and minimals[0].is_abelian():
                yield name, group, minimals[0]

    def test_faithful_conjugation_when_frattini_trivial(self):
        for name, group, socle in self.corpus_with_unique_abelian_socle():
            if frattini(group).order() == 1:
                assert centralizer_in_quotient_trivial(group, socle), name

    def test_complement_iff_not_in_frattini(self):
        for name in ("s4", "a4", "c4", "q8", "d8", "c12", "f20", "sl23"):
            group = corpus.load(name)
            frat = frattini(group)
            for normal in normal_subgroups(group).members:
                if normal.order() == 1 or not normal.is_abelian():
                    continue
                if normal.order() not in {m.order() for m in minimal_normal_subgroups(group)}:
                    continue
                if not any(normal.equals(m) for m in minimal_normal_subgroups(group)):
                    continue
                inside_frattini = normal.is_subgroup_of(frat)
                assert has_complement(group, normal) == (not inside_frattini), name

    def test_frattini_equals_deepest_trivial_frattini_quotient(self):
        # on uniserial corpus groups, Frat(G) is the largest series member
        # whose quotient has trivial Frattini subgroup
        for name in ("s4", "q8", "c4", "sl25", "q16", "c9"):
            group = corpus.load(name)
            if not is_uniserial(group):
                continue
            series = chief_series(group)
            frat = frattini(group)
            # members G_j for j = 1..l, top-down; the largest valid j wins
            members = [f.lower for f in series.factors]
            best = None
            for member in members:
                image, _ = quotient(group, member)
                if frattini(image).order() == 1:
                    best = member
            assert best is not None and best.equals(frat), name


class TestWidthComparison:
    def test_abelian_over_abelian(self):
        from uniserial.structure import socle_width_report

        rep = socle_width_report(corpus.load("s4"))
        assert rep["applicable"] and rep["case"] == "abelian-over-abelian"
        assert rep["holds"] and (rep["m"], rep["n"]) == (1, 2)

    def test_abelian_over_nonabelian(self):
        from uniserial.structure import socle_width_report

        rep = socle_width_report(corpus.wreath_a5_c2())
        assert rep["case"] == "abelian-over-nonabelian" and rep["holds"]

    def test_nonabelian_over_abelian_uses_degree_table(self):
        from uniserial.constructions import (
            Subspace,
            affine_group,
            permutation_module,
            quotient_module,
            restrict_to_submodule,
            rref_mod,
            solve_in_row_space,
        )
        from uniserial.structure import socle_width_report

        module, sum_zero, constants = permutation_module(5, 5)
        sub = restrict_to_submodule(module, sum_zero)
        coords = solve_in_row_space(sum_zero.basis, constants.basis[0], 5)
        inner = Subspace(5, 4, rref_mod(np.array([coords]), 5))
        quot = quotient_module(sub, inner)
        g = affine_group(5, 3, quot.action)
        assert g.order() == 15000
        rep = socle_width_report(g)
        assert rep["case"] == "nonabelian-over-abelian"
        assert rep["bound"] == 2 and rep["n"] == 3 and rep["holds"]

    def test_inapplicable_with_frattini(self):
        from uniserial.structure import socle_width_report

        rep = socle_width_report(corpus.load("c4"))
        assert not rep["applicable"]


class TestBigGroupPaths:
    def test_wreath_s3_uniserial(self):
        w3 = corpus.wreath_a5_s3()
        assert w3.order() == 1_296_000
        series = chief_series(w3)
        assert series.unique
        assert [f.describe() for f in series.factors] == ["C2", "C3", "A5^3"]

    def test_normal_subgroups_of_big_uniserial(self):
        ns = normal_subgroups(corpus.wreath_a5_s3())
        assert ns.orders() == [1, 216000, 648000, 1296000]
