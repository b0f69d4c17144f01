import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uniserial.errors import DegreeMismatch, ElementNotInGroup, NotSubgroup
from uniserial.perm import (
    PermGroup,
    Permutation,
    compose,
    coset_action,
    direct_product,
)


def brute_elements(group):
    """All elements of a small group by breadth-first closure."""
    ident = group.identity()
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in group.generators:
                c = compose(h, g)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


class TestPermutation:
    def test_compose_follows_left_to_right(self):
        # (0 1 2) then (0 1) is (1 2)
        p = Permutation.parse("(0,1,2)", 3)
        q = Permutation.parse("(0,1)", 3)
        assert compose(p, q) == Permutation.parse("(1,2)", 3)

    def test_involution_squares_to_identity(self):
        p = Permutation.parse("(0,1)", 2)
        assert compose(p, p).is_identity()

    def test_identity_law(self):
        p = Permutation.parse("(0,3)(1,2)", 4)
        assert compose(p, Permutation.identity(4)) == p
        assert compose(Permutation.identity(4), p) == p

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            compose(Permutation.identity(3), Permutation.identity(4))

    def test_not_bijection_rejected(self):
        with pytest.raises(ValueError):
            Permutation([0, 0, 1], 3)

    def test_parse_spaces_and_commas(self):
        assert Permutation.parse("(0 1 2)(3,4)", 5) == Permutation.from_cycles(
            [[0, 1, 2], [3, 4]], 5
        )

    def test_order_and_cycle_type(self):
        p = Permutation.parse("(0,1,2)(3,4)", 5)
        assert p.order() == 6
        assert p.cycle_type() == (3, 2)

    @given(st.permutations(list(range(7))))
    @settings(max_examples=60, deadline=None)
    def test_inverse_composes_to_identity(self, images):
        p = Permutation(images, 7)
        assert compose(p, p.inverse()).is_identity()
        assert compose(p.inverse(), p).is_identity()

    @given(
        st.permutations(list(range(6))),
        st.permutations(list(range(6))),
        st.permutations(list(range(6))),
    )
    @settings(max_examples=60, deadline=None)
    def test_associativity(self, a, b, c):
        pa, pb, pc = (Permutation(x, 6) for x in (a, b, c))
        left = compose(compose(pa, pb), pc)
        right = compose(pa, compose(pb, pc))
        assert left == right


class TestChain:
    def test_s4_order(self):
        g = PermGroup(4, [Permutation.parse("(0,1)", 4), Permutation.parse("(0,1,2,3)", 4)])
        assert g.order() == 24

    def test_a5_order(self):
        g = PermGroup(5, [Permutation.parse("(0,1,2,3,4)", 5), Permutation.parse("(0,1,2)", 5)])
        assert g.order() == 60

    def test_trivial_group(self):
        assert PermGroup.trivial(5).order() == 1

    @pytest.mark.parametrize(
        "group,expect",
        [
            (PermGroup.symmetric(6), 720),
            (PermGroup.alternating(6), 360),
            (PermGroup.cyclic(12), 12),
            (PermGroup.dihedral(9), 18),
        ],
    )
    def test_known_orders(self, group, expect):
        assert group.order() == expect

    @pytest.mark.parametrize(
        "group",
        [
            PermGroup.symmetric(4),
            PermGroup.alternating(5),
            PermGroup.dihedral(8),
            PermGroup.cyclic(9),
            direct_product(PermGroup.symmetric(3), PermGroup.cyclic(4)),
        ],
    )
    def test_order_matches_brute_enumeration(self, group):
        assert group.order() == len(brute_elements(group))

    def test_membership(self):
        a5 = PermGroup.alternating(5)
        assert a5.contains(Permutation.parse("(0,1,2)", 5))
        assert not a5.contains(Permutation.parse("(0,1)", 5))
        for g in a5.generators:
            assert a5.contains(g)

    def test_sifting_soundness_on_random_words(self):
        rng = random.Random(7)
        g = PermGroup.symmetric(7)
        for _ in range(100):
            word = g.identity()
            for _ in range(rng.randrange(1, 12)):
                word = compose(word, rng.choice(g.generators))
            assert g.contains(word)

    def test_uniform_sampling_c2(self):
        rng = random.Random(123)
        c2 = PermGroup.cyclic(2)
        hits = sum(c2.random_element(rng).is_identity() for _ in range(100_000))
        assert 0.49 <= hits / 100_000 <= 0.51

    def test_uniform_sampling_s3_within_5_sigma(self):
        rng = random.Random(5)
        s3 = PermGroup.symmetric(3)
        counts = {}
        n = 100_000
        for _ in range(n):
            el = s3.random_element(rng)
            counts[el] = counts.get(el, 0) + 1
        sigma = math.sqrt(n * (1 / 6) * (5 / 6))
        assert len(counts) == 6
        for v in counts.values():
            assert abs(v - n / 6) <= 5 * sigma

    def test_trivial_group_sampling(self):
        rng = random.Random(0)
        t = PermGroup.trivial(4)
        assert t.random_element(rng).is_identity()


class TestStructuralPrimitives:
    def test_normal_closure_klein(self):
        s4 = PermGroup.symmetric(4)
        v4 = s4.normal_closure([Permutation.parse("(0,1)(2,3)", 4)])
        assert v4.order() == 4

    def test_normal_closure_simple(self):
        a5 = PermGroup.alternating(5)
        assert a5.normal_closure([Permutation.parse("(0,1,2)", 5)]).order() == 60

    def test_normal_closure_empty(self):
        assert PermGroup.symmetric(4).normal_closure([]).order() == 1

    def test_normal_closure_rejects_outsiders(self):
        with pytest.raises(ElementNotInGroup):
            PermGroup.alternating(5).normal_closure([Permutation.parse("(0,1)", 5)])

    def test_derived_subgroups(self):
        s4 = PermGroup.symmetric(4)
        d = s4.derived_subgroup()
        assert d.order() == 12
        assert d.equals(PermGroup.alternating(4))
        assert PermGroup.alternating(5).is_perfect()
        assert PermGroup.cyclic(6).derived_subgroup().order() == 1

    def test_perfect_residual(self):
        s5 = PermGroup.symmetric(5)
        assert s5.perfect_residual().order() == 60

    def test_point_stabilizer(self):
        a5 = PermGroup.alternating(5)
        stab = a5.point_stabilizer(0)
        assert stab.order() == 12
        assert all(g.images[0] == 0 for g in stab.generators)


class TestCosetAction:
    def test_index_two_quotient(self):
        s4 = PermGroup.symmetric(4)
        a4 = PermGroup.alternating(4)
        image, hom = coset_action(s4, a4)
        assert image.order() == 2
        assert image.degree == 2
        assert hom.kernel_order() == 12

    def test_natural_action_recovered(self):
        a5 = PermGroup.alternating(5)
        stab = a5.point_stabilizer(0)
        image, _ = coset_action(a5, stab)
        assert image.order() == 60
        assert image.degree == 5

    def test_whole_group_gives_trivial_image(self):
        g = PermGroup.symmetric(4)
        image, _ = coset_action(g, g)
        assert image.order() == 1

    def test_kernel_times_image_for_normal_subgroup(self):
        s4 = PermGroup.symmetric(4)
        v4 = s4.normal_closure([Permutation.parse("(0,1)(2,3)", 4)])
        image, hom = coset_action(s4, v4)
        assert image.order() * v4.order() == s4.order()
        assert image.order() == 6

    def test_not_subgroup_raises(self):
        with pytest.raises(NotSubgroup):
            coset_action(PermGroup.alternating(5), PermGroup.symmetric(5))

    def test_preimage_roundtrip(self):
        s4 = PermGroup.symmetric(4)
        v4 = s4.normal_closure([Permutation.parse("(0,1)(2,3)", 4)])
        image, hom = coset_action(s4, v4)
        rng = random.Random(11)
        for _ in range(20):
            q = image.random_element(rng)
            src = hom.preimage(q)
            assert s4.contains(src)
            assert hom.apply(src) == q

    def test_apply_is_homomorphism(self):
        s4 = PermGroup.symmetric(4)
        v4 = s4.normal_closure([Permutation.parse("(0,1)(2,3)", 4)])
        _, hom = coset_action(s4, v4)
        rng = random.Random(3)
        for _ in range(15):
            a = s4.random_element(rng)
            b = s4.random_element(rng)
            assert hom.apply(compose(a, b)) == compose(hom.apply(a), hom.apply(b))


class TestGroupFiles:
    def test_roundtrip(self, tmp_path):
        g = PermGroup.symmetric(4)
        path = tmp_path / "s4.json"
        path.write_text(
            '{"degree": 4, "generators": ["(0,1)", [1, 2, 3, 0]]}', encoding="utf-8"
        )
        loaded = PermGroup.from_file(path)
        assert loaded.order() == 24
        d = loaded.to_dict()
        assert d["degree"] == 4
        assert all(isinstance(row, list) for row in d["generators"])

    def test_direct_product_orders(self):
        g = direct_product(PermGroup.alternating(5), PermGroup.alternating(5))
        assert g.order() == 3600
