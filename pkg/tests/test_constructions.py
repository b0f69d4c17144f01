import random

import numpy as np
import pytest

from uniserial import corpus
from uniserial.constructions import (
    FpModule,
    Subspace,
    acts_faithfully_on_top,
    affine_group,
    all_submodules,
    build_affine_equality_group,
    build_wreath_quasisimple,
    is_uniserial_module,
    matrix_group_order,
    module_composition_series,
    permutation_module,
    psl3_4,
    restrict_to_submodule,
    rref_mod,
    sl2_5,
    spin,
    wreath_product,
)
from uniserial.errors import (
    BadCenter,
    CapExceeded,
    NoSuchPrime,
    NotTransitive,
    NotUniserialModule,
    SingularMatrix,
)
from uniserial.perm import PermGroup
from uniserial.structure import chief_series, is_uniserial


class TestWreath:
    def test_a5_wr_c2(self):
        w = wreath_product(corpus.load("a5"), PermGroup.cyclic(2))
        assert w.degree == 10
        assert w.order() == 7200

    def test_a5_wr_s3(self):
        w = wreath_product(corpus.load("a5"), PermGroup.symmetric(3))
        assert w.degree == 15
        assert w.order() == 60**3 * 6

    def test_trivial_top(self):
        t = corpus.load("a5")
        w = wreath_product(t, PermGroup.trivial(1))
        assert w.degree == 5 and w.order() == 60

    def test_intransitive_top_rejected(self):
        bad_top = PermGroup(3, [PermGroup.cyclic(2).generators[0].images.tolist() + [2]])
        with pytest.raises(NotTransitive):
            wreath_product(corpus.load("a5"), bad_top)

    def test_uniserial_for_simple_bottom(self):
        # regular cyclic top of order 3
        c3 = PermGroup.cyclic(3)
        w = wreath_product(corpus.load("a5"), c3)
        assert is_uniserial(w)


class TestAffine:
    def test_agl22_is_s4(self):
        g = affine_group(2, 2, [[[0, 1], [1, 0]], [[1, 1], [0, 1]]])
        assert g.degree == 4 and g.order() == 24
        assert [f.describe() for f in chief_series(g).factors] == ["C2", "C3", "C2^2"]

    def test_translations_only(self):
        g = affine_group(3, 2, [])
        assert g.order() == 9
        assert g.is_abelian()

    def test_sum_zero_affine(self):
        module, sum_zero, _ = permutation_module(5, 5)
        sub = restrict_to_submodule(module, sum_zero)
        g = affine_group(5, 4, sub.action)
        assert g.order() == 5**4 * 120

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrix):
            affine_group(3, 2, [[[1, 1], [1, 1]]])

    def test_degree_cap(self):
        with pytest.raises(CapExceeded):
            affine_group(2, 30, [])


class TestModules:
    def test_spin_zero(self):
        module, _, _ = permutation_module(5, 5)
        assert spin(module, [0, 0, 0, 0, 0]).dim == 0

    def test_spin_constants_is_line(self):
        module, _, constants = permutation_module(5, 5)
        got = spin(module, [1, 1, 1, 1, 1])
        assert got.dim == 1
        assert got.contains_subspace(constants) and constants.contains_subspace(got)

    def test_spin_difference_is_sum_zero(self):
        module, sum_zero, _ = permutation_module(5, 5)
        got = spin(module, [1, 4, 0, 0, 0])
        assert got.dim == 4
        assert got.contains_subspace(sum_zero)

    def test_submodules_p_divides(self):
        module, sum_zero, constants = permutation_module(5, 5)
        subs = all_submodules(module)
        assert sorted(s.dim for s in subs) == [0, 1, 4, 5]
        four = next(s for s in subs if s.dim == 4)
        one = next(s for s in subs if s.dim == 1)
        assert four.contains_subspace(one)
        assert is_uniserial_module(module)
        series = module_composition_series(module)
        assert [s.dim for s in series] == [5, 4, 1, 0]

    def test_submodules_p_coprime(self):
        module, sum_zero, constants = permutation_module(5, 3)
        subs = all_submodules(module)
        assert sorted(s.dim for s in subs) == [0, 1, 4, 5]
        assert sum_zero.intersection(constants).dim == 0
        assert sum_zero.sum_with(constants).dim == 5
        assert not is_uniserial_module(module)
        with pytest.raises(NotUniserialModule):
            module_composition_series(module)

    def test_trivial_action_all_subspaces(self):
        module = FpModule(2, 2, [np.eye(2, dtype=np.int64)])
        assert len(all_submodules(module)) == 5

    def test_edge_n2_p2(self):
        module, sum_zero, constants = permutation_module(2, 2)
        assert sum_zero.dim == constants.dim == 1
        assert sum_zero.contains_subspace(constants)

    def test_closure_properties(self):
        module, _, _ = permutation_module(5, 5)
        subs = all_submodules(module)
        rng = random.Random(3)
        for a in subs:
            for b in subs:
                assert any(
                    s.dim == a.sum_with(b).dim and s.contains_subspace(a.sum_with(b))
                    for s in subs
                )
                inter = a.intersection(b)
                assert any(
                    s.dim == inter.dim and s.contains_subspace(inter)
                    and inter.contains_subspace(s)
                    for s in subs
                )
        for _ in range(50):
            vec = [rng.randrange(5) for _ in range(5)]
            sub = spin(module, vec)
            assert any(
                s.dim == sub.dim and s.contains_subspace(sub) for s in subs
            )

    def test_faithful_on_top(self):
        module, sum_zero, _ = permutation_module(5, 5)
        assert not acts_faithfully_on_top(module)
        sub = restrict_to_submodule(module, sum_zero)
        assert acts_faithfully_on_top(sub)

    def test_faithful_on_top_trivial_module(self):
        module = FpModule(3, 1, [np.eye(1, dtype=np.int64)])
        assert acts_faithfully_on_top(module)


class TestAffineEqualityBuild:
    def test_wrong_prime_rejected(self):
        with pytest.raises(NoSuchPrime):
            build_affine_equality_group(5)
        with pytest.raises(NoSuchPrime):
            build_affine_equality_group(11)

    def test_block_and_order(self):
        group, h_mats = build_affine_equality_group(7)
        assert group.degree == 7**4
        assert group.order() == 7**4 * 1152
        assert matrix_group_order(7, h_mats) == 1152

    def test_linear_part_irreducible(self):
        _, h_mats = build_affine_equality_group(7)
        module = FpModule(7, 4, h_mats)
        assert sorted(s.dim for s in all_submodules(module)) == [0, 4]


class TestWreathQuasisimple:
    def test_full_quotient(self):
        group, info = build_wreath_quasisimple(6, quotient="full")
        assert group.degree == 144
        assert info["order"] == 120**6 * 720
        assert group.order() == info["order"]

    def test_central_product_quotient(self):
        group, info = build_wreath_quasisimple(6, quotient="central-product")
        assert group.degree == 4320
        assert info["order"] == 120**6 * 720 // 2
        assert group.order() == info["order"]

    def test_center_of_base_block(self):
        # the per-block central involutions span an elementary 2-group
        base = sl2_5()
        w = wreath_product(base, PermGroup.symmetric(6))
        from uniserial.lattice import table_of
        from uniserial.constructions import center_ids
        from uniserial.perm import DTYPE, Permutation

        table = table_of(base)
        z_id = next(z for z in center_ids(table) if z != table.identity_id)
        z_row = table.perms[z_id]
        gens = []
        for block in range(6):
            img = np.arange(144, dtype=DTYPE)
            img[block * 24 : (block + 1) * 24] = z_row + block * 24
            gens.append(Permutation(img, 144))
        centre_block = PermGroup(144, gens)
        assert centre_block.order() == 2**6
        assert all(w.contains(g) for g in gens)
        base_gens = [g for g in w.generators[: len(base.generators)]]
        for z in gens:
            for b in base_gens:
                assert (z * b) == (b * z)

    def test_perfect_block_with_quasisimple_quotients(self):
        group, info = build_wreath_quasisimple(6, quotient="central-product")
        # the image of the base is perfect of order 120^6/2 with centre 2^5
        base_img = group.subgroup(list(group.generators[:2]))
        m = group.normal_closure(list(base_img.generators))
        assert m.order() == 120**6 // 2
        assert m.is_perfect()
        assert m.order() // 60**6 == 2**5

    def test_bad_parameters(self):
        with pytest.raises(BadCenter):
            build_wreath_quasisimple(5)  # 5 not divisible by the central order 2
        with pytest.raises(BadCenter):
            build_wreath_quasisimple(6, quasisimple=corpus.load("a5"))


class TestShippedGroups:
    def test_sl25(self):
        g = sl2_5()
        assert g.order() == 120
        assert g.is_perfect()

    def test_psl34_census(self):
        g = psl3_4()
        assert g.order() == 20160
        from uniserial.lattice import table_of

        assert 15 not in set(table_of(g).orders.tolist())

    def test_corpus_checksums(self):
        assert corpus.verify_checksums()

    def test_rref_canonical(self):
        a = rref_mod([[2, 4, 0], [1, 2, 1]], 5)
        b = rref_mod([[1, 2, 3], [0, 0, 1]], 5)
        assert np.array_equal(a, b)
