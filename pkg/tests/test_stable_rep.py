"""Tests for stable_rep.py -- kC-modules, the comonad phi_* phi^! and shifted-subgroup corings."""

import random
from dataclasses import replace
from itertools import product

import pytest

from corings import Bialgebra, Coring, primitives
from errors import NotNilpotent, ZeroPoint
from fields import GF
from linalg import SparseMatrix
from stable_rep import (
    StableModule,
    adjunction_report,
    certify_exterior,
    check_stable,
    coinduce,
    comonad_maps,
    cyclic_module,
    free_module,
    jordan_decompose,
    jordan_module,
    point_independence_report,
    random_algebra_module,
    random_stable_module,
    reflection_report,
    regular_module,
    restrict,
    shifted_jordan_type,
    shifted_point_map,
    shifted_subgroup_coring,
    stable_endomorphism_algebra,
    stable_hom,
    stable_reduce,
    stable_sum,
    syzygy,
    trivial_module,
)


def nonzero_points(r):
    return [pt for pt in product((0, 1), repeat=r) if any(pt)]


class TestStableModule:
    def test_zero_action(self):
        f = GF(2)
        m = StableModule(2, SparseMatrix.zero(f, 2, 2))
        assert jordan_decompose(m) == [1, 1]

    def test_regular_module(self):
        assert jordan_decompose(free_module(3, 1)) == [3]

    def test_rank_one_square_zero(self):
        f = GF(2)
        m = StableModule(2, SparseMatrix.from_entries(f, 4, 4, [(1, 0, f.one)]))
        assert jordan_decompose(m) == [2, 1, 1]

    def test_not_nilpotent(self):
        with pytest.raises(NotNilpotent):
            StableModule(2, SparseMatrix.identity(GF(2), 2))

    def test_wrong_characteristic(self):
        with pytest.raises(ValueError):
            StableModule(3, SparseMatrix.zero(GF(2), 1, 1))

    def test_block_size_out_of_range(self):
        with pytest.raises(ValueError):
            jordan_module(2, [3])

    @pytest.mark.parametrize("seed", range(10))
    def test_random_modules_keep_their_dimension(self, seed):
        m = random_stable_module(3, random.Random(seed))
        assert sum(jordan_decompose(m)) == m.dim


class TestStableReduce:
    def test_free_module_vanishes(self):
        assert stable_reduce(free_module(3, 2)).dim == 0

    def test_strip_size_p_blocks(self):
        assert jordan_decompose(stable_reduce(jordan_module(2, [2, 1, 1]))) == [1, 1]

    @pytest.mark.parametrize("seed", range(10))
    def test_idempotent(self, seed):
        m = random_stable_module(5, random.Random(seed))
        once = stable_reduce(m)
        assert jordan_decompose(stable_reduce(once)) == jordan_decompose(once)
        assert once.dim <= m.dim

    def test_syzygy_reflects_cyclic_modules(self):
        omega = syzygy(cyclic_module(3, 1))
        assert jordan_decompose(omega) == [2]

    @pytest.mark.parametrize("p", [3, 5])
    def test_reflection_report(self, p):
        assert reflection_report(p).passed


class TestStableHom:
    def test_free_source(self):
        assert stable_hom(free_module(3, 1), cyclic_module(3, 2)).dim == 0

    def test_trivial_module_at_two(self):
        k = cyclic_module(2, 1)
        assert stable_hom(k, k).dim == 1

    def test_arrow_alpha_one(self):
        assert stable_hom(cyclic_module(3, 1), cyclic_module(3, 2)).dim == 1

    def test_invariant_under_free_summands(self):
        padded = stable_sum(cyclic_module(3, 1), free_module(3, 1))
        target = cyclic_module(3, 2)
        assert stable_hom(padded, target).dim == stable_hom(cyclic_module(3, 1), target).dim

    def test_maps_through_the_cover_are_zero(self):
        sh = stable_hom(cyclic_module(3, 2), cyclic_module(3, 2))
        identity = SparseMatrix.identity(GF(3), 2)
        assert not sh.is_zero(identity)
        assert sh.coordinates(identity)


class TestRestrictCoinduce:
    def test_zero_point(self):
        with pytest.raises(ZeroPoint):
            shifted_point_map(3, 2, (0, 3))

    def test_wrong_point_length(self):
        with pytest.raises(ValueError):
            shifted_point_map(2, 2, (1,))

    @pytest.mark.parametrize("p,r,point", [(2, 2, (1, 1)), (2, 3, (0, 1, 1)), (3, 2, (1, 2))])
    def test_group_algebra_restricts_to_free(self, p, r, point):
        phi = shifted_point_map(p, r, point)
        assert jordan_decompose(restrict(phi, regular_module(phi.target))) == [p] * p ** (r - 1)

    def test_trivial_module_at_two(self):
        phi = shifted_point_map(2, 2, (1, 0))
        gk = restrict(phi, coinduce(phi, cyclic_module(2, 1)))
        assert gk.dim == 2
        assert gk.t.is_zero()

    def test_dual_numbers_at_three(self):
        phi = shifted_point_map(3, 2, (1, 1))
        g = restrict(phi, coinduce(phi, cyclic_module(3, 2)))
        assert [b for b in jordan_decompose(g) if b != 3] == [2, 2, 2]

    def test_coinduced_module_axioms(self):
        phi = shifted_point_map(3, 2, (1, 0))
        assert coinduce(phi, cyclic_module(3, 2)).check().passed

    @pytest.mark.parametrize("seed", range(5))
    def test_adjunction(self, seed):
        rng = random.Random(seed)
        phi = shifted_point_map(2, 2, (1, 1))
        m = random_algebra_module(phi.target, rng)
        n = jordan_module(2, [rng.randint(1, 2) for _ in range(2)])
        assert adjunction_report(phi, m, n).passed

    def test_adjunction_with_trivial_module(self):
        phi = shifted_point_map(3, 2, (1, 2))
        assert adjunction_report(phi, trivial_module(phi.target), cyclic_module(3, 1)).passed


class TestComonad:
    def test_rank_one_is_an_isomorphism(self):
        phi = shifted_point_map(3, 1, (1,))
        maps = comonad_maps(phi, cyclic_module(3, 2))
        assert maps.g.dim == 2
        assert maps.counit.rank() == 2

    def test_counit_laws_at_two(self):
        maps = comonad_maps(shifted_point_map(2, 2, (1, 1)), cyclic_module(2, 1))
        report = maps.check()
        assert report.status("counit_left") == "pass"
        assert report.status("counit_right") == "pass"

    def test_coassociativity_at_three(self):
        maps = comonad_maps(shifted_point_map(3, 2, (1, 1)), cyclic_module(3, 2))
        assert maps.check().passed

    @pytest.mark.parametrize("p,r", [(3, 2), (3, 3), (5, 2)])
    def test_jordan_type_of_the_comonad_value(self, p, r):
        expected = [i for i in range(p - 1, 0, -1) for _ in range(p ** (r - 1))]
        point = (1,) + (0,) * (r - 1)
        assert shifted_jordan_type(p, r, point) == expected


class TestStableEndomorphisms:
    def test_p_two_is_the_field(self):
        ends = stable_endomorphism_algebra(2)
        assert ends.algebra.dim == 1
        assert ends.report.passed

    @pytest.mark.parametrize("p,dim", [(3, 4), (5, 20)])
    def test_preprojective_algebra(self, p, dim):
        ends = stable_endomorphism_algebra(p)
        assert ends.algebra.dim == dim
        assert ends.report.passed
        assert ends.report.status("quiver_relations") == "pass"
        assert ends.report.status("multiplicative") == "pass"


class TestShiftedCoring:
    def test_rank_one_is_the_field(self):
        b = shifted_subgroup_coring(2, 1, (1,))
        assert isinstance(b, Bialgebra)
        assert b.dim == 1

    def test_rank_two(self):
        b = shifted_subgroup_coring(2, 2, (1, 1))
        assert b.dim == 2
        assert len(primitives(b)) == 1
        assert certify_exterior(b, 2).passed

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_every_point(self, r):
        for pt in nonzero_points(r):
            b = shifted_subgroup_coring(2, r, pt)
            assert b.dim == 2 ** (r - 1)
            assert check_stable(b).passed

    def test_dimension_four(self):
        assert shifted_subgroup_coring(2, 3, (1, 0, 1)).dim == 4

    def test_sampled_rank_four(self):
        report = point_independence_report(4, sample=10, seed=0)
        assert report.passed
        assert report.notes["points"] == 10

    def test_point_independence(self):
        assert point_independence_report(3).passed

    def test_zero_point(self):
        with pytest.raises(ZeroPoint):
            shifted_subgroup_coring(2, 2, (0, 0))

    def test_every_comultiplication_lifts(self):
        b = shifted_subgroup_coring(2, 2, (1, 1))
        assert b.origin.unlifted == ()
        assert check_stable(b).status("comult_lift") == "pass"

    def test_unlifted_comultiplication_fails_the_report(self):
        b = shifted_subgroup_coring(2, 2, (1, 0))
        b.origin = replace(b.origin, unlifted=(1,))
        report = check_stable(b)
        assert not report.passed
        assert report.failed()[0].axiom == "comult_lift"
        assert report.failed()[0].witness == "c2"
        assert report.notes["unlifted"] == "c2"

    def test_odd_p_is_a_coring_over_the_preprojective_algebra(self):
        c = shifted_subgroup_coring(3, 2, (1, 1))
        assert isinstance(c, Coring)
        assert not c.over_field
        assert c.base.dim == 4
        assert c.origin.p == 3
        assert check_stable(c).notes["stable_checks"] is True
