"""Tests for comodules.py -- coaction checks, tensor products, duality and Galois descent."""

import random

import pytest

from comodules import (
    check_coaction,
    comodule_hom,
    comodule_tensor,
    descend_comodule,
    direct_sum,
    induce_comodule,
    is_comodule_map,
    is_module_map,
    isomorphic,
    phi_dualize,
    phi_inverse,
    phi_map,
    predual_coalgebra,
    random_coalgebra,
    random_comodule,
    regular_comodule,
    unit_comodule,
    zero_comodule,
)
from corings import check_coring, dual_algebra, exterior_bialgebra, galois_coring, galois_extension
from errors import BaseMismatch
from fields import QQ, parse_field


def cleaned(coaction):
    return {i: v for i, v in coaction.items() if v}


@pytest.fixture
def gaussian():
    return galois_extension(parse_field("Q(i^2+1)"))


class TestCheckCoaction:
    def test_regular_comodule(self):
        assert check_coaction(regular_comodule(exterior_bialgebra(2))).passed

    def test_unit_comodule(self):
        assert check_coaction(unit_comodule(exterior_bialgebra(1))).passed

    def test_zero_comodule(self):
        assert check_coaction(zero_comodule(exterior_bialgebra(1))).passed

    def test_regular_over_galois_coring(self, gaussian):
        assert check_coaction(regular_comodule(galois_coring(gaussian))).passed

    def test_perturbed_coaction_fails(self):
        m = regular_comodule(exterior_bialgebra(1))
        m.coaction[1][(1, 0)] = QQ.from_int(2)
        report = check_coaction(m)
        assert report.status("counit") == "fail"
        assert report.failed()[0].witness == "e1"


class TestTensor:
    def test_unit_is_neutral(self):
        e = exterior_bialgebra(2)
        m = regular_comodule(e)
        t = comodule_tensor(unit_comodule(e), m)
        assert t.dim == m.dim
        assert cleaned(t.coaction) == cleaned(m.coaction)

    @pytest.mark.parametrize("n", [1, 2])
    def test_tensor_of_comodules_is_a_comodule(self, n):
        e = exterior_bialgebra(n)
        m = regular_comodule(e)
        t = comodule_tensor(m, m)
        assert t.dim == m.dim**2
        assert check_coaction(t).passed

    def test_associative(self, exterior_two):
        a, b = regular_comodule(exterior_two), unit_comodule(exterior_two)
        left = comodule_tensor(comodule_tensor(a, b), a)
        right = comodule_tensor(a, comodule_tensor(b, a))
        assert isomorphic(left, right)

    @pytest.mark.parametrize("seed", range(5))
    def test_over_tor(self, tor_plane, seed):
        rng = random.Random(seed)
        m = random_comodule(tor_plane, rng, max_dim=4)
        n = random_comodule(tor_plane, rng, max_dim=4)
        assert check_coaction(comodule_tensor(m, n)).passed

    def test_needs_a_bialgebra(self, gaussian):
        m = regular_comodule(galois_coring(gaussian))
        with pytest.raises(BaseMismatch):
            comodule_tensor(m, m)


class TestDuality:
    def test_dual_module_axioms(self):
        m = regular_comodule(exterior_bialgebra(2))
        assert phi_dualize(m).check().passed

    def test_round_trip(self):
        m = regular_comodule(exterior_bialgebra(2))
        back = phi_inverse(phi_dualize(m), m.coring)
        assert back.labels == m.labels
        assert back.space.degrees == m.space.degrees
        assert cleaned(back.coaction) == cleaned(m.coaction)

    def test_contravariant_on_maps(self):
        e = exterior_bialgebra(1, "ungraded")
        m = regular_comodule(e)
        maps = comodule_hom(m, m, graded=False)
        assert len(maps) == 2
        for f_ in maps:
            assert is_comodule_map(m, m, f_)
            assert is_module_map(phi_dualize(m), phi_dualize(m), phi_map(f_))
        f_, g_ = maps
        assert phi_map(f_ @ g_) == phi_map(g_) @ phi_map(f_)

    @pytest.mark.parametrize("seed", range(10))
    def test_round_trip_on_random_comodules(self, seed):
        rng = random.Random(seed)
        d = random_coalgebra(QQ, rng)
        m = random_comodule(d, rng)
        back = phi_inverse(phi_dualize(m), d)
        assert back.space.degrees == m.space.degrees
        assert cleaned(back.coaction) == cleaned(m.coaction)

    @pytest.mark.parametrize("seed", range(10))
    def test_dual_algebra_is_involutive(self, seed):
        d = random_coalgebra(QQ, random.Random(seed))
        again = predual_coalgebra(dual_algebra(d))
        assert cleaned(again.comult) == cleaned(d.comult)
        assert cleaned({i: {k: x for k, x in v.items() if x} for i, v in again.counit.items()}) == cleaned(
            {i: {k: x for k, x in v.items() if x} for i, v in d.counit.items()}
        )

    def test_needs_a_field_base(self, gaussian):
        with pytest.raises(BaseMismatch):
            phi_dualize(regular_comodule(galois_coring(gaussian)))


class TestMorphisms:
    def test_identity_is_a_map(self):
        m = regular_comodule(exterior_bialgebra(2))
        maps = comodule_hom(m, m)
        assert maps
        assert all(is_comodule_map(m, m, f_) for f_ in maps)

    def test_different_corings(self):
        with pytest.raises(BaseMismatch):
            comodule_hom(regular_comodule(exterior_bialgebra(1)), regular_comodule(exterior_bialgebra(1)))

    def test_isomorphic_direct_sums(self):
        e = exterior_bialgebra(1)
        a, b = regular_comodule(e), unit_comodule(e)
        assert isomorphic(direct_sum(a, b), direct_sum(b, a))
        assert not isomorphic(a, b)


class TestDescent:
    def test_galois_coring_descends_to_dimension_two(self, gaussian):
        n = regular_comodule(galois_coring(gaussian))
        assert descend_comodule(n, gaussian).dim == 2

    def test_induced_comodule_passes(self, gaussian):
        d = exterior_bialgebra(1, "graded", QQ)
        m = regular_comodule(d)
        n = induce_comodule(m, gaussian)
        assert n.dim == 2 * m.dim
        assert check_coring(n.coring).passed
        assert check_coaction(n).passed

    @pytest.mark.parametrize("seed", range(20))
    def test_descend_after_induce(self, gaussian, seed):
        rng = random.Random(seed)
        d = random_coalgebra(QQ, rng)
        m = random_comodule(d, rng)
        n = induce_comodule(m, gaussian)
        back = descend_comodule(n, gaussian, d)
        # dim_K of the descent equals dim_L of the induced comodule
        assert n.dim == gaussian.degree * m.dim
        assert back.dim == m.dim
        assert back.coring is d
        assert check_coaction(back).passed
        assert isomorphic(back, m)

    @pytest.mark.parametrize("seed", range(5))
    def test_descent_over_gf4(self, seed):
        g = galois_extension(parse_field("GF(2^2;a^2+a+1)"))
        rng = random.Random(seed)
        d = random_coalgebra(g.base, rng)
        m = random_comodule(d, rng)
        back = descend_comodule(induce_comodule(m, g), g, d)
        assert isomorphic(back, m)

    def test_induction_needs_a_field_coalgebra(self, gaussian):
        with pytest.raises(BaseMismatch):
            induce_comodule(regular_comodule(galois_coring(gaussian)), gaussian)

    def test_wrong_coring(self, gaussian):
        with pytest.raises(BaseMismatch):
            descend_comodule(regular_comodule(exterior_bialgebra(1)), gaussian)
