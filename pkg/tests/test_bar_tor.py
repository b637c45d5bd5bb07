"""Tests for bar_tor.py -- bar complexes, Tor Hopf algebras and the resolution oracle."""

import pytest

from bar_tor import (
    bar_complex,
    chain_map_report,
    deconcatenate,
    exterior_dual_report,
    graded_commutativity_report,
    shuffle,
    tor_bialgebra,
    tor_degree_bound,
    tor_dims_via_resolution,
)
from corings import check_hopf, primitives
from errors import InfiniteDimensional, NotAugmented, NotCommutative, NotConnected
from presentations import parse_presentation, preprojective_presentation, realize
from settings import ORACLE_BATTERY


def algebra(text, bound):
    return realize(parse_presentation(text), bound)


class TestBarComplex:
    def test_polynomial_slices(self):
        bar = bar_complex(algebra("Q[x]", 3), 3, 3)
        assert bar.dim(0, 0) == 1
        assert bar.dim(1, 1) == 1
        assert bar.dim(2, 2) == 1
        assert bar.dim(2, 3) == 2
        assert bar.dim(3, 3) == 1
        assert bar.dim(2, 1) == 0

    def test_labels(self):
        bar = bar_complex(algebra("Q[x]", 2), 2, 2)
        assert bar.word_label(()) == "1"
        assert bar.word_label(bar.words[(2, 2)][0]) == "[x|x]"

    @pytest.mark.parametrize("text", ["Q[x,y]", "GF(2)[x,y]/(x^2,y^2)", "GF(3)[x]/(x^3)"])
    def test_d_squared_zero(self, text):
        assert bar_complex(algebra(text, 4), 4, 4).check().passed

    def test_boundary_of_pair(self):
        a = algebra("Q[x]", 2)
        bar = bar_complex(a, 2, 2)
        x, x2 = a.index("x"), a.index("x^2")
        assert bar.boundary((x, x)) == {(x2,): -1}

    def test_chain_maps(self):
        report = chain_map_report(bar_complex(algebra("Q[x]", 3), 3, 3))
        assert report.passed

    def test_exterior_boundary_carries_internal_sign(self):
        a = algebra("Q<x,y>", 2)
        bar = bar_complex(a, 2, 2)
        x, y, xy = a.index("x"), a.index("y"), a.index("xy")
        assert bar.boundary((x, y)) == {(xy,): 1}
        assert bar.boundary((y, x)) == {(xy,): -1}

    @pytest.mark.parametrize("text", ["Q<x,y>", "GF(3)<x>", "Q<x,y:3>", "Q[x:3]", "GF(3)[x]/(x^3)"])
    def test_chain_maps_with_signs(self, text):
        report = chain_map_report(bar_complex(algebra(text, 6), 3, 6))
        assert report.passed, report.failed()

    def test_anticommuting_even_generators_break_leibniz(self):
        report = chain_map_report(bar_complex(algebra("Q<x:2,y:2>", 4), 2, 4))
        assert report.status("shuffle_chain_map") == "fail"

    def test_not_augmented(self):
        with pytest.raises(NotAugmented):
            bar_complex(algebra("Q(i^2+1)", 0), 1, 1)
        with pytest.raises(NotAugmented):
            bar_complex(realize(preprojective_presentation(3), 2), 1, 1)

    def test_not_connected(self):
        with pytest.raises(NotConnected):
            bar_complex(algebra("Q[x:0]/(x^2)", 2), 2, 2)

    def test_truncation_too_small(self):
        with pytest.raises(InfiniteDimensional):
            bar_complex(algebra("Q[x]", 2), 3, 4)


class TestShuffle:
    def test_two_letters(self):
        assert shuffle((1,), (2,)) == {(1, 2): 1, (2, 1): -1}

    def test_equal_letters_cancel(self):
        assert shuffle((1,), (1,)) == {}

    def test_with_empty_word(self):
        assert shuffle((), (3, 4)) == {(3, 4): 1}

    def test_count(self):
        assert len(shuffle((1, 2), (3, 4))) == 6

    def test_even_weights_commute(self):
        assert shuffle((1,), (2,), lambda a: 2) == {(1, 2): 1, (2, 1): 1}

    def test_mixed_weights(self):
        weights = {1: 1, 2: 2, 3: 1}
        assert shuffle((1,), (2, 3), weights.get) == {(1, 2, 3): 1, (2, 1, 3): 1, (2, 3, 1): -1}

    def test_deconcatenate(self):
        assert deconcatenate((1, 2)) == [((), (1, 2)), ((1,), (2,)), ((1, 2), ())]


class TestTor:
    @pytest.mark.parametrize("field", ["Q", "GF(2)"])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_polynomial_ring_gives_binomials(self, field, n):
        names = ",".join("xyz"[:n])
        t = tor_bialgebra(algebra(f"{field}[{names}]", n), n, n)
        expected = [1, 1] if n == 1 else ([1, 2, 1] if n == 2 else [1, 3, 3, 1])
        assert t.dims() == expected
        # every class of Tor_s sits in internal degree s
        assert all(s == d for s, d in zip(t.hdegs, t.idegs))

    def test_regular_dims_with_room(self):
        t = tor_bialgebra(algebra("Q[x,y]", 4), 4, 4)
        assert t.dims() == [1, 2, 1, 0, 0]

    def test_tau(self):
        t = tor_bialgebra(algebra("Q[x]", 4), 4, 4)
        tau = next(i for i in range(t.dim) if t.hdegs[i] == 1)
        f = t.field
        assert t.multiply({tau: f.one}, {tau: f.one}) == {}
        assert primitives(t) == [{tau: f.one}]
        assert t.labels[tau] == "[x]"

    def test_hopf_axioms(self):
        t = tor_bialgebra(algebra("GF(2)[x,y]/(x^2,y^2)", 3), 3, 3)
        assert check_hopf(t).passed

    def test_graded_commutative(self):
        t = tor_bialgebra(algebra("Q[x,y]", 3), 3, 3)
        assert graded_commutativity_report(t).passed

    def test_antipode_negates_generators(self):
        t = tor_bialgebra(algebra("Q[x]", 2), 2, 2)
        tau = next(i for i in range(t.dim) if t.hdegs[i] == 1)
        assert t.apply_antipode({tau: t.field.one}) == {tau: t.field.neg(t.field.one)}

    def test_metadata(self):
        t = tor_bialgebra(algebra("Q[x]", 2), 2, 2)
        assert t.convention == "homological"
        assert t.ring == "Q[x]"
        assert t.truncation == (2, 2)
        assert t.name == "Tor^Q[x](k,k)"

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            tor_bialgebra(algebra("Q[x]", 2), -1)

    def test_exterior_dual(self):
        t = tor_bialgebra(algebra("Q[x,y]", 2), 2, 2)
        report = exterior_dual_report(t)
        assert report.passed
        assert report.notes["generators"] == 2

    @pytest.mark.parametrize("text", ["Q<x,y>", "GF(3)<x>"])
    def test_exterior_tor_is_a_hopf_algebra(self, text):
        t = tor_bialgebra(algebra(text, 3), 3, 3)
        assert check_hopf(t).passed
        assert graded_commutativity_report(t).passed

    def test_exterior_tor_is_divided_powers(self):
        t = tor_bialgebra(algebra("Q<x,y>", 3), 3, 3)
        assert t.dims() == [1, 2, 3, 4]
        # suspended sign degree: homological plus internal
        assert all(p == h + d for p, h, d in zip(t.parities, t.hdegs, t.idegs))
        x = next(i for i in range(t.dim) if t.labels[i] == "[x]")
        assert t.multiply({x: t.field.one}, {x: t.field.one})
        # truncation is by homological degree, not by sign degree
        assert t.in_range(x, x, x)
        assert not t.in_range(x, x, x, x)

    def test_divided_cube_vanishes_in_characteristic_three(self):
        t = tor_bialgebra(algebra("GF(3)<x>", 3), 3, 3)
        f = t.field
        x = {t.labels.index("[x]"): f.one}
        assert t.multiply(t.multiply(x, x), x) == {}

    def test_anticommuting_even_generators_are_rejected(self):
        with pytest.raises(NotCommutative, match="shuffle_chain_map"):
            tor_bialgebra(algebra("Q<x:2,y:2>", 4), 2, 4)

    def test_degrees_past_the_truncation_are_not_computed(self):
        t = tor_bialgebra(algebra("GF(3)[x]/(x^3)", 3), 3, 3)
        assert t.computed == (True, True, True, False)
        assert t.dims() == [1, 1, 1, None]
        assert t.dims()[3] != 0

    def test_unknown_bound_is_not_computed(self):
        t = tor_bialgebra(algebra("Q[x,y]/(x^2*y)", 3), 3, 3)
        assert t.dims()[:3] == [1, 2, 2]
        assert t.dims()[3] is None


class TestOracle:
    @pytest.mark.parametrize("text", ORACLE_BATTERY)
    def test_resolution_agrees_with_bar(self, text):
        a = algebra(text, 4)
        t = tor_bialgebra(a, 4, 4)
        oracle = tor_dims_via_resolution(a, 4, 4)
        assert oracle.table == t.table()
        assert oracle.dims() == t.dims()

    def test_truncated_polynomial_is_one_per_degree(self):
        a = algebra("GF(2)[x]/(x^2)", 6)
        assert tor_dims_via_resolution(a, 6, 6).dims() == [1] * 7

    def test_cube_truncation_jumps(self):
        a = algebra("GF(3)[x]/(x^3)", 6)
        table = tor_dims_via_resolution(a, 4, 6).table
        assert table == {(0, 0): 1, (1, 1): 1, (2, 3): 1, (3, 4): 1, (4, 6): 1}

    def test_oracle_marks_the_same_truncation(self):
        a = algebra("GF(3)[x]/(x^3)", 3)
        oracle = tor_dims_via_resolution(a, 3, 3)
        assert oracle.dims() == [1, 1, 1, None]
        assert oracle.dims() == tor_bialgebra(a, 3, 3).dims()


class TestDegreeBound:
    @pytest.mark.parametrize(
        "text, s, bound",
        [
            ("Q[x]", 1, 1),
            ("Q[x]", 2, 0),
            ("Q[x:2,y]", 1, 2),
            ("Q[x,y]", 2, 2),
            ("GF(3)[x]/(x^3)", 2, 3),
            ("GF(3)[x]/(x^3)", 3, 4),
            ("GF(3)[x]/(x^3)", 4, 6),
            ("GF(2)[x,y]/(x^2,y^2)", 3, 3),
            ("Q<x,y>", 3, 3),
            ("Q[x,y]/(x*y)", 3, 3),
            ("Q[x,y]/(x^2*y)", 2, 3),
            ("Q[x,y]/(x^2*y)", 3, None),
        ],
    )
    def test_bound(self, text, s, bound):
        assert tor_degree_bound(algebra(text, 2), s) == bound

    def test_without_a_presentation(self):
        a = algebra("GF(2)[x]/(x^2)", 2)
        a.presentation = None
        assert tor_degree_bound(a, 3) == 3
        b = algebra("Q[x]", 2)
        b.presentation = None
        assert tor_degree_bound(b, 1) is None
