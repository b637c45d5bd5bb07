"""Tests for watts.py -- comonad specs, coring extraction and the Eilenberg-Watts checks."""

import pytest

from comodules import DualModule
from corings import check_coring
from errors import NotAComonad
from linalg import GradedVectorSpace
from settings import COMONAD_SPECS
from watts import (
    Comonad,
    counit_transformation,
    determination_at_regular,
    extract_coring,
    graded_pieces,
    grading_shift_check,
    parse_spec,
    rebuilt_from_regular,
    regular_right_module,
    scaled_transformation,
    shift_module,
    verify_watts,
)


def spec(name):
    return parse_spec(COMONAD_SPECS[name])


class TestComonadSpec:
    def test_builtin_specs_parse(self):
        for name in COMONAD_SPECS:
            assert spec(name).composite.check().passed

    def test_composite_of_a_chain(self):
        s = spec("chain")
        assert s.source.dim == 1
        assert s.base.dim == 2

    @pytest.mark.parametrize("pattern", ["UF", "FUX", "FUFU", ""])
    def test_bad_words(self, pattern):
        with pytest.raises(NotAComonad):
            parse_spec(dict(COMONAD_SPECS["galois"], pattern=pattern))

    def test_word_must_match_the_chain_length(self):
        with pytest.raises(NotAComonad):
            parse_spec(dict(COMONAD_SPECS["chain"], pattern="F2F1U2U1"))

    def test_needs_a_map(self):
        with pytest.raises(NotAComonad):
            parse_spec({"rings": ["Q"], "maps": [], "pattern": "FU"})

    def test_ring_out_of_range(self):
        with pytest.raises(NotAComonad):
            parse_spec({"rings": ["Q"], "maps": [{"from": 0, "to": 3, "images": []}], "pattern": "FU"})

    def test_maps_must_compose(self):
        data = {
            "rings": ["Q", "Q", "Q(i^2+1)"],
            "maps": [{"from": 0, "to": 1, "images": []}, {"from": 0, "to": 2, "images": []}],
            "pattern": "F2F1U1U2",
        }
        with pytest.raises(NotAComonad):
            parse_spec(data)


class TestExtraction:
    @pytest.mark.parametrize("name,dim", [("identity", 2), ("galois", 4), ("dual-numbers", 4)])
    def test_coring_dimension(self, name, dim):
        ext = extract_coring(spec(name))
        assert ext.coring.dim == dim
        assert check_coring(ext.coring).passed

    def test_comonad_axioms_at_regular(self):
        comonad = Comonad(spec("dual-numbers"))
        assert all(comonad.axioms_at(comonad.regular).values())

    def test_grading_shift(self):
        assert grading_shift_check(spec("dual-numbers")).passed

    @pytest.mark.parametrize("name", ["identity", "dual-numbers"])
    @pytest.mark.parametrize("n", [1, -2])
    def test_grading_shift_by(self, name, n):
        report = grading_shift_check(spec(name), shift_by=n)
        assert report.passed
        assert report.notes["shift"] == n

    def test_graded_pieces_move_with_the_shift(self):
        s = spec("dual-numbers").base
        m = regular_right_module(s)
        assert graded_pieces(m) == {0: [0], 1: [1]}
        assert graded_pieces(shift_module(m, 2)) == {2: [0], 3: [1]}

    def test_mis_graded_module_fails_the_shift_check(self):
        identity = spec("identity")
        s = identity.base
        one = s.field.one
        x = s.index("x")
        # e0 . x = e1 with both basis vectors in degree 0
        m = DualModule(
            s,
            GradedVectorSpace((0, 0), ("e0", "e1")),
            {(0, 0): {0: one}, (1, 0): {1: one}, (0, x): {1: one}},
            name="flat",
        )
        report = grading_shift_check(identity, modules=[m])
        assert not report.passed
        assert report.failed()[0].witness.startswith("flat: degree")


class TestVerifyWatts:
    @pytest.mark.parametrize("name", ["identity", "galois", "dual-numbers"])
    def test_battery_of_twenty(self, name):
        report = verify_watts(spec(name), battery_size=20, seed=0)
        assert report.passed, report.failed()
        assert report.notes["modules"] == 20

    def test_chain_of_two_maps(self):
        assert verify_watts(spec("chain"), battery_size=5).passed

    def test_other_seed(self):
        assert verify_watts(spec("dual-numbers"), battery_size=5, seed=7).passed


class TestDetermination:
    def test_counit_is_rebuilt_from_its_value_at_s(self):
        comonad = Comonad(spec("dual-numbers"))
        eps = counit_transformation(comonad)
        report = determination_at_regular(comonad, eps, rebuilt_from_regular(comonad, eps))
        assert report.passed
        assert report.notes["agree_at_regular"] is True
        assert report.notes["disagreements"] == 0

    def test_scaled_counit_differs(self):
        comonad = Comonad(spec("dual-numbers"))
        eps = counit_transformation(comonad)
        two = scaled_transformation(eps, comonad.spec.field.from_int(2))
        report = determination_at_regular(comonad, eps, two)
        assert report.notes["agree_at_regular"] is False
        assert report.notes["disagreements"] > 0
        assert report.status("natural_second") == "pass"
