"""Tests for presentations.py -- parsing, realization and algebra maps."""

import json
from fractions import Fraction

import pytest

from errors import (
    InfiniteDimensional,
    NonMonomialRelation,
    NonPrimeCharacteristic,
    NotAMorphism,
    PresentationSyntaxError,
    RelationInconsistency,
)
from fields import GF, QQ
from presentations import (
    EXTERIOR,
    FIELD_EXTENSION,
    GROUP_ALGEBRA,
    POLYNOMIAL,
    QUIVER,
    AlgebraMap,
    elementary_abelian_hopf,
    ground_algebra,
    identity_map,
    parse_element,
    parse_presentation,
    preprojective_presentation,
    realize,
)


A2_JSON = {
    "field": "GF(3)",
    "vertices": 2,
    "arrows": [{"name": "a1", "from": 1, "to": 2}, {"name": "b1", "from": 2, "to": 1}],
    "relations": [[{"coeff": 1, "path": ["b1", "a1"]}], [{"coeff": 1, "path": ["a1", "b1"]}]],
}


class TestParsePresentation:
    def test_truncated_polynomial(self):
        pres = parse_presentation("GF(2)[x,y]/(x^2,y^2)")
        assert pres.kind == POLYNOMIAL
        assert pres.field == GF(2)
        assert [v.name for v in pres.variables] == ["x", "y"]
        assert pres.exponents == (2, 2)

    def test_free_polynomial(self):
        pres = parse_presentation("Q[x]")
        assert pres.kind == POLYNOMIAL
        assert pres.exponents == (None,)

    def test_variable_degrees(self):
        pres = parse_presentation("Q[x:2,y]")
        assert [v.degree for v in pres.variables] == [2, 1]

    def test_exterior(self):
        pres = parse_presentation("Q<x,y>")
        assert pres.kind == EXTERIOR

    def test_group_algebra(self):
        pres = parse_presentation("GF(2)E(2)")
        assert pres.kind == GROUP_ALGEBRA
        assert pres.rank == 2
        assert pres.graded
        assert not parse_presentation("GF(3)E(2):0").graded

    def test_bare_fields(self):
        assert parse_presentation("Q").kind == POLYNOMIAL
        assert parse_presentation("Q(i^2+1)").kind == FIELD_EXTENSION

    def test_quiver_json(self):
        pres = parse_presentation('{"field": "Q", "vertices": 1, "arrows": [], "relations": []}')
        assert pres.kind == QUIVER
        assert pres.vertices == 1

    def test_non_prime_characteristic(self):
        with pytest.raises(NonPrimeCharacteristic):
            parse_presentation("GF(6)[x]")

    def test_non_monomial_relation(self):
        with pytest.raises(NonMonomialRelation):
            parse_presentation("Q[x,y]/(x+y)")
        with pytest.raises(NonMonomialRelation):
            parse_presentation("Q[x]/(2x)")

    def test_unknown_variable_position(self):
        with pytest.raises(PresentationSyntaxError) as exc:
            parse_presentation("Q[x]/(z)")
        assert exc.value.position == 6
        assert exc.value.expected == ["x"]

    def test_duplicate_variable(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("Q[x,x]")

    def test_group_algebra_needs_prime_field(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("QE(2)")

    def test_quiver_with_unknown_arrow(self):
        bad = dict(A2_JSON, relations=[[{"coeff": 1, "path": ["c1"]}]])
        with pytest.raises(PresentationSyntaxError):
            parse_presentation(json.dumps(bad))


class TestRealize:
    def test_truncated_polynomial_basis(self):
        a = realize(parse_presentation("GF(2)[x,y]/(x^2,y^2)"), 4)
        assert a.dim == 4
        assert a.labels == ("1", "x", "y", "xy")
        assert a.degrees == (0, 1, 1, 2)
        assert a.complete
        assert a.check().passed

    def test_polynomial_truncation(self):
        a = realize(parse_presentation("Q[x]"), 5)
        assert a.space.dims == {d: 1 for d in range(6)}
        assert not a.complete
        assert a.is_connected()

    def test_lexicographic_order_in_degree_two(self):
        a = realize(parse_presentation("Q[x,y]"), 2)
        assert a.labels == ("1", "x", "y", "x^2", "xy", "y^2")

    def test_exterior_signs(self):
        a = realize(parse_presentation("Q<x,y>"), 2)
        x, y, xy = (a.basis_vector(a.index(s)) for s in ("x", "y", "xy"))
        assert a.multiply(x, y) == xy
        assert a.multiply(y, x) == {a.index("xy"): Fraction(-1)}
        assert a.multiply(x, x) == {}
        assert a.check().passed

    def test_negative_bound(self):
        with pytest.raises(ValueError):
            realize(parse_presentation("Q[x]"), -1)

    def test_unit_relation(self):
        with pytest.raises(RelationInconsistency):
            realize(parse_presentation("Q[x]/(1)"), 2)

    def test_degree_zero_needs_truncation(self):
        with pytest.raises(InfiniteDimensional):
            realize(parse_presentation("Q[x:0]"), 2)

    def test_field_extension_over_prime_field(self):
        a = realize(parse_presentation("Q(i^2+1)"), 0)
        assert a.field == QQ
        assert a.labels == ("1", "i")
        i = a.basis_vector(1)
        assert a.multiply(i, i) == {0: Fraction(-1)}
        assert a.augmentation is None

    def test_ground_algebra(self):
        a = ground_algebra(GF(5))
        assert a.dim == 1
        assert a.check().passed


class TestQuiver:
    def test_preprojective_a2_from_json(self):
        a = realize(parse_presentation(json.dumps(A2_JSON)), 4)
        assert a.dim == 4
        assert set(a.labels) == {"e1", "e2", "a1", "b1"}
        assert a.complete
        assert a.check().passed

    def test_built_in_matches_json(self):
        a = realize(preprojective_presentation(3), 4)
        assert a.dim == 4
        a1, b1 = a.basis_vector(a.index("a1")), a.basis_vector(a.index("b1"))
        assert a.multiply(b1, a1) == {}
        assert a.multiply(a1, b1) == {}

    def test_unit_is_sum_of_idempotents(self):
        a = realize(preprojective_presentation(3), 4)
        assert a.unit == {a.index("e1"): GF(3).one, a.index("e2"): GF(3).one}
        assert a.augmentation is None

    def test_composition_order(self):
        a = realize(preprojective_presentation(5), 6)
        a1, a2 = a.basis_vector(a.index("a1")), a.basis_vector(a.index("a2"))
        # a2 after a1 is the path 1 -> 3; a1 after a2 does not compose
        assert a.multiply(a2, a1) == {a.index("a2*a1"): GF(5).one}
        assert a.multiply(a1, a2) == {}

    @pytest.mark.parametrize("p,dim", [(3, 4), (5, 20)])
    def test_preprojective_dimension(self, p, dim):
        a = realize(preprojective_presentation(p), p + 1)
        assert a.dim == dim
        assert a.complete


class TestGroupAlgebra:
    def test_dimension(self):
        algebra, _ = elementary_abelian_hopf(3, 2)
        assert algebra.dim == 9

    def test_generators_are_primitive(self):
        algebra, hopf = elementary_abelian_hopf(2, 1)
        assert algebra.labels == ("1", "x1")
        assert hopf.comult[1] == {(0, 1): 1, (1, 0): 1}
        assert hopf.counit == {0: 1}

    def test_binomial_comultiplication(self):
        algebra, hopf = elementary_abelian_hopf(3, 1)
        sq = algebra.index("x1^2")
        x = algebra.index("x1")
        assert hopf.comult[sq][(x, x)] == 2

    def test_antipode_sign(self):
        algebra, hopf = elementary_abelian_hopf(3, 2)
        x1 = algebra.index("x1")
        x1x2 = algebra.index("x1*x2")
        assert hopf.antipode[x1] == {x1: 2}
        assert hopf.antipode[x1x2] == {x1x2: 1}

    def test_ungraded_mode(self):
        algebra, _ = elementary_abelian_hopf(2, 2, "ungraded")
        assert set(algebra.degrees) == {0}
        with pytest.raises(ValueError):
            elementary_abelian_hopf(2, 2, "sideways")


class TestAlgebraMap:
    def test_quotient_map(self):
        src = realize(parse_presentation("Q[x]/(x^3)"), 3)
        tgt = realize(parse_presentation("Q[x]/(x^2)"), 3)
        m = AlgebraMap(src, tgt, [tgt.basis_vector(tgt.index("x"))])
        assert m.apply(src.basis_vector(src.index("x^2"))) == {}
        assert m.check().passed

    def test_relation_not_preserved(self):
        src = realize(parse_presentation("Q[x]/(x^2)"), 3)
        tgt = realize(parse_presentation("Q[x]/(x^3)"), 3)
        with pytest.raises(NotAMorphism):
            AlgebraMap(src, tgt, [tgt.basis_vector(tgt.index("x"))])

    def test_field_mismatch(self):
        src = realize(parse_presentation("Q[x]"), 2)
        tgt = realize(parse_presentation("GF(2)[x]"), 2)
        with pytest.raises(NotAMorphism):
            AlgebraMap(src, tgt, [tgt.basis_vector(1)])

    def test_wrong_image_count(self):
        a = realize(parse_presentation("Q[x,y]"), 2)
        with pytest.raises(NotAMorphism):
            AlgebraMap(a, a, [a.basis_vector(1)])

    def test_identity(self):
        a = realize(parse_presentation("GF(2)[x,y]/(x^2,y^2)"), 2)
        m = identity_map(a)
        for i in range(a.dim):
            assert m.apply(a.basis_vector(i)) == a.basis_vector(i)


class TestParseElement:
    def test_polynomial(self):
        a = realize(parse_presentation("Q[x,y]"), 3)
        v = parse_element(a, "2*x*y - x^2")
        assert v == {a.index("xy"): Fraction(2), a.index("x^2"): Fraction(-1)}

    def test_zero(self):
        a = realize(parse_presentation("Q[x]"), 2)
        assert parse_element(a, "0") == {}

    def test_unknown_name(self):
        a = realize(parse_presentation("Q[x]"), 2)
        with pytest.raises(PresentationSyntaxError):
            parse_element(a, "x + z")
