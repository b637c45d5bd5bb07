"""Tests for fields.py -- exact fields, parsing and JSON scalars."""

import random
from fractions import Fraction

import pytest

from errors import InvalidField, MixedField, NonPrimeCharacteristic, PresentationSyntaxError
from fields import GF, QQ, FieldSpec, parse_field


class TestParseField:
    def test_rationals(self):
        assert parse_field("Q") == QQ
        assert QQ.name == "Q"

    def test_prime_field(self):
        f = parse_field("GF(5)")
        assert f.characteristic == 5
        assert f.degree == 1
        assert f.order == 5

    def test_finite_extension(self):
        f = parse_field("GF(2^2;a^2+a+1)")
        assert f.degree == 2
        assert f.order == 4
        assert f.name == "GF(2^2;a^2+a+1)"

    def test_rational_extension_keeps_generator(self):
        f = parse_field("Q(i^2+1)")
        assert f.characteristic == 0
        assert f.degree == 2
        assert f.generator == "i"
        assert f.name == "Q(i^2+1)"

    def test_non_prime(self):
        with pytest.raises(NonPrimeCharacteristic):
            parse_field("GF(6)")
        with pytest.raises(NonPrimeCharacteristic):
            FieldSpec(4)

    def test_reducible_minpoly(self):
        with pytest.raises(InvalidField):
            parse_field("GF(2^2;a^2+1)")

    def test_degree_mismatch(self):
        with pytest.raises(PresentationSyntaxError):
            parse_field("GF(2^3;a^2+a+1)")

    def test_trailing_text(self):
        with pytest.raises(PresentationSyntaxError) as exc:
            parse_field("Q junk")
        assert exc.value.position == 2


class TestArithmetic:
    @pytest.mark.parametrize("text", ["Q", "GF(2)", "GF(5)", "GF(2^2;a^2+a+1)", "Q(i^2+1)", "GF(3^2;a^2+1)"])
    def test_field_axioms_on_random_scalars(self, text):
        f = parse_field(text)
        rng = random.Random(7)
        for _ in range(30):
            a, b, c = f.random(rng), f.random(rng), f.random(rng)
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.add(a, f.neg(a)) == f.zero
            if not f.is_zero(a):
                assert f.mul(a, f.inv(a)) == f.one

    def test_gaussian_generator_squares_to_minus_one(self):
        f = parse_field("Q(i^2+1)")
        i = f.gen()
        assert f.mul(i, i) == f.neg(f.one)

    def test_gf4_generator_has_order_three(self):
        f = parse_field("GF(2^2;a^2+a+1)")
        assert f.power_of_gen(3) == f.one
        assert f.power_of_gen(1) != f.one

    def test_fractions_stay_reduced(self):
        x = QQ.div(QQ.from_int(2), QQ.from_int(4))
        assert x == Fraction(1, 2)
        assert x.denominator == 2

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            GF(3).inv(0)

    def test_elements_of_gf4(self):
        assert len(list(parse_field("GF(2^2;a^2+a+1)").elements())) == 4


class TestJson:
    def test_rational_is_string(self):
        assert QQ.encode(Fraction(-3, 6)) == "-1/2"
        assert QQ.decode("-1/2") == Fraction(-1, 2)

    def test_prime_is_int(self):
        assert GF(7).encode(5) == 5
        assert GF(7).decode(12) == 5

    def test_extension_is_list(self):
        f = parse_field("Q(i^2+1)")
        assert f.encode(f.gen()) == ["0/1", "1/1"]
        assert f.decode(["0/1", "1/1"]) == f.gen()

    def test_wrong_length(self):
        with pytest.raises(MixedField):
            parse_field("GF(2^2;a^2+a+1)").decode([1, 0, 1])

    def test_check_rejects_foreign_scalar(self):
        with pytest.raises(MixedField):
            GF(3).check(Fraction(1, 2))
