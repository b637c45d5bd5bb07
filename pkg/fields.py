"""
Exact computable fields.

A ``FieldSpec`` is a prime field GF(p), the rationals, or a simple extension
of either given by a monic irreducible minimal polynomial.  Scalars are plain
Python values so that sparse dict arithmetic stays cheap:

- GF(p): ``int`` in 0..p-1
- Q: ``fractions.Fraction``
- extension of degree n: ``tuple`` of n prime-field scalars, low powers first
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Iterator

import sympy

from errors import InvalidField, MixedField, NonPrimeCharacteristic, PresentationSyntaxError

Scalar = Any


@dataclass(frozen=True)
class FieldSpec:
    """An exact field: characteristic plus optional minimal polynomial."""

    characteristic: int = 0
    extension: tuple | None = None  # monic minpoly, low degree first
    generator: str = "a"

    def __post_init__(self) -> None:
        p = self.characteristic
        if p < 0 or (p != 0 and not sympy.isprime(p)):
            raise NonPrimeCharacteristic(f"characteristic {p} is neither 0 nor prime")
        if self.extension is None:
            return
        coeffs = tuple(self._prime_coerce(c) for c in self.extension)
        object.__setattr__(self, "extension", coeffs)
        if len(coeffs) < 3:
            raise InvalidField("minimal polynomial must have degree at least 2")
        if coeffs[-1] != self._prime_one():
            raise InvalidField("minimal polynomial must be monic")
        if not _is_irreducible(coeffs, p):
            raise InvalidField(f"minimal polynomial {self.name} is reducible")

    # ---- naming ----

    @property
    def name(self) -> str:
        if self.extension is None:
            return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"
        poly = format_polynomial(self.extension, self.generator)
        if self.characteristic == 0:
            return f"Q({poly})"
        return f"GF({self.characteristic}^{self.degree};{poly})"

    def __str__(self) -> str:
        return self.name

    @property
    def degree(self) -> int:
        """Degree over the prime field."""
        return 1 if self.extension is None else len(self.extension) - 1

    @property
    def order(self) -> int | None:
        """Number of elements, or None for characteristic 0."""
        if self.characteristic == 0:
            return None
        return self.characteristic**self.degree

    def prime_field(self) -> FieldSpec:
        return FieldSpec(self.characteristic)

    # ---- prime-field arithmetic ----

    def _prime_coerce(self, c: Any) -> Scalar:
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise ValueError(f"{c} is not defined modulo {p}")
                return (c.numerator * pow(c.denominator, -1, p)) % p
            return int(c) % p
        return Fraction(c)

    def _prime_one(self) -> Scalar:
        return 1 if self.characteristic else Fraction(1)

    def _padd(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a + b) % p if p else a + b

    def _psub(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a - b) % p if p else a - b

    def _pmul(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a * b) % p if p else a * b

    def _pinv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / a

    # ---- field arithmetic ----

    @property
    def zero(self) -> Scalar:
        if self.extension is None:
            return 0 if self.characteristic else Fraction(0)
        return tuple(self._prime_coerce(0) for _ in range(self.degree))

    @property
    def one(self) -> Scalar:
        return self.from_int(1)

    def from_int(self, n: int) -> Scalar:
        if self.extension is None:
            return self._prime_coerce(n)
        return (self._prime_coerce(n),) + tuple(
            self._prime_coerce(0) for _ in range(self.degree - 1)
        )

    def gen(self) -> Scalar:
        """The generator of an extension (the class of the variable)."""
        if self.extension is None:
            return self.one
        vec = [self._prime_coerce(0)] * self.degree
        vec[1] = self._prime_one()
        return tuple(vec)

    def power_of_gen(self, k: int) -> Scalar:
        result = self.one
        g = self.gen()
        for _ in range(k):
            result = self.mul(result, g)
        return result

    def is_zero(self, a: Scalar) -> bool:
        return a == self.zero

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if self.extension is None:
            return self._padd(a, b)
        return tuple(self._padd(x, y) for x, y in zip(a, b))

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        if self.extension is None:
            return self._psub(a, b)
        return tuple(self._psub(x, y) for x, y in zip(a, b))

    def neg(self, a: Scalar) -> Scalar:
        return self.sub(self.zero, a)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if self.extension is None:
            return self._pmul(a, b)
        n = self.degree
        zero = self._prime_coerce(0)
        prod = [zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y != zero:
                    prod[i + j] = self._padd(prod[i + j], self._pmul(x, y))
        f = self.extension
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c == zero:
                continue
            for j in range(n):
                prod[k - n + j] = self._psub(prod[k - n + j], self._pmul(c, f[j]))
            prod[k] = zero
        return tuple(prod[:n])

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.extension is None:
            return self._pinv(a)
        # Solve (multiplication by a) x = 1 over the prime field.
        n = self.degree
        basis = [self.power_of_gen(j) for j in range(n)]
        columns = [self.mul(a, b) for b in basis]
        rows = [[columns[j][i] for j in range(n)] + [self.one[i]] for i in range(n)]
        solution = _dense_solve(rows, n, self)
        return tuple(solution)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def scale_int(self, n: int, a: Scalar) -> Scalar:
        return self.mul(self.from_int(n), a)

    # ---- validation / coercion ----

    def check(self, a: Scalar) -> Scalar:
        """Return ``a`` if it is a scalar of this field, else raise MixedField."""
        if self.extension is None:
            if self.characteristic:
                if isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.characteristic:
                    return a
            elif isinstance(a, Fraction):
                return a
        elif isinstance(a, tuple) and len(a) == self.degree:
            inner = self.prime_field()
            for c in a:
                inner.check(c)
            return a
        raise MixedField(f"{a!r} is not an element of {self.name}")

    def coerce(self, value: Any) -> Scalar:
        """Convert ints, fractions, strings or coefficient lists to a scalar."""
        if isinstance(value, (list, tuple)) and self.extension is not None:
            if len(value) != self.degree:
                raise MixedField(f"{value!r} has the wrong length for {self.name}")
            return tuple(self._prime_coerce(_parse_rational(c)) for c in value)
        if isinstance(value, str):
            value = _parse_rational(value)
        if self.extension is None:
            return self._prime_coerce(value)
        return self._embed_prime(self._prime_coerce(value))

    def _embed_prime(self, c: Scalar) -> Scalar:
        return (c,) + tuple(self._prime_coerce(0) for _ in range(self.degree - 1))

    def random(self, rng: random.Random, nonzero: bool = False) -> Scalar:
        while True:
            if self.characteristic:
                coeffs = [rng.randrange(self.characteristic) for _ in range(self.degree)]
            else:
                coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(self.degree)]
            value = coeffs[0] if self.extension is None else tuple(coeffs)
            if not (nonzero and self.is_zero(value)):
                return value

    def elements(self) -> Iterator[Scalar]:
        """All elements of a finite field, zero first."""
        if self.characteristic == 0:
            raise ValueError("the rationals are infinite")
        p = self.characteristic
        if self.extension is None:
            yield from range(p)
            return
        for coeffs in product(range(p), repeat=self.degree):
            yield tuple(coeffs)

    # ---- JSON ----

    def encode(self, a: Scalar) -> Any:
        if self.extension is None:
            return _encode_prime(a, self.characteristic)
        return [_encode_prime(c, self.characteristic) for c in a]

    def decode(self, data: Any) -> Scalar:
        return self.check(self.coerce(data))

    def format(self, a: Scalar) -> str:
        """Short human-readable rendering for labels and tables."""
        if self.extension is None:
            return str(a)
        terms = []
        for k, c in enumerate(a):
            if c == 0:
                continue
            mono = "" if k == 0 else (self.generator if k == 1 else f"{self.generator}^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return "+".join(terms) or "0"


# ---- parsing ----


_FIELD_HEAD = re.compile(r"\s*(Q|GF)\s*")
_INT = re.compile(r"\s*(\d+)\s*")


def parse_field(text: str) -> FieldSpec:
    """Parse a complete field string such as ``GF(2^2;a^2+a+1)``."""
    spec, pos = scan_field(text, 0)
    if text[pos:].strip():
        raise PresentationSyntaxError("trailing characters after field", pos, ["end of input"])
    return spec


def scan_field(text: str, pos: int) -> tuple[FieldSpec, int]:
    """Read a field token starting at ``pos``; return it and the next position."""
    m = _FIELD_HEAD.match(text, pos)
    if not m:
        raise PresentationSyntaxError("expected a field", pos, ["Q", "GF(p)"])
    head, pos = m.group(1), m.end()
    if head == "Q":
        if pos < len(text) and text[pos] == "(":
            close = _matching_paren(text, pos)
            gen, coeffs = parse_polynomial(text[pos + 1 : close], 0, offset=pos + 1)
            return FieldSpec(0, tuple(coeffs), gen), _skip_ws(text, close + 1)
        return FieldSpec(0), pos
    if pos >= len(text) or text[pos] != "(":
        raise PresentationSyntaxError("expected '(' after GF", pos, ["("])
    close = _matching_paren(text, pos)
    body = text[pos + 1 : close]
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+)\s*;(.*))?", body, re.S)
    if not m:
        raise PresentationSyntaxError("malformed GF(...) body", pos + 1, ["p", "p^n;minpoly"])
    p = int(m.group(1))
    if p < 2 or not sympy.isprime(p):
        raise NonPrimeCharacteristic(f"GF({p}): {p} is not prime")
    if m.group(2) is None:
        return FieldSpec(p), _skip_ws(text, close + 1)
    n = int(m.group(2))
    gen, coeffs = parse_polynomial(m.group(3), p, offset=pos + 1 + m.start(3))
    if len(coeffs) - 1 != n:
        raise PresentationSyntaxError(
            f"minimal polynomial has degree {len(coeffs) - 1}, not {n}", pos + 1 + m.start(3)
        )
    return FieldSpec(p, tuple(coeffs), gen), _skip_ws(text, close + 1)


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*(?:([A-Za-z_]\w*)\s*(?:\^\s*(\d+))?)?\s*"
)


def parse_polynomial(text: str, characteristic: int, offset: int = 0) -> tuple[str, list]:
    """Parse a univariate polynomial; return (variable, coefficients low first)."""
    pos = 0
    variable: str | None = None
    terms: dict[int, Fraction] = {}
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise PresentationSyntaxError("malformed polynomial term", offset + pos, ["term"])
        if not first and m.group(1) is None:
            raise PresentationSyntaxError("expected '+' or '-'", offset + pos, ["+", "-"])
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        exp = 0
        if m.group(3):
            if variable is None:
                variable = m.group(3)
            elif variable != m.group(3):
                raise PresentationSyntaxError(
                    "minimal polynomial must be univariate", offset + m.start(3)
                )
            exp = int(m.group(4)) if m.group(4) else 1
        terms[exp] = terms.get(exp, Fraction(0)) + sign * coeff
        pos = m.end()
        first = False
    if not terms:
        raise PresentationSyntaxError("empty polynomial", offset, ["term"])
    degree = max(e for e, c in terms.items() if c != 0) if any(terms.values()) else 0
    coeffs = [terms.get(e, Fraction(0)) for e in range(degree + 1)]
    if characteristic:
        coeffs = [(c.numerator * pow(c.denominator, -1, characteristic)) % characteristic for c in coeffs]
    return variable or "a", coeffs


def format_polynomial(coeffs: tuple, variable: str) -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mono = "" if e == 0 else (variable if e == 1 else f"{variable}^{e}")
        if not mono:
            body = str(abs(c)) if c < 0 else str(c)
        elif c in (1, -1):
            body = mono
        else:
            body = f"{abs(c) if c < 0 else c}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f"{sign}{body}"
    return text


# ---- helpers ----


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _matching_paren(text: str, pos: int) -> int:
    depth = 0
    for i in range(pos, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise PresentationSyntaxError("unbalanced parenthesis", pos, [")"])


def _parse_rational(value: Any) -> Fraction | int:
    if isinstance(value, str):
        return Fraction(value.strip())
    return value


def _encode_prime(c: Scalar, characteristic: int) -> Any:
    if characteristic:
        return int(c)
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _is_irreducible(coeffs: tuple, characteristic: int) -> bool:
    x = sympy.Symbol("x")
    high_first = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(coeffs)]
    if characteristic:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=characteristic)
    else:
        poly = sympy.Poly(high_first, x, domain="QQ")
    return bool(poly.is_irreducible)


def _dense_solve(rows: list[list], n: int, field: FieldSpec) -> list:
    """Solve an n x n system over the prime field of ``field`` (augmented rows)."""
    base = field
    rows = [list(r) for r in rows]
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = base._pinv(rows[col][col])
        rows[col] = [base._pmul(inv, v) for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [base._psub(v, base._pmul(factor, w)) for v, w in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
