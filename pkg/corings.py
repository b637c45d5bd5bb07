"""
Corings, bialgebras and Hopf algebras by structure constants, and their
axiom checkers.

A coring over a base algebra R is stored over the ground field k: the
carrier has a k-basis, R acts on both sides by matrices, the counit lands
in R and the comultiplication is a lift into C (x)_k C.  Checks project
into C (x)_R C and C (x)_R C (x)_R C, computed as quotients by the
balancing relations of a generating set of R.

Every basis vector carries a ``degree`` (the grading, used by "graded"
checks and by the antipode recursion) and a ``parity`` (the Koszul sign).
"""

from __future__ import annotations

import copy
import logging
import random
from dataclasses import dataclass, field as dc_field, fields as dc_fields
from itertools import product
from typing import Callable

from errors import InfiniteDimensional, NotConnected, NotGalois
from fields import FieldSpec, Scalar
from linalg import GradedVectorSpace, Solver, SparseMatrix, Subspace, Vector, axpy, vscale
from models import Report
from presentations import (
    EXTERIOR,
    FIELD_EXTENSION,
    AlgebraPresentation,
    GradedAlgebra,
    Variable,
    elementary_abelian_hopf,
    ground_algebra,
    realize,
)

log = logging.getLogger(__name__)


def koszul(field: FieldSpec, a: int, b: int) -> Scalar:
    """(-1)^(a*b) as a field element."""
    return field.neg(field.one) if (a * b) % 2 else field.one


def _tensor(field: FieldSpec, u: Vector, v: Vector) -> Vector:
    out: Vector = {}
    for i, x in u.items():
        for j, y in v.items():
            key = (i if isinstance(i, tuple) else (i,)) + (j if isinstance(j, tuple) else (j,))
            c = field.mul(x, y)
            prev = out.get(key)
            c = c if prev is None else field.add(prev, c)
            if field.is_zero(c):
                out.pop(key, None)
            else:
                out[key] = c
    return out


# ---- data ----


@dataclass
class StableOrigin:
    """The shifted point a stable coring was extracted at.

    ``unlifted`` holds the basis indices whose comultiplication has no lift
    through the pairing; their ``comult`` rows are left empty.
    """

    p: int
    r: int
    point: tuple[int, ...]
    projective_dims: dict[str, int] = dc_field(default_factory=dict)
    unlifted: tuple[int, ...] = ()


@dataclass(kw_only=True)
class Coring:
    """A coring over ``base``; over the ground field when ``base`` is one-dimensional.

    ``truncation`` bounds ``hdegs`` (homological, defaulting to ``parities``)
    and ``degrees``.
    """

    field: FieldSpec
    space: GradedVectorSpace
    comult: dict[int, Vector]
    counit: dict[int, Vector]
    parities: tuple[int, ...] = ()
    base: GradedAlgebra | None = None
    left_action: dict[int, SparseMatrix] = dc_field(default_factory=dict)
    right_action: dict[int, SparseMatrix] = dc_field(default_factory=dict)
    name: str = ""
    graded: bool = True
    truncation: tuple[int, int] | None = None
    hdegs: tuple[int, ...] = ()
    origin: StableOrigin | None = None

    def __post_init__(self) -> None:
        if not self.parities:
            self.parities = (0,) * self.space.dim
        if not self.hdegs:
            self.hdegs = self.parities
        if self.base is None:
            self.base = ground_algebra(self.field)
        if not self.left_action and self.base.dim == 1:
            ident = SparseMatrix.identity(self.field, self.dim)
            self.left_action = {0: ident}
            self.right_action = {0: ident}

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.space.degrees

    @property
    def over_field(self) -> bool:
        return self.base.dim == 1

    def basis_vector(self, i: int) -> Vector:
        return {i: self.field.one}

    def delta(self, v: Vector) -> Vector:
        out: Vector = {}
        for i, x in v.items():
            axpy(self.field, out, x, self.comult.get(i, {}))
        return out

    def eps(self, v: Vector) -> Vector:
        out: Vector = {}
        for i, x in v.items():
            axpy(self.field, out, x, self.counit.get(i, {}))
        return out

    def eps_scalar(self, v: Vector) -> Scalar:
        """Counit over a field base, as a scalar."""
        return self.eps(v).get(0, self.field.zero)

    def act_left(self, r: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for b, x in r.items():
            axpy(self.field, out, x, self.left_action[b].apply(v))
        return out

    def act_right(self, v: Vector, r: Vector) -> Vector:
        out: Vector = {}
        for b, x in r.items():
            axpy(self.field, out, x, self.right_action[b].apply(v))
        return out

    def in_range(self, *indices: int) -> bool:
        """Whether a product of these basis vectors lies inside the truncation."""
        if self.truncation is None:
            return True
        s_max, d_max = self.truncation
        return (
            sum(self.hdegs[i] for i in indices) <= s_max
            and sum(self.degrees[i] for i in indices) <= d_max
        )

    def top_occupied(self) -> bool:
        """True when basis vectors sit in the top computed degree of either grading."""
        if self.truncation is None:
            return False
        s_max, d_max = self.truncation
        return any(h == s_max for h in self.hdegs) or any(d == d_max for d in self.degrees)

    def copy(self) -> Coring:
        return copy.deepcopy(self)


@dataclass(kw_only=True)
class Bialgebra(Coring):
    """A coalgebra over a field together with a multiplication and unit."""

    mult: dict = dc_field(default_factory=dict)
    unit: Vector = dc_field(default_factory=dict)

    def multiply(self, u: Vector, v: Vector) -> Vector:
        f = self.field
        out: Vector = {}
        for i, x in u.items():
            for j, y in v.items():
                prod = self.mult.get((i, j))
                if prod:
                    axpy(f, out, f.mul(x, y), prod)
        return out

    @property
    def unit_index(self) -> int | None:
        if len(self.unit) == 1:
            (k, c), = self.unit.items()
            if c == self.field.one:
                return k
        return None


@dataclass(kw_only=True)
class HopfAlgebra(Bialgebra):
    antipode: dict[int, Vector] = dc_field(default_factory=dict)

    def apply_antipode(self, v: Vector) -> Vector:
        out: Vector = {}
        for i, x in v.items():
            axpy(self.field, out, x, self.antipode.get(i, {}))
        return out


# ---- balanced tensor products ----


class BalancedTensor:
    """C (x)_R ... (x)_R C as a quotient of C (x)_k ... (x)_k C."""

    def __init__(self, c: Coring, factors: int):
        self.coring = c
        self.factors = factors
        self.relations = Subspace(c.field)
        if c.over_field:
            return
        f = c.field
        gens = c.base.generators or [c.base.basis_vector(b) for b in range(c.base.dim)]
        minus = f.neg(f.one)
        for g in gens:
            right = {a: c.act_right(c.basis_vector(a), g) for a in range(c.dim)}
            left = {a: c.act_left(g, c.basis_vector(a)) for a in range(c.dim)}
            for slot in range(factors - 1):
                for idx in product(range(c.dim), repeat=factors):
                    a, b = idx[slot], idx[slot + 1]
                    pre = idx[:slot]
                    post = idx[slot + 2 :]
                    rel: Vector = {}
                    for x, cx in right[a].items():
                        rel[pre + (x, b) + post] = cx
                    lifted = {pre + (a, y) + post: cy for y, cy in left[b].items()}
                    axpy(f, rel, minus, lifted)
                    if rel:
                        self.relations.add(rel)
        log.debug("balanced tensor of %d factors: %d relations", factors, self.relations.dim)

    def reduce(self, v: Vector) -> Vector:
        return self.relations.reduce(v)

    def is_zero(self, v: Vector) -> bool:
        return not self.reduce(v)


# ---- checkers ----


TensorEquality = Callable[[Vector, Vector, int], bool]


class BalancedEquality:
    """Compare tensors of 2 or 3 factors in the balanced quotient."""

    def __init__(self, c: Coring):
        self.coring = c
        self.tensors: dict[int, BalancedTensor] = {}

    def __call__(self, lhs: Vector, rhs: Vector, factors: int) -> bool:
        if factors not in self.tensors:
            self.tensors[factors] = BalancedTensor(self.coring, factors)
        return self.tensors[factors].is_zero(_sub(self.coring.field, lhs, rhs))


def check_coring(c: Coring, equal: TensorEquality | None = None) -> Report:
    """Bimodule, comultiplication/counit bimodule maps, coassociativity and counit laws.

    ``equal(lhs, rhs, factors)`` decides equality in C (x)_R C or
    C (x)_R C (x)_R C; it defaults to the balanced quotient.
    """
    f = c.field
    report = Report(subject=c.name or "coring")
    labels = c.labels
    base = c.base
    gens = base.generators or [base.basis_vector(b) for b in range(base.dim)]
    equal = equal or BalancedEquality(c)

    report.add("bimodule", _bimodule_witness(c, gens))

    witness = None
    if not c.over_field:
        for i in range(c.dim):
            e = c.basis_vector(i)
            for g in gens:
                lhs = c.delta(c.act_left(g, e))
                rhs = _act_slot(c, c.delta(e), g, left=True)
                lhs2 = c.delta(c.act_right(e, g))
                rhs2 = _act_slot(c, c.delta(e), g, left=False)
                if not equal(lhs, rhs, 2) or not equal(lhs2, rhs2, 2):
                    witness = labels[i]
                    break
            if witness:
                break
    report.add("comult_bimodule_map", witness)

    witness = None
    if not c.over_field:
        for i in range(c.dim):
            e = c.basis_vector(i)
            for g in gens:
                if c.eps(c.act_left(g, e)) != base.multiply(g, c.eps(e)) or c.eps(
                    c.act_right(e, g)
                ) != base.multiply(c.eps(e), g):
                    witness = labels[i]
                    break
            if witness:
                break
    report.add("counit_bimodule_map", witness)

    witness = None
    for i in range(c.dim):
        d = c.comult.get(i, {})
        lhs: Vector = {}
        rhs: Vector = {}
        for (j, k), x in d.items():
            axpy(f, lhs, x, _tensor(f, c.delta(c.basis_vector(j)), {k: f.one}))
            axpy(f, rhs, x, _tensor(f, {j: f.one}, c.delta(c.basis_vector(k))))
        if not equal(lhs, rhs, 3):
            witness = labels[i]
            break
    report.add("coassociativity", witness)

    left_w = right_w = None
    for i in range(c.dim):
        e = c.basis_vector(i)
        d = c.comult.get(i, {})
        left: Vector = {}
        right: Vector = {}
        for (j, k), x in d.items():
            axpy(f, left, x, c.act_left(c.eps(c.basis_vector(j)), c.basis_vector(k)))
            axpy(f, right, x, c.act_right(c.basis_vector(j), c.eps(c.basis_vector(k))))
        if left_w is None and left != e:
            left_w = labels[i]
        if right_w is None and right != e:
            right_w = labels[i]
    report.add("left_counit", left_w)
    report.add("right_counit", right_w)

    if c.graded:
        report.add("graded", _graded_witness(c))
    report.notes["symmetric_action"] = all(
        c.left_action[b] == c.right_action[b] for b in range(base.dim)
    )
    return report


def _sub(f: FieldSpec, u: Vector, v: Vector) -> Vector:
    out = dict(u)
    axpy(f, out, f.neg(f.one), v)
    return out


def _act_slot(c: Coring, t: Vector, r: Vector, left: bool) -> Vector:
    """Act by r on the first factor (left) or the last factor (right) of a tensor."""
    f = c.field
    out: Vector = {}
    for key, x in t.items():
        if left:
            image = c.act_left(r, {key[0]: f.one})
            axpy(f, out, x, {(a,) + key[1:]: y for a, y in image.items()})
        else:
            image = c.act_right({key[-1]: f.one}, r)
            axpy(f, out, x, {key[:-1] + (a,): y for a, y in image.items()})
    return out


def _bimodule_witness(c: Coring, gens: list[Vector]) -> str | None:
    base = c.base
    ident = SparseMatrix.identity(c.field, c.dim)

    def left(r: Vector) -> SparseMatrix:
        m = SparseMatrix.zero(c.field, c.dim, c.dim)
        for b, x in r.items():
            m = m + c.left_action[b].scale(x)
        return m

    def right(r: Vector) -> SparseMatrix:
        m = SparseMatrix.zero(c.field, c.dim, c.dim)
        for b, x in r.items():
            m = m + c.right_action[b].scale(x)
        return m

    if left(base.unit) != ident:
        return "left unit"
    if right(base.unit) != ident:
        return "right unit"
    for g in gens:
        for b in range(base.dim):
            e = base.basis_vector(b)
            if left(base.multiply(g, e)) != left(g) @ left(e):
                return f"left {base.labels[b]}"
            if right(base.multiply(e, g)) != right(g) @ right(e):
                return f"right {base.labels[b]}"
        for h in gens:
            if left(g) @ right(h) != right(h) @ left(g):
                return "actions do not commute"
    return None


def _graded_witness(c: Coring) -> str | None:
    deg = c.degrees
    bdeg = c.base.degrees
    for i in range(c.dim):
        if any(deg[j] + deg[k] != deg[i] for (j, k) in c.comult.get(i, {})):
            return c.labels[i]
        if any(bdeg[b] != deg[i] for b in c.counit.get(i, {})):
            return c.labels[i]
    return None


def check_bialgebra(b: Bialgebra) -> Report:
    """Coalgebra axioms plus algebra axioms and the bialgebra compatibility."""
    f = b.field
    report = check_coring(b)
    report.subject = b.name or "bialgebra"
    labels = b.labels
    n = b.dim
    e = b.basis_vector

    witness = None
    for i, j, k in product(range(n), repeat=3):
        if not b.in_range(i, j, k):
            continue
        if b.multiply(b.multiply(e(i), e(j)), e(k)) != b.multiply(e(i), b.multiply(e(j), e(k))):
            witness = f"({labels[i]}, {labels[j]}, {labels[k]})"
            break
    report.add("associativity", witness)

    witness = None
    for i in range(n):
        if b.multiply(b.unit, e(i)) != e(i) or b.multiply(e(i), b.unit) != e(i):
            witness = labels[i]
            break
    report.add("unitality", witness)

    unit_ok = b.delta(b.unit) == _tensor(f, b.unit, b.unit) and b.eps_scalar(b.unit) == f.one
    report.add("unit_coalgebra_map", None if unit_ok else "1")

    eps_w = delta_w = None
    for i, j in product(range(n), repeat=2):
        if not b.in_range(i, j):
            continue
        prod_ = b.multiply(e(i), e(j))
        if eps_w is None and b.eps_scalar(prod_) != f.mul(b.eps_scalar(e(i)), b.eps_scalar(e(j))):
            eps_w = f"({labels[i]}, {labels[j]})"
        if delta_w is None and b.delta(prod_) != _delta_product(b, i, j):
            delta_w = f"({labels[i]}, {labels[j]})"
        if eps_w and delta_w:
            break
    report.add("counit_multiplicative", eps_w)
    report.add("comult_multiplicative", delta_w)

    if b.graded:
        witness = None
        for (i, j), prod_ in b.mult.items():
            if any(b.degrees[k] != b.degrees[i] + b.degrees[j] for k in prod_):
                witness = f"({labels[i]}, {labels[j]})"
                break
        report.add("mult_graded", witness)
    return report


def _delta_product(b: Bialgebra, i: int, j: int) -> Vector:
    """Delta(e_i) * Delta(e_j) in the Koszul-signed tensor product algebra."""
    f = b.field
    out: Vector = {}
    for (x1, x2), c1 in b.comult.get(i, {}).items():
        for (y1, y2), c2 in b.comult.get(j, {}).items():
            sign = koszul(f, b.parities[x2], b.parities[y1])
            left = b.multiply({x1: f.one}, {y1: f.one})
            right = b.multiply({x2: f.one}, {y2: f.one})
            axpy(f, out, f.mul(sign, f.mul(c1, c2)), _tensor(f, left, right))
    return out


def check_hopf(h: HopfAlgebra) -> Report:
    """Bialgebra axioms plus both antipode identities."""
    f = h.field
    report = check_bialgebra(h)
    report.subject = h.name or "hopf algebra"
    left_w = right_w = None
    for i in range(h.dim):
        target = vscale(f, h.eps_scalar(h.basis_vector(i)), h.unit)
        left: Vector = {}
        right: Vector = {}
        for (j, k), x in h.comult.get(i, {}).items():
            axpy(f, left, x, h.multiply(h.apply_antipode({j: f.one}), {k: f.one}))
            axpy(f, right, x, h.multiply({j: f.one}, h.apply_antipode({k: f.one})))
        if left_w is None and left != target:
            left_w = h.labels[i]
        if right_w is None and right != target:
            right_w = h.labels[i]
    report.add("antipode_left", left_w)
    report.add("antipode_right", right_w)
    return report


def check(obj: Coring) -> Report:
    """Dispatch to the most specific checker."""
    if isinstance(obj, HopfAlgebra):
        return check_hopf(obj)
    if isinstance(obj, Bialgebra):
        return check_bialgebra(obj)
    return check_coring(obj)


# ---- antipode ----


def _connected_grading(b: Bialgebra) -> tuple[int, ...]:
    unit = b.unit_index
    if unit is None:
        raise NotConnected("the unit is not a basis vector")
    for grading in (b.degrees, b.parities):
        if grading[unit] == 0 and all(g > 0 for i, g in enumerate(grading) if i != unit):
            return grading
    raise NotConnected("no grading in which only the unit sits in degree 0")


def antipode(b: Bialgebra) -> dict[int, Vector]:
    """Antipode of a connected graded bialgebra by recursion on the degree.

    S(1) = 1 and S(x) = -sum S(x') x'' over the terms of Delta(x) whose right
    factor is not the unit.
    """
    f = b.field
    grading = _connected_grading(b)
    unit = b.unit_index
    result: dict[int, Vector] = {unit: {unit: f.one}}
    for i in sorted(range(b.dim), key=lambda k: (grading[k], k)):
        if i == unit:
            continue
        value: Vector = {}
        for (j, k), x in b.comult.get(i, {}).items():
            if k == unit:
                continue
            if j not in result:
                raise NotConnected(f"{b.labels[i]}: coproduct term {b.labels[j]} is not of lower degree")
            axpy(f, value, f.neg(x), b.multiply(result[j], {k: f.one}))
        result[i] = value
    return result


def with_antipode(b: Bialgebra) -> HopfAlgebra:
    values = {f.name: getattr(b, f.name) for f in dc_fields(b) if f.name != "antipode"}
    return HopfAlgebra(**values, antipode=antipode(b))


# ---- constructors ----


def exterior_bialgebra(n: int, mode: str = "graded", field: FieldSpec | None = None) -> HopfAlgebra:
    """Exterior Hopf algebra on n primitive generators e1..en."""
    if mode not in ("graded", "ungraded"):
        raise ValueError("mode must be 'graded' or 'ungraded'")
    field = field or FieldSpec(0)
    graded = mode == "graded"
    pres = AlgebraPresentation(
        kind=EXTERIOR,
        field=field,
        variables=tuple(Variable(f"e{i + 1}", 1 if graded else 0) for i in range(n)),
    )
    algebra = realize(pres, n)
    subsets = [_subset_of(label, n) for label in algebra.labels]
    index = {s: i for i, s in enumerate(subsets)}
    minus = field.neg(field.one)
    comult: dict[int, Vector] = {}
    for i, s in enumerate(subsets):
        terms: Vector = {}
        for mask in product((0, 1), repeat=n):
            if any(m and not x for m, x in zip(mask, s)):
                continue
            rest = tuple(x - m for x, m in zip(s, mask))
            swaps = sum(1 for p in range(n) if mask[p] for q in range(p) if rest[q])
            terms[(index[mask], index[rest])] = field.one if swaps % 2 == 0 else minus
        comult[i] = terms
    unit = algebra.unit
    (u, _), = unit.items()
    bialgebra = Bialgebra(
        field=field,
        space=algebra.space,
        parities=tuple(sum(s) for s in subsets),
        comult=comult,
        counit={u: {0: field.one}},
        mult=algebra.mult,
        unit=dict(unit),
        name=f"exterior({n}, {mode}, {field.name})",
        graded=graded,
    )
    return with_antipode(bialgebra)


def _subset_of(label: str, n: int) -> tuple[int, ...]:
    chosen = set() if label == "1" else {int(part[1:]) - 1 for part in label.split("*")}
    return tuple(1 if i in chosen else 0 for i in range(n))


def group_algebra_hopf(p: int, r: int, degree_mode: str = "graded") -> HopfAlgebra:
    """kE with its primitive Hopf structure, as a checkable Hopf algebra."""
    algebra, hopf = elementary_abelian_hopf(p, r, degree_mode)
    f = algebra.field
    return HopfAlgebra(
        field=f,
        space=algebra.space,
        comult=hopf.comult,
        counit={i: {0: c} for i, c in hopf.counit.items()},
        mult=algebra.mult,
        unit=dict(algebra.unit),
        antipode=hopf.antipode,
        name=f"GF({p})E({r})",
        graded=degree_mode == "graded",
    )


def trivial_coring(base: GradedAlgebra) -> Coring:
    """R as a coring over itself: Delta(r) = r (x) 1, counit the identity."""
    f = base.field
    comult = {}
    for i in range(base.dim):
        comult[i] = _tensor(f, {i: f.one}, base.unit)
    return Coring(
        field=f,
        space=base.space,
        comult=comult,
        counit={i: {i: f.one} for i in range(base.dim)},
        base=base,
        left_action={b: base.left_matrix(base.basis_vector(b)) for b in range(base.dim)},
        right_action={b: base.right_matrix(base.basis_vector(b)) for b in range(base.dim)},
        name=f"trivial coring {base.name}",
    )


# ---- duality ----


def dual_algebra(c: Coring, strict: bool = False) -> GradedAlgebra:
    """Graded dual algebra: product Delta*, unit the counit, degrees negated.

    Over a non-field base this is the left dual ring Hom_R(C, R) instead,
    as an algebra over the ground field.
    """
    if not c.over_field:
        return _left_dual_ring(c)
    if strict and c.top_occupied():
        raise InfiniteDimensional("classes in the top computed degree; enlarge the truncation")
    f = c.field
    mult: dict = {}
    for i, terms in c.comult.items():
        for (j, k), x in terms.items():
            axpy(f, mult.setdefault((j, k), {}), x, {i: f.one})
    mult = {key: v for key, v in mult.items() if v}
    unit = {i: v[0] for i, v in c.counit.items() if v.get(0) is not None and not f.is_zero(v[0])}
    augmentation = None
    if isinstance(c, Bialgebra):
        augmentation = dict(c.unit)
    return GradedAlgebra(
        field=f,
        space=GradedVectorSpace(tuple(-d for d in c.degrees), tuple(f"{lab}*" for lab in c.labels)),
        mult=mult,
        unit=unit,
        augmentation=augmentation,
        degree_bound=None,
        complete=True,
        name=f"dual({c.name})",
    )


def _left_dual_ring(c: Coring) -> GradedAlgebra:
    """Left R-linear maps C -> R with (phi * psi)(x) = psi(x_(1) phi(x_(2))) and unit the counit.

    A map is stored as the vector with coordinate a * dim R + b for the
    b-th base coordinate of phi(e_a).
    """
    f = c.field
    base = c.base
    m = base.dim
    gens = base.generators or [base.basis_vector(b) for b in range(m)]
    entries = []
    row = 0
    for g in gens:
        left_of = [base.multiply(g, base.basis_vector(b)) for b in range(m)]
        for a in range(c.dim):
            moved = c.act_left(g, c.basis_vector(a))
            for b in range(m):
                eq: Vector = {}
                for a2, x in moved.items():
                    axpy(f, eq, x, {a2 * m + b: f.one})
                for b2 in range(m):
                    y = left_of[b2].get(b)
                    if y is not None:
                        axpy(f, eq, f.neg(y), {a * m + b2: f.one})
                entries.extend((row, var, x) for var, x in eq.items())
                row += 1
    constraints = SparseMatrix.from_entries(f, row, c.dim * m, entries)
    maps = Subspace(f, constraints.kernel()).basis()

    def evaluate(phi: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for a, x in v.items():
            for b in range(m):
                y = phi.get(a * m + b)
                if y is not None:
                    axpy(f, out, f.mul(x, y), {b: f.one})
        return out

    def convolve(phi: Vector, psi: Vector) -> Vector:
        out: Vector = {}
        for a in range(c.dim):
            value: Vector = {}
            for (j, k), x in c.comult.get(a, {}).items():
                moved = c.act_right(c.basis_vector(j), evaluate(phi, c.basis_vector(k)))
                axpy(f, value, x, evaluate(psi, moved))
            for b, y in value.items():
                out[a * m + b] = y
        return out

    solver = Solver(f, maps)
    mult: dict = {}
    for i, j in product(range(len(maps)), repeat=2):
        coeffs = solver.express(convolve(maps[i], maps[j]))
        if coeffs is None:
            raise InfiniteDimensional(f"{c.name}: convolution leaves Hom_R(C, R)")
        if coeffs:
            mult[(i, j)] = coeffs
    counit: Vector = {}
    for a, image in c.counit.items():
        for b, x in image.items():
            counit[a * m + b] = x
    unit = solver.express(counit) or {}
    log.debug("left dual ring of %s: dim %d", c.name, len(maps))
    return GradedAlgebra(
        field=f,
        space=GradedVectorSpace((0,) * len(maps), tuple(f"phi{i}" for i in range(len(maps)))),
        mult=mult,
        unit=unit,
        augmentation=None,
        degree_bound=None,
        complete=True,
        name=f"dual({c.name})",
    )


def dual_bialgebra(b: Bialgebra, strict: bool = False) -> Bialgebra:
    """Graded dual bialgebra: product Delta*, coproduct mult*."""
    f = b.field
    algebra = dual_algebra(b, strict=strict)
    comult: dict[int, Vector] = {}
    for (i, j), prod_ in b.mult.items():
        for k, x in prod_.items():
            axpy(f, comult.setdefault(k, {}), x, {(i, j): f.one})
    counit = {i: {0: x} for i, x in b.unit.items()}
    cls = HopfAlgebra if isinstance(b, HopfAlgebra) else Bialgebra
    extra = {}
    if cls is HopfAlgebra:
        transpose: dict[int, Vector] = {}
        for i, image in b.antipode.items():
            for j, x in image.items():
                transpose.setdefault(j, {})[i] = x
        extra["antipode"] = transpose
    return cls(
        field=f,
        space=algebra.space,
        parities=b.parities,
        comult=comult,
        counit=counit,
        mult=algebra.mult,
        unit=algebra.unit,
        name=f"dual({b.name})",
        graded=b.graded,
        truncation=None,
        **extra,
    )


def same_structure(a: Bialgebra, b: Bialgebra) -> bool:
    """Equal structure constants in the given bases."""
    def clean(table: dict) -> dict:
        return {k: v for k, v in table.items() if v}

    return (
        a.dim == b.dim
        and clean(a.comult) == clean(b.comult)
        and clean(a.counit) == clean(b.counit)
        and clean(a.mult) == clean(b.mult)
        and a.unit == b.unit
    )


def isomorphism_report(a: Bialgebra, b: Bialgebra, images: list[Vector]) -> Report:
    """Check that e_i -> images[i] is a bialgebra isomorphism a -> b."""
    f = a.field
    report = Report(subject=f"{a.name} -> {b.name}")
    phi = SparseMatrix(f, b.dim, a.dim, dict(enumerate(images)))
    report.add("bijective", None if a.dim == b.dim and phi.rank() == a.dim else "rank")

    def img(v: Vector) -> Vector:
        return phi.apply(v)

    def img2(t: Vector) -> Vector:
        out: Vector = {}
        for (j, k), x in t.items():
            axpy(f, out, x, _tensor(f, images[j], images[k]))
        return out

    mult_w = comult_w = counit_w = None
    for i in range(a.dim):
        if comult_w is None and img2(a.delta({i: f.one})) != b.delta(images[i]):
            comult_w = a.labels[i]
        if counit_w is None and a.eps_scalar({i: f.one}) != b.eps_scalar(images[i]):
            counit_w = a.labels[i]
        for j in range(a.dim):
            if mult_w is None and a.in_range(i, j):
                if img(a.multiply({i: f.one}, {j: f.one})) != b.multiply(images[i], images[j]):
                    mult_w = f"({a.labels[i]}, {a.labels[j]})"
    report.add("preserves_mult", mult_w)
    report.add("preserves_unit", None if img(a.unit) == b.unit else "1")
    report.add("preserves_comult", comult_w)
    report.add("preserves_counit", counit_w)
    return report


# ---- primitives and grouplikes ----


def primitives(b: Bialgebra) -> list[Vector]:
    """RREF basis of { x : Delta(x) = x (x) 1 + 1 (x) x }."""
    f = b.field
    keys: dict = {}
    columns = {}
    for i in range(b.dim):
        e = {i: f.one}
        diff = _sub(f, b.delta(e), _tensor(f, e, b.unit))
        diff = _sub(f, diff, _tensor(f, b.unit, e))
        columns[i] = {keys.setdefault(k, len(keys)): x for k, x in diff.items()}
    m = SparseMatrix(f, len(keys), b.dim, columns)
    return Subspace(f, m.kernel()).basis()


def bracket_closed(b: Bialgebra, prims: list[Vector]) -> bool:
    """Whether xy - (-1)^{|x||y|} yx of basis primitives stays primitive."""
    f = b.field
    space = Subspace(f, prims)
    for x, y in product(prims, repeat=2):
        px = _parity_of(b, x)
        py = _parity_of(b, y)
        if px is None or py is None:
            continue
        if not all(b.in_range(i, j) for i in x for j in y):
            continue
        br = _sub(f, b.multiply(x, y), vscale(f, koszul(f, px, py), b.multiply(y, x)))
        if not space.contains(br):
            return False
    return True


def _parity_of(b: Bialgebra, v: Vector) -> int | None:
    parities = {b.parities[i] % 2 for i in v}
    return parities.pop() if len(parities) == 1 else None


def grouplikes(b: Bialgebra, search_limit: int = 4096) -> list[Vector]:
    """Grouplike elements: Delta(g) = g (x) g with counit 1.

    A grouplike lies in the degree-0 slice of any non-negative grading
    preserved by Delta.  Inside that slice finite fields are searched
    exhaustively when small enough; otherwise candidates are restricted to
    scaled basis vectors.
    """
    f = b.field
    slice_ = list(range(b.dim))
    for grading in (b.degrees, b.parities):
        if all(g >= 0 for g in grading):
            slice_ = [i for i in slice_ if grading[i] == 0]
    candidates: list[Vector] = []
    if f.order is not None and f.order ** len(slice_) <= search_limit:
        for coeffs in product(list(f.elements()), repeat=len(slice_)):
            v = {i: c for i, c in zip(slice_, coeffs) if not f.is_zero(c)}
            if v:
                candidates.append(v)
    else:
        for i in slice_:
            eps = b.eps_scalar({i: f.one})
            if not f.is_zero(eps):
                candidates.append({i: f.inv(eps)})
    found = []
    for g in candidates:
        if b.eps_scalar(g) == f.one and b.delta(g) == _tensor(f, g, g):
            found.append(g)
    return found


# ---- Galois extensions ----


@dataclass
class GaloisExtension:
    """L over its prime field K with the automorphisms of L fixing K as K-matrices."""

    base: FieldSpec
    extension: FieldSpec
    automorphisms: list[SparseMatrix]
    algebra: GradedAlgebra

    @property
    def degree(self) -> int:
        return self.extension.degree

    def element_vector(self, x: Scalar) -> Vector:
        """Coordinates of an element of L on the power basis."""
        k = self.base
        if self.extension.extension is None:
            return {} if k.is_zero(x) else {0: x}
        return {i: c for i, c in enumerate(x) if c != k.zero}

    def vector_element(self, v: Vector) -> Scalar:
        big = self.extension
        if big.extension is None:
            return v.get(0, big.zero)
        out = [self.base.zero] * self.degree
        for i, c in v.items():
            out[i] = c
        return tuple(out)

    def check(self) -> Report:
        """Automorphisms permute the roots, form a group, and number [L:K]."""
        report = Report(subject=f"Gal({self.extension.name}/{self.base.name})")
        big = self.extension
        roots_ok = None
        if big.extension is not None:
            for n, sigma in enumerate(self.automorphisms):
                image = self.vector_element(sigma.apply({1: self.base.one}))
                if not big.is_zero(_evaluate_minpoly(big, image)):
                    roots_ok = f"sigma{n}"
                    break
        report.add("permutes_roots", roots_ok)
        closed = None
        for s, t in product(self.automorphisms, repeat=2):
            if not any(s @ t == u for u in self.automorphisms):
                closed = "composition"
                break
        report.add("closed_under_composition", closed)
        report.add("order_equals_degree", None if len(self.automorphisms) == self.degree else str(len(self.automorphisms)))
        return report


def _evaluate_minpoly(big: FieldSpec, x: Scalar) -> Scalar:
    total = big.zero
    power = big.one
    for c in big.extension:
        total = big.add(total, big.mul(big.coerce(c), power))
        power = big.mul(power, x)
    return total


def galois_extension(extension: FieldSpec) -> GaloisExtension:
    """Galois data for a simple extension over its prime field.

    Finite fields use the Frobenius powers; rational extensions are
    supported for quadratic minimal polynomials.
    """
    k = extension.prime_field()
    if extension.extension is None:
        return GaloisExtension(k, extension, [SparseMatrix.identity(k, 1)], ground_algebra(k))
    algebra = realize(AlgebraPresentation(kind=FIELD_EXTENSION, field=extension), 0)
    n = extension.degree
    images: list[Scalar] = []
    if extension.characteristic:
        x = extension.gen()
        for _ in range(n):
            images.append(x)
            power = extension.one
            for _ in range(extension.characteristic):
                power = extension.mul(power, x)
            x = power
    elif n == 2:
        b = extension.extension[1]
        images = [extension.gen(), extension.sub(extension.neg(extension.coerce(b)), extension.gen())]
    else:
        raise NotGalois(f"{extension.name}: only quadratic rational extensions are supported")
    automorphisms = []
    for root in images:
        columns = {}
        power = extension.one
        for j in range(n):
            columns[j] = {i: c for i, c in enumerate(power) if c != k.zero}
            power = extension.mul(power, root)
        automorphisms.append(SparseMatrix(k, n, n, columns))
    g = GaloisExtension(k, extension, automorphisms, algebra)
    report = g.check()
    if not report.passed:
        raise NotGalois(f"{extension.name}: {report.failed()[0].axiom}")
    return g


def galois_coring(g: GaloisExtension) -> Coring:
    """L (x)_K L over L: counit the multiplication, Delta(a (x) b) = (a (x) 1) (x)_L (1 (x) b)."""
    k = g.base
    big = g.algebra
    n = big.dim
    labels = tuple(f"{big.labels[i]}⊗{big.labels[j]}" for i in range(n) for j in range(n))
    comult = {i * n + j: {(i * n, j): k.one} for i in range(n) for j in range(n)}
    counit = {i * n + j: big.multiply({i: k.one}, {j: k.one}) for i in range(n) for j in range(n)}
    left = {}
    right = {}
    for m in range(n):
        left[m] = SparseMatrix.from_function(
            k, n * n, n * n, lambda col, m=m: _left_first(big, m, col, n)
        )
        right[m] = SparseMatrix.from_function(
            k, n * n, n * n, lambda col, m=m: _right_second(big, m, col, n)
        )
    return Coring(
        field=k,
        space=GradedVectorSpace((0,) * (n * n), labels),
        comult=comult,
        counit=counit,
        base=big,
        left_action=left,
        right_action=right,
        name=f"galois coring {g.extension.name}",
    )


def _left_first(big: GradedAlgebra, m: int, col: int, n: int) -> Vector:
    i, j = divmod(col, n)
    return {a * n + j: c for a, c in big.multiply({m: big.field.one}, {i: big.field.one}).items()}


def _right_second(big: GradedAlgebra, m: int, col: int, n: int) -> Vector:
    i, j = divmod(col, n)
    return {i * n + b: c for b, c in big.multiply({j: big.field.one}, {m: big.field.one}).items()}


def coring_tensor(d: Coring, g: GaloisExtension) -> Coring:
    """d (x)_K (L (x)_K L) over L with componentwise structure maps."""
    if not d.over_field:
        raise ValueError("coring_tensor needs a coalgebra over the base field")
    gc = galois_coring(g)
    k = g.base
    n2 = gc.dim
    dim = d.dim * n2
    labels = tuple(f"{d.labels[a]}⊗{gc.labels[b]}" for a in range(d.dim) for b in range(n2))
    comult: dict[int, Vector] = {}
    counit: dict[int, Vector] = {}
    for a in range(d.dim):
        eps_d = d.eps_scalar({a: k.one})
        for b in range(n2):
            terms: Vector = {}
            for (x, y), c in d.comult.get(a, {}).items():
                for (u, v), c2 in gc.comult[b].items():
                    terms[(x * n2 + u, y * n2 + v)] = k.mul(c, c2)
            comult[a * n2 + b] = {key: c for key, c in terms.items() if not k.is_zero(c)}
            counit[a * n2 + b] = vscale(k, eps_d, gc.counit[b])
    left = {
        m: SparseMatrix.identity(k, d.dim).kron(mat) for m, mat in gc.left_action.items()
    }
    right = {
        m: SparseMatrix.identity(k, d.dim).kron(mat) for m, mat in gc.right_action.items()
    }
    return Coring(
        field=k,
        space=GradedVectorSpace(
            tuple(d.degrees[a] for a in range(d.dim) for _ in range(n2)), labels
        ),
        parities=tuple(d.parities[a] for a in range(d.dim) for _ in range(n2)),
        hdegs=tuple(d.hdegs[a] for a in range(d.dim) for _ in range(n2)),
        comult=comult,
        counit=counit,
        base=gc.base,
        left_action=left,
        right_action=right,
        name=f"{d.name} ⊗ {gc.name}",
        graded=d.graded,
        truncation=d.truncation,
    )


def as_coalgebra(b: Coring) -> Coring:
    """Forget any algebra structure."""
    return Coring(
        field=b.field,
        space=b.space,
        comult=b.comult,
        counit=b.counit,
        parities=b.parities,
        base=b.base,
        left_action=b.left_action,
        right_action=b.right_action,
        name=b.name,
        graded=b.graded,
        truncation=b.truncation,
        hdegs=b.hdegs,
    )


# ---- mutation ----


def perturb(obj: Coring, seed: int, target: str = "comult") -> Coring:
    """Copy of ``obj`` with one structure constant of ``target`` changed.

    ``target`` is one of comult, counit, mult, antipode.  A nonzero constant
    c becomes 2c, or 0 in characteristic 2.
    """
    rng = random.Random(seed)
    mutated = obj.copy()
    table = getattr(mutated, target)
    f = obj.field
    entries = sorted((outer, inner) for outer, vec in table.items() for inner in vec)
    if not entries:
        raise ValueError(f"{target} has no constants to perturb")
    outer, inner = entries[rng.randrange(len(entries))]
    vec = table[outer]
    new = f.add(vec[inner], vec[inner])
    if f.is_zero(new):
        del vec[inner]
    else:
        vec[inner] = new
    log.debug("perturbed %s[%s][%s]", target, outer, inner)
    return mutated
