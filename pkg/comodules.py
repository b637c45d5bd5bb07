"""
Right comodules over corings and bialgebras.

A comodule over a coring with base R carries a right R-action (matrices on
the ground-field basis) and a coaction lifted into M (x)_k C; axioms are
checked in M (x)_R C and M (x)_R C (x)_R C.
"""

from __future__ import annotations

import copy
import logging
import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from corings import (
    Bialgebra,
    Coring,
    GaloisExtension,
    as_coalgebra,
    coring_tensor,
    dual_algebra,
    galois_coring,
    koszul,
    same_structure,
)
from errors import BaseMismatch, InfiniteDimensional, NotDescendable
from fields import FieldSpec
from linalg import GradedVectorSpace, Solver, SparseMatrix, Subspace, Vector, axpy
from models import Report
from presentations import POLYNOMIAL, AlgebraPresentation, GradedAlgebra, Variable, realize

log = logging.getLogger(__name__)


@dataclass
class Comodule:
    """``coaction[i]`` maps (j, k) to c when rho(e_i) contains c * e_j (x) c_k."""

    coring: Coring
    space: GradedVectorSpace
    coaction: dict[int, Vector]
    parities: tuple[int, ...] = ()
    action: dict[int, SparseMatrix] = dc_field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if not self.parities:
            self.parities = (0,) * self.space.dim
        if not self.action and self.coring.over_field:
            self.action = {0: SparseMatrix.identity(self.field, self.dim)}

    @property
    def field(self) -> FieldSpec:
        return self.coring.field

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    def rho(self, v: Vector) -> Vector:
        out: Vector = {}
        for i, x in v.items():
            axpy(self.field, out, x, self.coaction.get(i, {}))
        return out

    def act(self, v: Vector, r: Vector) -> Vector:
        out: Vector = {}
        for b, x in r.items():
            axpy(self.field, out, x, self.action[b].apply(v))
        return out

    def copy(self) -> Comodule:
        return copy.deepcopy(self)


class _ComoduleTensor:
    """M (x)_R C (x)_R ... (x)_R C as a quotient of the ground-field tensor product."""

    def __init__(self, m: Comodule, factors: int):
        c = m.coring
        f = m.field
        self.relations = Subspace(f)
        if c.over_field:
            return
        gens = c.base.generators or [c.base.basis_vector(b) for b in range(c.base.dim)]
        minus = f.neg(f.one)
        dims = (m.dim,) + (c.dim,) * (factors - 1)
        for g in gens:
            right = [
                {a: m.act({a: f.one}, g) for a in range(m.dim)},
                *({a: c.act_right({a: f.one}, g) for a in range(c.dim)} for _ in range(factors - 2)),
            ]
            left = {a: c.act_left(g, {a: f.one}) for a in range(c.dim)}
            for slot in range(factors - 1):
                for idx in product(*(range(n) for n in dims)):
                    a, b = idx[slot], idx[slot + 1]
                    pre, post = idx[:slot], idx[slot + 2 :]
                    rel = {pre + (x, b) + post: cx for x, cx in right[slot][a].items()}
                    axpy(f, rel, minus, {pre + (a, y) + post: cy for y, cy in left[b].items()})
                    if rel:
                        self.relations.add(rel)

    def is_zero(self, v: Vector) -> bool:
        return self.relations.contains(v)


def check_coaction(m: Comodule) -> Report:
    """Module axioms, R-linearity of rho, counit law and coassociativity."""
    f = m.field
    c = m.coring
    report = Report(subject=m.name or "comodule")
    t2 = _ComoduleTensor(m, 2)
    t3 = _ComoduleTensor(m, 3)

    witness = None
    if not c.over_field:
        ident = SparseMatrix.identity(f, m.dim)
        unit_action = SparseMatrix.zero(f, m.dim, m.dim)
        for b, x in c.base.unit.items():
            unit_action = unit_action + m.action[b].scale(x)
        if unit_action != ident:
            witness = "unit"
        gens = c.base.generators or [c.base.basis_vector(b) for b in range(c.base.dim)]
        for i, g in product(range(m.dim), gens):
            if witness:
                break
            lhs = m.rho(m.act({i: f.one}, g))
            rhs: Vector = {}
            for (j, k), x in m.rho({i: f.one}).items():
                axpy(f, rhs, x, {(j, y): cy for y, cy in c.act_right({k: f.one}, g).items()})
            if not t2.is_zero(_minus(f, lhs, rhs)):
                witness = m.labels[i]
    report.add("module_linear", witness)

    witness = None
    for i in range(m.dim):
        total: Vector = {}
        for (j, k), x in m.coaction.get(i, {}).items():
            axpy(f, total, x, m.act({j: f.one}, c.eps({k: f.one})))
        if total != {i: f.one}:
            witness = m.labels[i]
            break
    report.add("counit", witness)

    witness = None
    for i in range(m.dim):
        lhs: Vector = {}
        rhs: Vector = {}
        for (j, k), x in m.coaction.get(i, {}).items():
            for (a, b), y in m.coaction.get(j, {}).items():
                axpy(f, lhs, f.mul(x, y), {(a, b, k): f.one})
            for (a, b), y in c.comult.get(k, {}).items():
                axpy(f, rhs, f.mul(x, y), {(j, a, b): f.one})
        if not t3.is_zero(_minus(f, lhs, rhs)):
            witness = m.labels[i]
            break
    report.add("coassociativity", witness)

    if c.graded:
        witness = None
        for i in range(m.dim):
            if any(
                m.space.degrees[j] + c.degrees[k] != m.space.degrees[i] for (j, k) in m.coaction.get(i, {})
            ):
                witness = m.labels[i]
                break
        report.add("graded", witness)
    return report


def _minus(f: FieldSpec, u: Vector, v: Vector) -> Vector:
    out = dict(u)
    axpy(f, out, f.neg(f.one), v)
    return out


# ---- standard comodules ----


def regular_comodule(c: Coring) -> Comodule:
    """C over itself via Delta."""
    action = {} if c.over_field else dict(c.right_action)
    return Comodule(
        coring=c,
        space=c.space,
        coaction={i: dict(v) for i, v in c.comult.items()},
        parities=c.parities,
        action=action,
        name=f"regular {c.name}",
    )


def unit_comodule(b: Bialgebra) -> Comodule:
    """The ground field with rho(1) = 1 (x) 1_C."""
    return Comodule(
        coring=b,
        space=GradedVectorSpace((0,), ("1",)),
        coaction={0: {(0, k): x for k, x in b.unit.items()}},
        name="unit",
    )


def zero_comodule(c: Coring) -> Comodule:
    return Comodule(coring=c, space=GradedVectorSpace(), coaction={}, name="zero")


def comodule_tensor(m1: Comodule, m2: Comodule) -> Comodule:
    """rho(m (x) n) = sum (-1)^{|c1||n'|} m' (x) n' (x) c1 c2."""
    b = m1.coring
    if not isinstance(b, Bialgebra) or not isinstance(m2.coring, Bialgebra):
        raise BaseMismatch("comodule_tensor needs comodules over a bialgebra")
    if m2.coring is not b and not same_structure(b, m2.coring):
        raise BaseMismatch(f"{b.name} vs {m2.coring.name}")
    f = b.field
    n2 = m2.dim
    coaction: dict[int, Vector] = {}
    for i1, i2 in product(range(m1.dim), range(n2)):
        terms: Vector = {}
        for (j1, k1), x in m1.coaction.get(i1, {}).items():
            for (j2, k2), y in m2.coaction.get(i2, {}).items():
                sign = koszul(f, b.parities[k1], m2.parities[j2])
                for k, z in b.multiply({k1: f.one}, {k2: f.one}).items():
                    axpy(f, terms, f.mul(sign, f.mul(f.mul(x, y), z)), {(j1 * n2 + j2, k): f.one})
        coaction[i1 * n2 + i2] = terms
    space = GradedVectorSpace(
        tuple(d1 + d2 for d1 in m1.space.degrees for d2 in m2.space.degrees),
        tuple(f"{l1}⊗{l2}" for l1 in m1.labels for l2 in m2.labels),
    )
    return Comodule(
        coring=b,
        space=space,
        coaction=coaction,
        parities=tuple(p1 + p2 for p1 in m1.parities for p2 in m2.parities),
        name=f"({m1.name})⊗({m2.name})",
    )


# ---- morphisms ----


def comodule_hom(m: Comodule, n: Comodule, graded: bool = True) -> list[SparseMatrix]:
    """Basis of the comodule maps M -> N over a field base.

    Solves rho_N o F = (F (x) id) o rho_M for the matrix F; with ``graded`` the
    maps preserve degree.
    """
    if m.coring is not n.coring:
        raise BaseMismatch("comodules over different corings")
    f = m.field
    variables = [
        (b, a)
        for b in range(n.dim)
        for a in range(m.dim)
        if not graded or n.space.degrees[b] == m.space.degrees[a]
    ]
    var_index = {v: i for i, v in enumerate(variables)}
    rows: dict = {}
    columns: dict[int, Vector] = {i: {} for i in range(len(variables))}
    for (b, a), col in var_index.items():
        for (b2, k), x in n.coaction.get(b, {}).items():
            key = rows.setdefault((a, b2, k), len(rows))
            axpy(f, columns[col], x, {key: f.one})
    for a in range(m.dim):
        for (j, k), x in m.coaction.get(a, {}).items():
            for b2 in range(n.dim):
                col = var_index.get((b2, j))
                if col is None:
                    continue
                key = rows.setdefault((a, b2, k), len(rows))
                axpy(f, columns[col], f.neg(x), {key: f.one})
    system = SparseMatrix(f, len(rows), len(variables), columns)
    maps = []
    for v in Subspace(f, system.kernel()).basis():
        entries = [(variables[i][0], variables[i][1], x) for i, x in v.items()]
        maps.append(SparseMatrix.from_entries(f, n.dim, m.dim, entries))
    return maps


def is_comodule_map(m: Comodule, n: Comodule, phi: SparseMatrix) -> bool:
    f = m.field
    for a in range(m.dim):
        lhs: Vector = {}
        for b, x in phi.column(a).items():
            axpy(f, lhs, x, n.coaction.get(b, {}))
        rhs: Vector = {}
        for (j, k), x in m.coaction.get(a, {}).items():
            for b, y in phi.column(j).items():
                axpy(f, rhs, f.mul(x, y), {(b, k): f.one})
        if lhs != rhs:
            return False
    return True


def isomorphic(m: Comodule, n: Comodule, seed: int = 0, attempts: int = 8) -> bool:
    """Equal coaction tables, or an invertible random combination of comodule maps."""
    if m.dim != n.dim:
        return False
    if {i: v for i, v in m.coaction.items() if v} == {i: v for i, v in n.coaction.items() if v}:
        return True
    f = m.field
    homs = comodule_hom(m, n)
    rng = random.Random(seed)
    for _ in range(attempts):
        phi = SparseMatrix.zero(f, n.dim, m.dim)
        for h in homs:
            phi = phi + h.scale(f.random(rng))
        if phi.rank() == m.dim:
            return True
    return False


# ---- duality ----


@dataclass
class DualModule:
    """Right module over an algebra: ``action[(i, a)]`` is e_i . a."""

    algebra: GradedAlgebra
    space: GradedVectorSpace
    action: dict[tuple[int, int], Vector]
    name: str = ""

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def act(self, v: Vector, a: Vector) -> Vector:
        f = self.field
        out: Vector = {}
        for i, x in v.items():
            for k, y in a.items():
                axpy(f, out, f.mul(x, y), self.action.get((i, k), {}))
        return out

    def check(self) -> Report:
        """Unital and associative right action."""
        f = self.field
        alg = self.algebra
        report = Report(subject=self.name or "module")
        witness = None
        for i in range(self.dim):
            if self.act({i: f.one}, alg.unit) != {i: f.one}:
                witness = self.space.labels[i]
                break
        report.add("unital", witness)
        witness = None
        for i, a, b in product(range(self.dim), range(alg.dim), range(alg.dim)):
            e = {i: f.one}
            lhs = self.act(self.act(e, {a: f.one}), {b: f.one})
            rhs = self.act(e, alg.multiply({a: f.one}, {b: f.one}))
            if lhs != rhs:
                witness = f"{self.space.labels[i]} . ({alg.labels[a]}, {alg.labels[b]})"
                break
        report.add("associative", witness)
        return report


def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else f"{label}*"


def phi_dualize(m: Comodule) -> DualModule:
    """The right A-module M* for A the dual algebra: (e_i* . xi_k) = sum_j c_{j;ik} e_j*."""
    c = m.coring
    if not c.over_field:
        raise BaseMismatch("phi_dualize needs a comodule over a coalgebra over a field")
    if c.top_occupied():
        raise InfiniteDimensional(f"{c.name} is truncated with classes in its top degree")
    algebra = dual_algebra(c)
    f = m.field
    action: dict[tuple[int, int], Vector] = {}
    for j, terms in m.coaction.items():
        for (i, k), x in terms.items():
            axpy(f, action.setdefault((i, k), {}), x, {j: f.one})
    space = GradedVectorSpace(
        tuple(-d for d in m.space.degrees), tuple(_dual_label(l) for l in m.labels)
    )
    return DualModule(algebra, space, {k: v for k, v in action.items() if v}, name=f"Phi({m.name})")


def predual_coalgebra(a: GradedAlgebra) -> Coring:
    """The coalgebra whose dual algebra is ``a``."""
    f = a.field
    comult: dict[int, Vector] = {}
    for (j, k), prod_ in a.mult.items():
        for i, x in prod_.items():
            axpy(f, comult.setdefault(i, {}), x, {(j, k): f.one})
    return Coring(
        field=f,
        space=GradedVectorSpace(tuple(-d for d in a.degrees), tuple(_dual_label(l) for l in a.labels)),
        comult=comult,
        counit={i: {0: x} for i, x in a.unit.items()},
        name=f"predual({a.name})",
    )


def phi_inverse(d: DualModule, coring: Coring | None = None) -> Comodule:
    """Undo ``phi_dualize``: rho(e_j) contains c * e_i (x) c_k when e_i* . xi_k contains c * e_j*."""
    c = coring or predual_coalgebra(d.algebra)
    if c.dim != d.algebra.dim:
        raise BaseMismatch("coalgebra and dual algebra have different dimensions")
    f = d.field
    coaction: dict[int, Vector] = {j: {} for j in range(d.dim)}
    for (i, k), image in d.action.items():
        for j, x in image.items():
            axpy(f, coaction[j], x, {(i, k): f.one})
    space = GradedVectorSpace(
        tuple(-deg for deg in d.space.degrees), tuple(_dual_label(l) for l in d.space.labels)
    )
    return Comodule(coring=c, space=space, coaction=coaction, name=f"Phi^-1({d.name})")


def phi_map(phi: SparseMatrix) -> SparseMatrix:
    """Phi on a comodule map M -> N: the dual map N* -> M*."""
    return phi.transpose()


def is_module_map(source: DualModule, target: DualModule, phi: SparseMatrix) -> bool:
    f = source.field
    for i, a in product(range(source.dim), range(source.algebra.dim)):
        e = {i: f.one}
        if phi.apply(source.act(e, {a: f.one})) != target.act(phi.apply(e), {a: f.one}):
            return False
    return True


# ---- Galois descent ----


def induce_comodule(m: Comodule, g: GaloisExtension) -> Comodule:
    """M (x)_K L over coring_tensor(D, g) with the canonical Galois coaction."""
    d = m.coring
    if not d.over_field:
        raise BaseMismatch("induction starts from a comodule over a coalgebra over K")
    t = coring_tensor(d, g)
    big = g.algebra
    k = g.base
    n = big.dim
    n2 = n * n
    coaction: dict[int, Vector] = {}
    for i, lpow in product(range(m.dim), range(n)):
        terms: Vector = {}
        for (j, kk), x in m.coaction.get(i, {}).items():
            terms[(j * n, kk * n2 + lpow)] = x
        coaction[i * n + lpow] = terms
    action = {
        b: SparseMatrix.identity(k, m.dim).kron(big.right_matrix({b: k.one})) for b in range(n)
    }
    space = GradedVectorSpace(
        tuple(deg for deg in m.space.degrees for _ in range(n)),
        tuple(f"{l}⊗{bl}" for l in m.labels for bl in big.labels),
    )
    return Comodule(
        coring=t,
        space=space,
        coaction=coaction,
        parities=tuple(p for p in m.parities for _ in range(n)),
        action=action,
        name=f"{m.name}⊗L",
    )


def descend_comodule(n: Comodule, g: GaloisExtension, d: Coring | None = None) -> Comodule:
    """The K-form of a comodule over coring_tensor(d, g) (or over the Galois coring).

    The K-form is the equalizer of rho_G and x -> x (x) (1 (x) 1), where
    rho_G forgets the d factor through its counit; its d-coaction is read
    off rho in the quotient N (x)_L T.
    """
    k = g.base
    base_d = d or _trivial_coalgebra(k)
    n_ext = g.algebra.dim
    n2 = n_ext * n_ext
    galois = galois_coring(g)
    t = n.coring
    if t.dim != base_d.dim * n2:
        raise BaseMismatch(f"{t.name} is not a tensor coring over {base_d.name}")

    bare = Comodule(coring=galois, space=n.space, coaction={}, action=n.action)
    quotient = _ComoduleTensor(bare, 2)
    rows: dict = {}
    columns: dict[int, Vector] = {}
    for i in range(n.dim):
        diff: Vector = {}
        for (j, c), x in n.coaction.get(i, {}).items():
            dk, gc = divmod(c, n2)
            eps = base_d.eps_scalar({dk: k.one})
            axpy(k, diff, k.mul(x, eps), {(j, gc): k.one})
        axpy(k, diff, k.neg(k.one), {(i, 0): k.one})
        reduced = quotient.relations.reduce(diff)
        columns[i] = {rows.setdefault(key, len(rows)): x for key, x in reduced.items()}
    system = SparseMatrix(k, len(rows), n.dim, columns)
    coinvariants = Subspace(k, system.kernel()).basis()
    if len(coinvariants) * n_ext != n.dim:
        raise NotDescendable(
            f"coinvariants have dimension {len(coinvariants)}, expected {n.dim // n_ext}"
        )

    relations = _ComoduleTensor(n, 2).relations
    candidates = []
    for x, dk in product(range(len(coinvariants)), range(base_d.dim)):
        vec: Vector = {}
        for j, c in coinvariants[x].items():
            axpy(k, vec, c, {(j, dk * n2): k.one})
        candidates.append(relations.reduce(vec))
    solver = Solver(k, candidates)
    coaction: dict[int, Vector] = {}
    for a, x in enumerate(coinvariants):
        rho = relations.reduce(n.rho(x))
        coeffs = solver.express(rho)
        if coeffs is None:
            raise NotDescendable(f"coaction of coinvariant {a} does not descend")
        coaction[a] = {divmod(idx, base_d.dim): c for idx, c in coeffs.items()}
    pivots = [min(v) for v in coinvariants]
    space = GradedVectorSpace(
        tuple(n.space.degrees[p] for p in pivots), tuple(n.labels[p] for p in pivots)
    )
    log.debug("descended %s: dimension %d", n.name, len(coinvariants))
    return Comodule(
        coring=base_d,
        space=space,
        coaction=coaction,
        parities=tuple(n.parities[p] for p in pivots),
        name=f"descent({n.name})",
    )


def _trivial_coalgebra(k: FieldSpec) -> Coring:
    return Coring(
        field=k,
        space=GradedVectorSpace((0,), ("1",)),
        comult={0: {(0, 0): k.one}},
        counit={0: {0: k.one}},
        name=k.name,
    )


# ---- random comodules ----


def cyclic_subcomodule(c: Coring, v: Vector) -> Comodule:
    """The subcomodule of the regular comodule generated by a homogeneous v."""
    f = c.field
    delta = c.delta(v)
    pieces: dict[int, Vector] = {}
    for (j, k), x in delta.items():
        axpy(f, pieces.setdefault(k, {}), x, {j: f.one})
    span = Subspace(f, pieces.values())
    basis = span.basis()
    solver = Solver(f, basis)
    coaction: dict[int, Vector] = {}
    for a, w in enumerate(basis):
        by_right: dict[int, Vector] = {}
        for (j, k), x in c.delta(w).items():
            axpy(f, by_right.setdefault(k, {}), x, {j: f.one})
        terms: Vector = {}
        for k, left in by_right.items():
            for b, y in (solver.express(left) or {}).items():
                axpy(f, terms, y, {(b, k): f.one})
        coaction[a] = terms
    pivots = [min(w) for w in basis]
    return Comodule(
        coring=c,
        space=GradedVectorSpace(
            tuple(c.degrees[p] for p in pivots), tuple(f"<{c.labels[p]}>" for p in pivots)
        ),
        coaction=coaction,
        parities=tuple(c.parities[p] for p in pivots),
        name=f"<{c.name}>",
    )


def direct_sum(m1: Comodule, m2: Comodule) -> Comodule:
    if m1.coring is not m2.coring:
        raise BaseMismatch("direct sum of comodules over different corings")
    shift = m1.dim
    coaction = {i: dict(v) for i, v in m1.coaction.items()}
    for i, terms in m2.coaction.items():
        coaction[i + shift] = {(j + shift, k): x for (j, k), x in terms.items()}
    labels = tuple(f"1.{l}" for l in m1.labels) + tuple(f"2.{l}" for l in m2.labels)
    return Comodule(
        coring=m1.coring,
        space=GradedVectorSpace(m1.space.degrees + m2.space.degrees, labels),
        coaction=coaction,
        parities=m1.parities + m2.parities,
        name=f"{m1.name}+{m2.name}",
    )


def random_comodule(c: Coring, rng: random.Random, max_dim: int = 6) -> Comodule:
    """Direct sum of cyclic subcomodules generated by random homogeneous vectors."""
    f = c.field
    components: dict[tuple[int, int], list[int]] = {}
    for i in range(c.dim):
        components.setdefault((c.degrees[i], c.parities[i]), []).append(i)
    keys = sorted(components)
    result: Comodule | None = None
    for _ in range(rng.randint(1, 3)):
        support = components[keys[rng.randrange(len(keys))]]
        v = {i: f.random(rng) for i in support}
        v = {i: x for i, x in v.items() if not f.is_zero(x)} or {support[0]: f.one}
        piece = cyclic_subcomodule(c, v)
        if result is None:
            result = piece
        elif result.dim + piece.dim <= max_dim:
            result = direct_sum(result, piece)
    return result


def random_coalgebra(field: FieldSpec, rng: random.Random, max_dim: int = 8) -> Coring:
    """A random coalgebra: the predual of a random monomial algebra of small dimension."""
    while True:
        nvars = rng.randint(1, 2)
        caps = [rng.randint(2, 3) for _ in range(nvars)]
        pres = AlgebraPresentation(
            kind=POLYNOMIAL,
            field=field,
            variables=tuple(Variable(f"x{i + 1}") for i in range(nvars)),
            relations=tuple(tuple(cap if j == i else 0 for j in range(nvars)) for i, cap in enumerate(caps)),
            text=f"random algebra {caps}",
        )
        algebra = realize(pres, sum(cap - 1 for cap in caps))
        if algebra.dim <= max_dim:
            coalgebra = predual_coalgebra(algebra)
            coalgebra.space = GradedVectorSpace(algebra.degrees, algebra.labels)
            return as_coalgebra(coalgebra)
