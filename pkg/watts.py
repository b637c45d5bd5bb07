"""
Eilenberg-Watts extraction for comonads built from restriction and base change.

A ComonadSpec lists rings, algebra maps between them and an adjunction word
F_n..F_1 U_1..U_n.  The word collapses to one map psi: R -> S, and the
comonad on right S-modules is G(M) = M (x)_R S with counit m (x) s -> m s and
comultiplication m (x) s -> (m (x) 1) (x) s.  Its value at the regular
module is the coring C(S) = S (x)_R S.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Callable

from comodules import DualModule
from corings import BalancedTensor, Coring
from errors import NotAComonad
from fields import FieldSpec
from linalg import GradedVectorSpace, Solver, SparseMatrix, Subspace, Vector, axpy, shift, vtensor
from models import ComonadSpecModel, Report
from presentations import AlgebraMap, GradedAlgebra, parse_element, parse_presentation, realize
from stable_rep import module_hom

log = logging.getLogger(__name__)

_LETTER = re.compile(r"([FU])(\d*)")


# ---- comonad specifications ----


def _check_word(pattern: str, n: int) -> None:
    word = pattern.replace(" ", "")
    tokens = _LETTER.findall(word)
    if not tokens or "".join(a + b for a, b in tokens) != word:
        raise NotAComonad(f"{pattern!r} is not an adjunction word")
    if n == 1 and tokens == [("F", ""), ("U", "")]:
        return
    expected = [("F", str(i)) for i in range(n, 0, -1)] + [("U", str(i)) for i in range(1, n + 1)]
    if tokens != expected:
        shape = "".join(a + b for a, b in expected)
        raise NotAComonad(f"{pattern!r} does not have the shape {shape} for {n} maps")


@dataclass
class ComonadSpec:
    """A chain of algebra maps psi_1, ..., psi_n and the word F_n..F_1 U_1..U_n."""

    rings: list[GradedAlgebra]
    maps: list[AlgebraMap]
    pattern: str
    composite: AlgebraMap = dc_field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.maps:
            raise NotAComonad("a comonad needs at least one algebra map")
        _check_word(self.pattern, len(self.maps))
        for a, b in zip(self.maps, self.maps[1:]):
            if a.target is not b.source:
                raise NotAComonad(f"{a.label()} and {b.label()} do not compose")
        first = self.maps[0]
        images = []
        for g in first.source.generators:
            v = dict(g)
            for m in self.maps:
                v = m.apply(v)
            images.append(v)
        self.composite = AlgebraMap(first.source, self.maps[-1].target, images, name=self.label)

    @property
    def label(self) -> str:
        return f"{self.pattern}: {self.maps[0].source.name} -> {self.maps[-1].target.name}"

    @property
    def source(self) -> GradedAlgebra:
        return self.composite.source

    @property
    def base(self) -> GradedAlgebra:
        return self.composite.target

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def graded(self) -> bool:
        return any(self.base.degrees)

    @classmethod
    def from_model(cls, model: ComonadSpecModel) -> ComonadSpec:
        rings = [realize(parse_presentation(text), model.degree_bound) for text in model.rings]
        maps = []
        for n, m in enumerate(model.maps):
            if not (0 <= m.source < len(rings) and 0 <= m.target < len(rings)):
                raise NotAComonad(f"map {n} refers to a ring outside 0..{len(rings) - 1}")
            target = rings[m.target]
            images = [parse_element(target, text) for text in m.images]
            maps.append(AlgebraMap(rings[m.source], target, images, name=f"psi{n + 1}"))
        for a, b in zip(model.maps, model.maps[1:]):
            if a.target != b.source:
                raise NotAComonad(f"map into ring {a.target} is followed by a map from ring {b.source}")
        return cls(rings, maps, model.pattern)


def parse_spec(data: dict) -> ComonadSpec:
    return ComonadSpec.from_model(ComonadSpecModel.model_validate(data))


# ---- tensor quotients ----


@dataclass
class TensorQuotient:
    """k^a (x) k^b modulo balancing relations; the basis is the non-pivot pairs."""

    field: FieldSpec
    relations: Subspace
    keys: list[tuple[int, int]]

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {k: n for n, k in enumerate(self.keys)}

    @property
    def dim(self) -> int:
        return len(self.keys)

    def coords(self, t: Vector) -> Vector:
        return {self.index[k]: c for k, c in self.relations.reduce(t).items()}

    def pure(self, u: Vector, v: Vector) -> Vector:
        """Coordinates of u (x) v."""
        return self.coords(vtensor(self.field, u, v))


def _balanced(
    field: FieldSpec,
    left_dim: int,
    right_dim: int,
    acts: list[tuple[Callable[[int], Vector], Callable[[int], Vector]]],
) -> TensorQuotient:
    """Quotient by (i . r) (x) j - i (x) (r . j) for each pair of actions of an element r."""
    relations = Subspace(field)
    minus = field.neg(field.one)
    for on_left, on_right in acts:
        for i, j in product(range(left_dim), range(right_dim)):
            rel = vtensor(field, on_left(i), {j: field.one})
            axpy(field, rel, minus, vtensor(field, {i: field.one}, on_right(j)))
            if rel:
                relations.add(rel)
    keys = [k for k in product(range(left_dim), range(right_dim)) if k not in relations.rows]
    return TensorQuotient(field, relations, keys)


def _ring_generators(a: GradedAlgebra) -> list[Vector]:
    return a.generators or [a.basis_vector(b) for b in range(a.dim)]


# ---- right modules ----


def regular_right_module(s: GradedAlgebra) -> DualModule:
    action = {}
    for i, b in product(range(s.dim), repeat=2):
        v = s.multiply(s.basis_vector(i), s.basis_vector(b))
        if v:
            action[(i, b)] = v
    return DualModule(s, s.space, action, name=s.name)


def shift_module(m: DualModule, n: int) -> DualModule:
    return DualModule(m.algebra, shift(m.space, n), dict(m.action), name=f"{m.name}({n})")


def module_sum(m1: DualModule, m2: DualModule) -> DualModule:
    off = m1.dim
    action = dict(m1.action)
    for (i, b), v in m2.action.items():
        action[(off + i, b)] = {off + j: c for j, c in v.items()}
    space = GradedVectorSpace(m1.space.degrees + m2.space.degrees, m1.space.labels + m2.space.labels)
    return DualModule(m1.algebra, space, action, name=f"{m1.name}+{m2.name}")


def action_matrix(m: DualModule, x: Vector) -> SparseMatrix:
    return SparseMatrix.from_function(m.field, m.dim, m.dim, lambda j: m.act({j: m.field.one}, x))


def module_maps(m: DualModule, n: DualModule) -> list[SparseMatrix]:
    """Basis of the right-module maps m -> n."""
    gens = _ring_generators(m.algebra)
    return module_hom(
        m.field, [action_matrix(m, g) for g in gens], [action_matrix(n, g) for g in gens], m.dim, n.dim
    )


def random_module(s: GradedAlgebra, rng: random.Random, max_dim: int = 8, graded: bool = True) -> DualModule:
    """Direct sum of shifted free modules and right ideals generated by homogeneous elements."""
    f = s.field
    result: DualModule | None = None
    count = 0
    for _ in range(8):
        if rng.random() < 0.3:
            basis = [s.basis_vector(b) for b in range(s.dim)]
        else:
            degree = rng.choice(s.degrees)
            x = {b: c for b in range(s.dim) if s.degrees[b] == degree and not f.is_zero(c := f.random(rng))}
            basis = Subspace(f, [s.multiply(x, s.basis_vector(b)) for b in range(s.dim)]).basis()
        used = result.dim if result else 0
        if not basis or used + len(basis) > max_dim:
            continue
        solver = Solver(f, basis)
        action = {}
        for k, b in product(range(len(basis)), range(s.dim)):
            v = solver.express(s.multiply(basis[k], s.basis_vector(b))) or {}
            if v:
                action[(k, b)] = v
        n = rng.randint(-2, 2) if graded else 0
        space = GradedVectorSpace(
            tuple(s.degrees[min(v)] + n for v in basis),
            tuple(f"m{count}_{k}" for k in range(len(basis))),
        )
        piece = DualModule(s, space, action, name=f"P{count}")
        count += 1
        result = piece if result is None else module_sum(result, piece)
    return result or regular_right_module(s)


def module_battery(spec: ComonadSpec, size: int, seed: int, max_dim: int = 8) -> list[DualModule]:
    rng = random.Random(seed)
    battery = []
    for n in range(size):
        m = random_module(spec.base, rng, max_dim, graded=spec.graded)
        m.name = f"M{n}"
        battery.append(m)
    return battery


# ---- the comonad ----


@dataclass
class BaseChange:
    """G(M) = M (x)_R S with its right S-module structure."""

    module: DualModule
    tensor: TensorQuotient
    algebra: GradedAlgebra

    @property
    def keys(self) -> list[tuple[int, int]]:
        return self.tensor.keys

    def pure(self, u: Vector, s: Vector) -> Vector:
        return self.tensor.pure(u, s)

    @cached_property
    def result(self) -> DualModule:
        m, s = self.module, self.algebra
        f = s.field
        action = {}
        for n, (i, j) in enumerate(self.keys):
            for b in range(s.dim):
                v = self.pure({i: f.one}, s.multiply(s.basis_vector(j), s.basis_vector(b)))
                if v:
                    action[(n, b)] = v
        space = GradedVectorSpace(
            tuple(m.space.degrees[i] + s.degrees[j] for i, j in self.keys),
            tuple(f"{m.space.labels[i]}⊗{s.labels[j]}" for i, j in self.keys),
        )
        return DualModule(s, space, action, name=f"G({m.name})")


def base_change(psi: AlgebraMap, m: DualModule) -> BaseChange:
    s = psi.target
    f = s.field
    acts = []
    for g in _ring_generators(psi.source):
        x = psi.apply(g)
        acts.append(
            (
                lambda i, x=x: m.act({i: f.one}, x),
                lambda j, x=x: s.multiply(x, s.basis_vector(j)),
            )
        )
    return BaseChange(m, _balanced(f, m.dim, s.dim, acts), s)


class Comonad:
    """G with counit and comultiplication components, memoized per module."""

    def __init__(self, spec: ComonadSpec):
        self.spec = spec
        self._values: dict[int, tuple[DualModule, BaseChange]] = {}

    @cached_property
    def regular(self) -> DualModule:
        return regular_right_module(self.spec.base)

    def apply(self, m: DualModule) -> BaseChange:
        hit = self._values.get(id(m))
        if hit is None or hit[0] is not m:
            hit = (m, base_change(self.spec.composite, m))
            self._values[id(m)] = hit
        return hit[1]

    def counit(self, m: DualModule) -> SparseMatrix:
        """G(M) -> M, m (x) s -> m s."""
        g = self.apply(m)
        f = m.field
        return SparseMatrix.from_function(
            f, m.dim, g.tensor.dim, lambda n: m.act({g.keys[n][0]: f.one}, {g.keys[n][1]: f.one})
        )

    def comult(self, m: DualModule) -> SparseMatrix:
        """G(M) -> GG(M), m (x) s -> (m (x) 1) (x) s."""
        g = self.apply(m)
        gg = self.apply(g.result)
        s = self.spec.base
        f = m.field

        def column(n: int) -> Vector:
            i, j = g.keys[n]
            return gg.pure(g.pure({i: f.one}, s.unit), {j: f.one})

        return SparseMatrix.from_function(f, gg.tensor.dim, g.tensor.dim, column)

    def fmap(self, fmat: SparseMatrix, m: DualModule, n: DualModule) -> SparseMatrix:
        """G(f): G(M) -> G(N)."""
        gm, gn = self.apply(m), self.apply(n)
        f = m.field
        return SparseMatrix.from_function(
            f, gn.tensor.dim, gm.tensor.dim, lambda c: gn.pure(fmat.column(gm.keys[c][0]), {gm.keys[c][1]: f.one})
        )

    def axioms_at(self, m: DualModule) -> dict[str, bool]:
        gm = self.apply(m).result
        ggm = self.apply(gm).result
        delta = self.comult(m)
        ident = SparseMatrix.identity(m.field, gm.dim)
        return {
            "comonad_counit_left": self.counit(gm) @ delta == ident,
            "comonad_counit_right": self.fmap(self.counit(m), gm, m) @ delta == ident,
            "comonad_coassociativity": self.comult(gm) @ delta == self.fmap(delta, gm, ggm) @ delta,
        }


# ---- extraction ----


@dataclass
class ExtractedCoring:
    """C(S) = G(S) with the bimodule structure from enrichment and the module action."""

    spec: ComonadSpec
    comonad: Comonad
    coring: Coring

    @property
    def regular(self) -> BaseChange:
        return self.comonad.apply(self.comonad.regular)


def extract_coring(spec: ComonadSpec) -> ExtractedCoring:
    """The coring S (x)_R S, its Delta lifted through (x (x) c) -> (x a) (x) b."""
    comonad = Comonad(spec)
    s = spec.base
    f = s.field
    reg = comonad.regular
    g = comonad.apply(reg)
    space = g.result.space
    dim = g.tensor.dim

    left = {b: comonad.fmap(s.left_matrix(s.basis_vector(b)), reg, reg) for b in range(s.dim)}
    right = {b: action_matrix(g.result, s.basis_vector(b)) for b in range(s.dim)}
    eps = comonad.counit(reg)
    counit = {n: eps.column(n) for n in range(dim)}
    comult = {}
    for n, (i, j) in enumerate(g.keys):
        first = g.pure({i: f.one}, s.unit)
        second = g.pure(s.unit, {j: f.one})
        comult[n] = vtensor(f, first, second)
    coring = Coring(
        field=f,
        space=space,
        comult=comult,
        counit=counit,
        base=s,
        left_action=left,
        right_action=right,
        name=f"C({s.name}) from {spec.pattern}",
        graded=spec.graded,
    )
    log.info("extracted %s: carrier dimension %d", coring.name, dim)
    return ExtractedCoring(spec, comonad, coring)


def coring_isomorphism_report(a: Coring, b: Coring, phi: SparseMatrix) -> Report:
    """phi: a -> b is bijective, bilinear, and carries counit and Delta (compared in b (x)_R b)."""
    report = Report(subject=f"{a.name} -> {b.name}")
    square = phi.rows == phi.cols == a.dim == b.dim
    report.add("bijective", None if square and phi.rank() == a.dim else f"{phi.rows}x{phi.cols}, rank {phi.rank()}")
    witness = None
    for r in range(a.base.dim):
        if phi @ a.left_action[r] != b.left_action[r] @ phi:
            witness = f"left {a.base.labels[r]}"
        elif phi @ a.right_action[r] != b.right_action[r] @ phi:
            witness = f"right {a.base.labels[r]}"
        if witness:
            break
    report.add("bimodule_map", witness)
    witness = None
    for i in range(a.dim):
        if b.eps(phi.column(i)) != a.counit.get(i, {}):
            witness = a.labels[i]
            break
    report.add("preserves_counit", witness)
    f = a.field
    balanced = BalancedTensor(b, 2)
    witness = None
    for i in range(a.dim):
        lhs: Vector = {}
        for (j, k), x in a.comult.get(i, {}).items():
            axpy(f, lhs, x, vtensor(f, phi.column(j), phi.column(k)))
        axpy(f, lhs, f.neg(f.one), b.delta(phi.column(i)))
        if not balanced.is_zero(lhs):
            witness = a.labels[i]
            break
    report.add("preserves_comult", witness)
    return report


# ---- the action map M (x)_S C -> G(M) ----


@dataclass
class ActionMap:
    """alpha_M: M (x)_S C -> G(M), m (x) (a (x) b) -> (m a) (x) b."""

    module: DualModule
    tensor: TensorQuotient
    full: dict[tuple[int, int], Vector]
    matrix: SparseMatrix

    def balanced(self) -> bool:
        """alpha kills the balancing relations, so it is defined on the quotient."""
        f = self.module.field
        for row in self.tensor.relations.rows.values():
            out: Vector = {}
            for key, c in row.items():
                axpy(f, out, c, self.full[key])
            if out:
                return False
        return True


def action_map(ext: ExtractedCoring, m: DualModule) -> ActionMap:
    c = ext.coring
    s = ext.spec.base
    f = m.field
    gm = ext.comonad.apply(m)
    lifts = ext.regular.keys
    acts = [
        (lambda i, r=r: m.act({i: f.one}, r), lambda j, r=r: c.act_left(r, {j: f.one}))
        for r in _ring_generators(s)
    ]
    tensor = _balanced(f, m.dim, c.dim, acts)
    full = {}
    for i, n in product(range(m.dim), range(c.dim)):
        a, b = lifts[n]
        full[(i, n)] = gm.pure(m.act({i: f.one}, s.basis_vector(a)), {b: f.one})
    matrix = SparseMatrix.from_function(f, gm.tensor.dim, tensor.dim, lambda col: full[tensor.keys[col]])
    return ActionMap(m, tensor, full, matrix)


def verify_watts(
    spec: ComonadSpec,
    ext: ExtractedCoring | None = None,
    battery_size: int = 20,
    seed: int = 0,
    max_dim: int = 8,
    naturality_samples: int = 10,
) -> Report:
    """Action maps are isomorphisms, natural, and carry the coring's counit and Delta onto the comonad's."""
    ext = ext or extract_coring(spec)
    comonad, c = ext.comonad, ext.coring
    battery = module_battery(spec, battery_size, seed, max_dim)
    report = Report(subject=f"Eilenberg-Watts, {spec.label}")
    failures: dict[str, str | None] = dict.fromkeys(
        [
            "balanced",
            "isomorphism",
            "counit_transport",
            "comult_transport",
            "comonad_counit_left",
            "comonad_counit_right",
            "comonad_coassociativity",
        ]
    )
    alphas: dict[int, ActionMap] = {}

    def note(axiom: str, ok: bool, where: str) -> None:
        if not ok and failures[axiom] is None:
            failures[axiom] = where

    for m in battery:
        f = m.field
        alpha = action_map(ext, m)
        alphas[id(m)] = alpha
        note("balanced", alpha.balanced(), m.name)
        mat = alpha.matrix
        note("isomorphism", mat.rows == mat.cols and mat.rank() == mat.rows, m.name)

        m_eps = SparseMatrix.from_function(
            f, m.dim, alpha.tensor.dim, lambda col: m.act({alpha.tensor.keys[col][0]: f.one}, c.counit.get(alpha.tensor.keys[col][1], {}))
        )
        note("counit_transport", comonad.counit(m) @ mat == m_eps, m.name)

        gm = comonad.apply(m).result
        ggm = comonad.apply(gm)
        lifts = ext.regular.keys

        def through(col: int) -> Vector:
            i, n = alpha.tensor.keys[col]
            out: Vector = {}
            for (c1, c2), x in c.comult.get(n, {}).items():
                u = alpha.full[(i, c1)]
                a, b = lifts[c2]
                for k, y in u.items():
                    axpy(f, out, f.mul(x, y), ggm.pure(gm.act({k: f.one}, c.base.basis_vector(a)), {b: f.one}))
            return out

        transported = SparseMatrix.from_function(f, ggm.tensor.dim, alpha.tensor.dim, through)
        note("comult_transport", comonad.comult(m) @ mat == transported, m.name)

        for axiom, ok in comonad.axioms_at(m).items():
            note(axiom, ok, m.name)

    rng = random.Random(seed + 1)
    checked = 0
    natural = None
    for _ in range(naturality_samples):
        m, n = rng.choice(battery), rng.choice(battery)
        homs = module_maps(m, n)
        if not homs:
            continue
        f = m.field
        fmat = SparseMatrix.zero(f, n.dim, m.dim)
        for h in homs:
            fmat = fmat + h.scale(f.random(rng))
        am, an = alphas[id(m)], alphas[id(n)]
        f_tensor = SparseMatrix.from_function(
            f,
            an.tensor.dim,
            am.tensor.dim,
            lambda col: an.tensor.pure(fmat.column(am.tensor.keys[col][0]), {am.tensor.keys[col][1]: f.one}),
        )
        checked += 1
        if comonad.fmap(fmat, m, n) @ am.matrix != an.matrix @ f_tensor and natural is None:
            natural = f"{m.name} -> {n.name}"

    for axiom, witness in failures.items():
        report.add(axiom, witness)
    report.add("naturality", natural)
    report.notes["modules"] = len(battery)
    report.notes["naturality_maps"] = checked
    return report


def graded_pieces(m: DualModule) -> dict[int, list[int]]:
    """Basis indices of ``m`` grouped by degree."""
    pieces: dict[int, list[int]] = {}
    for i, d in enumerate(m.space.degrees):
        pieces.setdefault(d, []).append(i)
    return pieces


def _piece_action(m: DualModule, pieces: dict[int, list[int]], d: int, b: int) -> list[Vector] | None:
    """Action of basis element b from degree d to degree d + |b| in local coordinates; None if it leaves that piece."""
    f = m.field
    target = {i: n for n, i in enumerate(pieces.get(d + m.algebra.degrees[b], []))}
    columns = []
    for i in pieces[d]:
        image = m.act({i: f.one}, {b: f.one})
        if any(k not in target for k in image):
            return None
        columns.append({target[k]: c for k, c in image.items()})
    return columns


def _shift_mismatch(plain: DualModule, moved: DualModule, n: int) -> str | None:
    """First degree where moved_d and plain_{d-n} differ in dimension or action."""
    p, q = graded_pieces(plain), graded_pieces(moved)
    for d in sorted(set(p) | {e - n for e in q}):
        if len(p.get(d, [])) != len(q.get(d + n, [])):
            return f"degree {d + n}"
    s = plain.algebra
    for d, b in product(sorted(p), range(s.dim)):
        ours = _piece_action(plain, p, d, b)
        theirs = _piece_action(moved, q, d + n, b)
        if ours is None or theirs is None or ours != theirs:
            return f"degree {d + n} . {s.labels[b]}"
    return None


def grading_shift_check(
    spec: ComonadSpec,
    battery_size: int = 5,
    seed: int = 0,
    max_dim: int = 8,
    shift_by: int = 1,
    modules: list[DualModule] | None = None,
) -> Report:
    """G(M[n])_d = G(M)_{d-n} degree by degree, with the same S-action on matching pieces."""
    comonad = Comonad(spec)
    report = Report(subject=f"grading shift, {spec.label}")
    if modules is None:
        modules = [comonad.regular, *module_battery(spec, battery_size, seed, max_dim)]
    witness = None
    for m in modules:
        where = _shift_mismatch(comonad.apply(m).result, comonad.apply(shift_module(m, shift_by)).result, shift_by)
        if where is not None:
            witness = f"{m.name}: {where}"
            break
    report.add("shift_commutes", witness)
    report.notes["shift"] = shift_by
    return report


# ---- determination by the value at S ----


@dataclass
class NaturalTransformation:
    """A transformation G => id given by its components."""

    name: str
    component: Callable[[DualModule], SparseMatrix]

    def at(self, m: DualModule) -> SparseMatrix:
        return self.component(m)


def counit_transformation(comonad: Comonad) -> NaturalTransformation:
    return NaturalTransformation("counit", comonad.counit)


def scaled_transformation(t: NaturalTransformation, c) -> NaturalTransformation:
    return NaturalTransformation(f"{c}*{t.name}", lambda m: t.at(m).scale(c))


def rebuilt_from_regular(comonad: Comonad, t: NaturalTransformation) -> NaturalTransformation:
    """t_M(m (x) s) = m . t_S(1 (x) s): the component forced by naturality along s -> m s."""
    s = comonad.spec.base
    reg = comonad.regular
    at_regular = t.at(reg)
    g_reg = comonad.apply(reg)

    def component(m: DualModule) -> SparseMatrix:
        g = comonad.apply(m)
        f = m.field
        return SparseMatrix.from_function(
            f,
            m.dim,
            g.tensor.dim,
            lambda n: m.act({g.keys[n][0]: f.one}, at_regular.apply(g_reg.pure(s.unit, {g.keys[n][1]: f.one}))),
        )

    return NaturalTransformation(f"rebuilt {t.name}", component)


def naturality_witness(
    comonad: Comonad, t: NaturalTransformation, battery: list[DualModule], rng: random.Random, samples: int
) -> str | None:
    for _ in range(samples):
        m, n = rng.choice(battery), rng.choice(battery)
        f = m.field
        fmat = SparseMatrix.zero(f, n.dim, m.dim)
        for h in module_maps(m, n):
            fmat = fmat + h.scale(f.random(rng))
        if t.at(n) @ comonad.fmap(fmat, m, n) != fmat @ t.at(m):
            return f"{m.name} -> {n.name}"
    return None


def determination_at_regular(
    comonad: Comonad,
    t1: NaturalTransformation,
    t2: NaturalTransformation,
    battery_size: int = 10,
    seed: int = 0,
    max_dim: int = 8,
    samples: int = 10,
) -> Report:
    """Transformations agreeing at S agree on every battery module."""
    battery = module_battery(comonad.spec, battery_size, seed, max_dim)
    rng = random.Random(seed + 1)
    report = Report(subject=f"{t1.name} vs {t2.name}")
    report.add("natural_first", naturality_witness(comonad, t1, [comonad.regular, *battery], rng, samples))
    report.add("natural_second", naturality_witness(comonad, t2, [comonad.regular, *battery], rng, samples))
    agree_at_regular = t1.at(comonad.regular) == t2.at(comonad.regular)
    differing = [m.name for m in battery if t1.at(m) != t2.at(m)]
    report.notes["agree_at_regular"] = agree_at_regular
    report.notes["disagreements"] = len(differing)
    report.add("determined", differing[0] if agree_at_regular and differing else None)
    return report
