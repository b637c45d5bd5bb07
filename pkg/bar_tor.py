"""
Tor of a connected graded algebra as a graded Hopf algebra.

The normalized bar complex is built slice by slice in bidegree (s, d):
homological degree s, internal degree d.  Homology classes get their
representatives from the deterministic elimination in ``linalg``; shuffle
product and deconcatenation are moved to homology through the chain
retraction ``Homology.retract``.

``tor_dims_via_resolution`` is an independent check on the dimensions: it
counts generators of a degreewise minimal free resolution of k.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Callable

from corings import (
    HopfAlgebra,
    antipode,
    dual_bialgebra,
    exterior_bialgebra,
    isomorphism_report,
    koszul,
)
from errors import InfiniteDimensional, NotAComplex, NotAugmented, NotCommutative, NotConnected
from fields import FieldSpec
from linalg import GradedVectorSpace, Homology, SparseMatrix, Subspace, Vector, axpy, homology_dims
from models import Report
from presentations import EXTERIOR, GROUP_ALGEBRA, POLYNOMIAL, AlgebraPresentation, GradedAlgebra

log = logging.getLogger(__name__)

CONVENTION = "homological"

Word = tuple[int, ...]


# ---- bar complex ----


@dataclass
class BarComplex:
    """Normalized bar complex of ``algebra`` in bidegrees s <= s_max, d <= d_max."""

    algebra: GradedAlgebra
    s_max: int
    d_max: int
    words: dict[tuple[int, int], list[Word]]
    index: dict[tuple[int, int], dict[Word, int]]
    differentials: dict[tuple[int, int], SparseMatrix] = dc_field(default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def dim(self, s: int, d: int) -> int:
        return len(self.words.get((s, d), ()))

    def differential(self, s: int, d: int) -> SparseMatrix:
        """d: B(s, d) -> B(s-1, d)."""
        if (s, d) not in self.differentials:
            self.differentials[(s, d)] = self._build_differential(s, d)
        return self.differentials[(s, d)]

    def letter_weight(self, letter: int) -> int:
        """Suspended sign degree of a bar letter: 1 plus its sign degree in the algebra."""
        return 1 + self.algebra.sign_degree(letter)

    def sign_degree(self, word: Word) -> int:
        return sum(self.letter_weight(a) for a in word)

    def word_label(self, word: Word) -> str:
        if not word:
            return "1"
        return "[" + "|".join(self.algebra.labels[i] for i in word) + "]"

    def boundary(self, word: Word) -> dict[Word, object]:
        """Alternating sum of adjacent products.

        The i-th face a_i * a_{i+1} has sign (-1)^(i + e), e the sum of the
        sign degrees of a_1 .. a_i.
        """
        f = self.field
        out: dict[Word, object] = {}
        prefix = 0
        for i in range(1, len(word)):
            prefix += self.letter_weight(word[i - 1])
            sign = f.one if prefix % 2 == 0 else f.neg(f.one)
            prod_ = self.algebra.multiply({word[i - 1]: f.one}, {word[i]: f.one})
            for k, c in prod_.items():
                merged = word[: i - 1] + (k,) + word[i + 1 :]
                axpy(f, out, f.mul(sign, c), {merged: f.one})
        return out

    def _build_differential(self, s: int, d: int) -> SparseMatrix:
        source = self.words.get((s, d), [])
        target_index = self.index.get((s - 1, d), {})
        columns = {}
        for j, word in enumerate(source):
            columns[j] = {target_index[w]: c for w, c in self.boundary(word).items()}
        return SparseMatrix(self.field, len(target_index), len(source), columns)

    def check(self) -> Report:
        """d o d = 0 in every bidegree."""
        report = Report(subject=f"bar complex of {self.algebra.name}")
        witness = None
        for (s, d) in sorted(self.words):
            if s < 2:
                continue
            if not (self.differential(s - 1, d) @ self.differential(s, d)).is_zero():
                witness = f"({s}, {d})"
                break
        report.add("d_squared_zero", witness)
        return report


def bar_complex(a: GradedAlgebra, s_max: int, d_max: int) -> BarComplex:
    """All normalized bar words [a1|...|as] with s <= s_max and total degree <= d_max."""
    if a.augmentation is None:
        raise NotAugmented(f"{a.name} has no augmentation")
    if not a.is_connected():
        raise NotConnected(f"{a.name}: degree 0 is not spanned by the unit")
    if not a.complete and a.degree_bound is not None and d_max > a.degree_bound:
        raise InfiniteDimensional(
            f"{a.name} is realized up to degree {a.degree_bound}, below d_max={d_max}"
        )
    letters = sorted(a.augmentation_ideal(), key=lambda i: (a.degrees[i], i))
    words: dict[tuple[int, int], list[Word]] = {(0, 0): [()]}
    frontier: list[tuple[Word, int]] = [((), 0)]
    for s in range(1, s_max + 1):
        nxt = []
        for word, deg in frontier:
            for letter in letters:
                total = deg + a.degrees[letter]
                if total <= d_max:
                    nxt.append((word + (letter,), total))
        for word, deg in nxt:
            words.setdefault((s, deg), []).append(word)
        frontier = nxt
    for key in words:
        words[key].sort()
    index = {key: {w: i for i, w in enumerate(ws)} for key, ws in words.items()}
    log.debug("bar complex of %s: %d slices", a.name, len(words))
    return BarComplex(a, s_max, d_max, words, index)


# ---- chain-level operations ----


def shuffle(u: Word, v: Word, weight: Callable[[int], int] | None = None) -> dict[Word, int]:
    """Signed shuffles of two words.

    Each letter b of ``v`` moved in front of a letter a of ``u`` contributes
    (-1)^(w(a) w(b)).  Without ``weight`` every letter has weight 1 and the
    sign is that of the interleaving permutation.
    """
    n = len(u) + len(v)
    wu = [1 if weight is None else weight(a) for a in u]
    passed = [0]
    for b in v:
        passed.append(passed[-1] + (1 if weight is None else weight(b)))
    out: dict[Word, int] = {}
    for positions in combinations(range(n), len(u)):
        word = [0] * n
        chosen = set(positions)
        iu = iter(u)
        iv = iter(v)
        for p in range(n):
            word[p] = next(iu) if p in chosen else next(iv)
        exponent = sum(wu[i] * passed[p - i] for i, p in enumerate(positions))
        sign = -1 if exponent % 2 else 1
        key = tuple(word)
        out[key] = out.get(key, 0) + sign
    return {k: c for k, c in out.items() if c}


def deconcatenate(word: Word) -> list[tuple[Word, Word]]:
    return [(word[:k], word[k:]) for k in range(len(word) + 1)]


def chain_map_report(bar: BarComplex) -> Report:
    """Leibniz rules for the shuffle product and the deconcatenation coproduct.

    d(u*v) = du*v + (-1)^|u| u*dv and
    Delta(dw) = (d (x) 1 + (-1)^|x| 1 (x) d) Delta(w), checked on every word,
    with |.| the suspended sign degree of a bar word.
    """
    f = bar.field
    report = Report(subject=f"bar complex of {bar.algebra.name}")
    degree_of = {w: d for (s, d), ws in bar.words.items() for w in ws}

    def scaled(c: int) -> object:
        return f.from_int(c)

    def shuffle_vec(u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for wu, cu in u.items():
            for wv, cv in v.items():
                for w, sign in shuffle(wu, wv, bar.letter_weight).items():
                    axpy(f, out, f.mul(scaled(sign), f.mul(cu, cv)), {w: f.one})
        return out

    def d_vec(u: Vector) -> Vector:
        out: Vector = {}
        for w, c in u.items():
            axpy(f, out, c, bar.boundary(w))
        return out

    witness = None
    all_words = [w for ws in bar.words.values() for w in ws if w]
    for u, v in product(all_words, repeat=2):
        if len(u) + len(v) > bar.s_max or degree_of[u] + degree_of[v] > bar.d_max:
            continue
        lhs = d_vec(shuffle_vec({u: f.one}, {v: f.one}))
        rhs = shuffle_vec(d_vec({u: f.one}), {v: f.one})
        sign = koszul(f, bar.sign_degree(u), 1)
        axpy(f, rhs, sign, shuffle_vec({u: f.one}, d_vec({v: f.one})))
        if lhs != rhs:
            witness = f"{bar.word_label(u)} * {bar.word_label(v)}"
            break
    report.add("shuffle_chain_map", witness)

    witness = None
    for w in all_words:
        lhs: Vector = {}
        for merged, c in bar.boundary(w).items():
            for x, y in deconcatenate(merged):
                axpy(f, lhs, c, {(x, y): f.one})
        rhs: Vector = {}
        for x, y in deconcatenate(w):
            for dx, c in bar.boundary(x).items():
                axpy(f, rhs, c, {(dx, y): f.one})
            for dy, c in bar.boundary(y).items():
                axpy(f, rhs, f.mul(koszul(f, bar.sign_degree(x), 1), c), {(x, dy): f.one})
        if lhs != rhs:
            witness = bar.word_label(w)
            break
    report.add("deconcatenation_chain_map", witness)
    return report


# ---- Tor as a Hopf algebra ----


@dataclass(kw_only=True)
class TorHopf(HopfAlgebra):
    """Tor^A(k, k): degree is the internal degree, ``hdegs`` the homological one.

    ``parities`` carry the suspended sign degree s + e of each class, which is
    s for commutative A.  ``computed[s]`` says whether every internal degree of
    Tor_s lies inside the truncation.
    """

    ring: str = ""
    convention: str = CONVENTION
    computed: tuple[bool, ...] = ()

    @property
    def idegs(self) -> tuple[int, ...]:
        return self.degrees

    def table(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for s, d in zip(self.hdegs, self.degrees):
            out[(s, d)] = out.get((s, d), 0) + 1
        return out

    def dims(self) -> list[int | None]:
        """Dimension per homological degree 0..s_max; None where Tor_s is not computed."""
        s_max = self.truncation[0] if self.truncation else max(self.hdegs, default=0)
        counts = [sum(1 for s in self.hdegs if s == n) for n in range(s_max + 1)]
        return _mask(counts, self.computed)


def _mask(counts: list[int], computed: tuple[bool, ...]) -> list[int | None]:
    if not computed:
        return list(counts)
    return [n if s < len(computed) and computed[s] else None for s, n in enumerate(counts)]


def _power_tor_degree(g: int, cap: int | None, t: int) -> int | None:
    """Top internal degree of Tor_t over k[x]/(x^cap), |x| = g; None when Tor_t = 0."""
    if t == 0:
        return 0
    if cap is None:
        return g if t == 1 else None
    if cap == 1:
        return None
    m, r = divmod(t, 2)
    return m * cap * g + r * g


def _presentation_tor_bound(pres: AlgebraPresentation, s: int) -> int | None:
    degrees = [v.degree for v in pres.variables]
    if not degrees:
        return 0
    top = max(degrees)
    if pres.kind == EXTERIOR:
        return s * top
    if all(sum(1 for e in r if e) == 1 for r in pres.relations):
        # tensor product of truncated polynomial rings
        best: list[int | None] = [0] + [None] * s
        for g, cap in zip(degrees, pres.exponents):
            piece = [_power_tor_degree(g, cap, t) for t in range(s + 1)]
            best = [
                max(
                    (best[i] + piece[t - i] for i in range(t + 1) if best[i] is not None and piece[t - i] is not None),
                    default=None,
                )
                for t in range(s + 1)
            ]
        return 0 if best[s] is None else best[s]
    if all(sum(r) == 2 for r in pres.relations):
        # quadratic monomial relations: Koszul, Tor_s sits in weight s
        return s * top
    if s == 1:
        return top
    if s == 2:
        pair = sum(sorted(degrees)[-2:])
        return max([pair] + [sum(e * g for e, g in zip(r, degrees)) for r in pres.relations])
    return None


def tor_degree_bound(a: GradedAlgebra, s: int) -> int | None:
    """Highest internal degree in which Tor_s of ``a`` can be nonzero; None when unknown.

    Uses the presentation when there is one, otherwise the top degree D of a
    finite-dimensional algebra (Tor_s lives in degrees <= s * D).
    """
    if s == 0:
        return 0
    bounds = []
    pres = a.presentation
    if pres is not None and pres.kind in (POLYNOMIAL, GROUP_ALGEBRA, EXTERIOR):
        bounds.append(_presentation_tor_bound(pres, s))
    if a.complete:
        bounds.append(s * max(a.degrees, default=0))
    known = [b for b in bounds if b is not None]
    return min(known) if known else None


def computed_degrees(a: GradedAlgebra, s_max: int, d_max: int) -> tuple[bool, ...]:
    """For each s <= s_max, whether Tor_s is exact inside internal degree d_max."""
    out = []
    for s in range(s_max + 1):
        bound = tor_degree_bound(a, s)
        out.append(bound is not None and bound <= d_max)
    return tuple(out)


def _require_chain_maps(bar: BarComplex) -> None:
    d_squared = bar.check()
    if not d_squared.passed:
        raise NotAComplex(f"bar complex of {bar.algebra.name}: d o d != 0 at {d_squared.failed()[0].witness}")
    leibniz = chain_map_report(bar)
    if not leibniz.passed:
        entry = leibniz.failed()[0]
        raise NotCommutative(f"{bar.algebra.name}: {entry.axiom} fails at {entry.witness}")


def tor_bialgebra(a: GradedAlgebra, n_max: int, d_max: int | None = None) -> TorHopf:
    """Tor in homological degrees <= n_max and internal degrees <= d_max.

    Raises NotAComplex or NotCommutative when the bar complex fails d^2 = 0
    or the Leibniz rules, so that no product is transported from a broken
    complex.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if d_max is None:
        d_max = a.degree_bound if a.degree_bound is not None else 0
    f = a.field
    bar = bar_complex(a, n_max + 1, d_max)
    _require_chain_maps(bar)

    homology: dict[tuple[int, int], Homology] = {}
    basis: list[tuple[int, int, int]] = []
    for d in range(d_max + 1):
        for s in range(n_max + 1):
            if bar.dim(s, d) == 0:
                continue
            d_in = bar.differential(s + 1, d)
            d_out = bar.differential(s, d)
            h = homology_dims(d_in, d_out)
            homology[(s, d)] = h
            for n in range(h.dimension):
                basis.append((s, d, n))
    basis.sort()
    position = {key: i for i, key in enumerate(basis)}

    def rep(i: int) -> dict[Word, object]:
        s, d, n = basis[i]
        words = bar.words[(s, d)]
        return {words[k]: c for k, c in homology[(s, d)].representatives[n].items()}

    def retract(chain: dict[Word, object], s: int, d: int) -> Vector:
        h = homology.get((s, d))
        if h is None:
            return {}
        idx = bar.index[(s, d)]
        coords = h.retract({idx[w]: c for w, c in chain.items()})
        return {position[(s, d, n)]: c for n, c in coords.items()}

    reps = [rep(i) for i in range(len(basis))]
    degree_of = {w: d for (s, d), ws in bar.words.items() for w in ws}

    mult: dict = {}
    for i, j in product(range(len(basis)), repeat=2):
        s = basis[i][0] + basis[j][0]
        d = basis[i][1] + basis[j][1]
        if s > n_max or d > d_max:
            continue
        chain: dict[Word, object] = {}
        for u, cu in reps[i].items():
            for v, cv in reps[j].items():
                for w, sign in shuffle(u, v, bar.letter_weight).items():
                    axpy(f, chain, f.mul(f.from_int(sign), f.mul(cu, cv)), {w: f.one})
        prod_ = retract(chain, s, d)
        if prod_:
            mult[(i, j)] = prod_

    comult: dict[int, Vector] = {}
    for i in range(len(basis)):
        terms: Vector = {}
        for w, c in reps[i].items():
            for x, y in deconcatenate(w):
                rx = retract({x: f.one}, len(x), degree_of[x])
                ry = retract({y: f.one}, len(y), degree_of[y])
                for p, cx in rx.items():
                    for q, cy in ry.items():
                        axpy(f, terms, f.mul(c, f.mul(cx, cy)), {(p, q): f.one})
        comult[i] = terms

    labels = []
    for i, (s, d, n) in enumerate(basis):
        lead = min(reps[i])
        labels.append(bar.word_label(lead))
    unit = position[(0, 0, 0)]
    tor = TorHopf(
        field=f,
        space=GradedVectorSpace(tuple(d for _, d, _ in basis), tuple(labels)),
        parities=tuple(s + (d if a.graded_commutative else 0) for s, d, _ in basis),
        hdegs=tuple(s for s, _, _ in basis),
        computed=computed_degrees(a, n_max, d_max),
        comult=comult,
        counit={unit: {0: f.one}},
        mult=mult,
        unit={unit: f.one},
        name=f"Tor^{a.name}(k,k)",
        truncation=(n_max, d_max),
        ring=a.name,
    )
    tor.antipode = antipode(tor)
    log.info("Tor of %s: dims %s", a.name, tor.dims())
    return tor


def graded_commutativity_report(t: TorHopf) -> Report:
    """u * v = (-1)^{|u||v|} v * u on all basis pairs inside the truncation.

    |u| is the sign degree in ``parities``: the homological degree, plus the
    internal degree for graded-commutative rings.
    """
    f = t.field
    report = Report(subject=t.name)
    witness = None
    for i, j in product(range(t.dim), repeat=2):
        if not t.in_range(i, j):
            continue
        lhs = t.multiply({i: f.one}, {j: f.one})
        rhs = t.multiply({j: f.one}, {i: f.one})
        sign = koszul(f, t.parities[i], t.parities[j])
        if lhs != {k: f.mul(sign, c) for k, c in rhs.items()}:
            witness = f"({t.labels[i]}, {t.labels[j]})"
            break
    report.add("graded_commutative", witness)
    return report


def exterior_dual_report(t: TorHopf) -> Report:
    """Compare the dual of Tor with the exterior Hopf algebra on its degree-one classes.

    e_{i1} ... e_{ik} is sent to the product of the dual classes of the
    (1, 1) basis vectors in the same order.
    """
    f = t.field
    dual = dual_bialgebra(t)
    generators = [i for i in range(t.dim) if t.hdegs[i] == 1 and t.degrees[i] == 1]
    ext = exterior_bialgebra(len(generators), "graded", f)
    images = []
    for label in ext.labels:
        chosen = [] if label == "1" else [int(part[1:]) - 1 for part in label.split("*")]
        value = dict(dual.unit)
        for g in chosen:
            value = dual.multiply(value, {generators[g]: f.one})
        images.append(value)
    report = isomorphism_report(ext, dual, images)
    report.subject = f"exterior({len(generators)}) -> dual({t.name})"
    report.notes["generators"] = len(generators)
    return report


# ---- minimal resolution oracle ----


@dataclass
class TorTable:
    """Dimensions of Tor by bidegree, with the computed range."""

    field: FieldSpec
    ring: str
    table: dict[tuple[int, int], int]
    s_max: int
    d_max: int
    computed: tuple[bool, ...] = ()

    def dims(self) -> list[int | None]:
        counts = [sum(n for (s, _), n in self.table.items() if s == k) for k in range(self.s_max + 1)]
        return _mask(counts, self.computed)


def tor_dims_via_resolution(a: GradedAlgebra, n_max: int, d_max: int | None = None) -> TorTable:
    """Generator counts of a degreewise minimal free resolution of k by right A-modules."""
    if a.augmentation is None:
        raise NotAugmented(f"{a.name} has no augmentation")
    if not a.is_connected():
        raise NotConnected(f"{a.name}: degree 0 is not spanned by the unit")
    if d_max is None:
        d_max = a.degree_bound if a.degree_bound is not None else 0
    if not a.complete and a.degree_bound is not None and d_max > a.degree_bound:
        raise InfiniteDimensional(f"{a.name} is realized up to degree {a.degree_bound}")
    f = a.field
    by_degree: dict[int, list[int]] = {}
    for i, deg in enumerate(a.degrees):
        by_degree.setdefault(deg, []).append(i)

    def free_basis(gens: list[int], d: int) -> list[tuple[int, int]]:
        """Basis (generator, algebra basis) of the free module in degree d."""
        return [(g, b) for g, gd in enumerate(gens) for b in by_degree.get(d - gd, [])]

    table: dict[tuple[int, int], int] = {(0, 0): 1}
    # F_0 = A with generator in degree 0; its map to k is the augmentation.
    gens: list[int] = [0]
    images: list[Vector] = []
    kernel = _augmentation_kernel(a, d_max, by_degree)
    for n in range(1, n_max + 1):
        new_gens, new_images = _minimal_generators(a, gens, kernel, d_max, by_degree, free_basis)
        for deg in new_gens:
            table[(n, deg)] = table.get((n, deg), 0) + 1
        if not new_gens:
            break
        prev_gens, gens, images = gens, new_gens, new_images
        kernel = {}
        for d in range(d_max + 1):
            source = free_basis(gens, d)
            target = {key: k for k, key in enumerate(free_basis(prev_gens, d))}
            columns = {}
            for j, (g, b) in enumerate(source):
                col: Vector = {}
                for (h, b2), c in images[g].items():
                    for k, c2 in a.multiply({b2: f.one}, {b: f.one}).items():
                        axpy(f, col, f.mul(c, c2), {target[(h, k)]: f.one})
                columns[j] = col
            m = SparseMatrix(f, len(target), len(source), columns)
            kernel[d] = [{source[k]: c for k, c in v.items()} for v in m.kernel()]
    log.info("minimal resolution of k over %s: %s", a.name, table)
    return TorTable(f, a.name, table, n_max, d_max, computed_degrees(a, n_max, d_max))


def _augmentation_kernel(a: GradedAlgebra, d_max: int, by_degree: dict) -> dict[int, list[Vector]]:
    f = a.field
    return {d: [{(0, b): f.one} for b in by_degree.get(d, []) if d > 0] for d in range(d_max + 1)}


def _minimal_generators(a, gens, kernel, d_max, by_degree, free_basis):
    """Choose minimal generators of the kernel submodule, degree by degree.

    Returns the degrees of the new generators and each one's image in the
    previous free module.
    """
    f = a.field
    chosen_deg: list[int] = []
    chosen_vec: list[Vector] = []
    for d in range(d_max + 1):
        generated = Subspace(f)
        for g_deg, g_vec in zip(chosen_deg, chosen_vec):
            for b in by_degree.get(d - g_deg, []):
                generated.add(_act(a, g_vec, b))
        for v in kernel.get(d, []):
            if generated.add(v):
                chosen_deg.append(d)
                chosen_vec.append(v)
    return chosen_deg, chosen_vec


def _act(a: GradedAlgebra, v: Vector, b: int) -> Vector:
    """Right action of the basis element b on an element of a free module."""
    f = a.field
    out: Vector = {}
    for (g, b2), c in v.items():
        for k, c2 in a.multiply({b2: f.one}, {b: f.one}).items():
            axpy(f, out, f.mul(c, c2), {(g, k): f.one})
    return out
