"""
Sparse exact linear algebra.

Vectors are dicts from sortable keys (ints, or tuples of ints for tensor
products) to nonzero scalars of one ``FieldSpec``.  Elimination always
pivots on the lowest key, so every basis produced here is reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Iterable, Sequence

from errors import MixedField, NotAComplex
from fields import FieldSpec, Scalar

log = logging.getLogger(__name__)

Vector = dict


# ---- vector helpers ----


def axpy(field: FieldSpec, target: Vector, c: Scalar, v: Vector) -> None:
    """target += c * v, in place, dropping zeros."""
    if field.is_zero(c):
        return
    zero = field.zero
    for k, x in v.items():
        y = field.add(target.get(k, zero), field.mul(c, x))
        if y == zero:
            target.pop(k, None)
        else:
            target[k] = y


def vadd(field: FieldSpec, u: Vector, v: Vector) -> Vector:
    out = dict(u)
    axpy(field, out, field.one, v)
    return out


def vsub(field: FieldSpec, u: Vector, v: Vector) -> Vector:
    out = dict(u)
    axpy(field, out, field.neg(field.one), v)
    return out


def vscale(field: FieldSpec, c: Scalar, v: Vector) -> Vector:
    if field.is_zero(c):
        return {}
    return {k: field.mul(c, x) for k, x in v.items()}


def vcombine(field: FieldSpec, terms: Iterable[tuple[Scalar, Vector]]) -> Vector:
    out: Vector = {}
    for c, v in terms:
        axpy(field, out, c, v)
    return out


def vtensor(field: FieldSpec, *vectors: Vector) -> Vector:
    """Tensor product of vectors; keys are flattened tuples."""
    out: Vector = {(): field.one}
    for v in vectors:
        nxt: Vector = {}
        for k, x in out.items():
            for j, y in v.items():
                key = k + (j if isinstance(j, tuple) else (j,))
                nxt[key] = field.mul(x, y)
        out = nxt
    return {k: x for k, x in out.items() if not field.is_zero(x)}


def unit_vector(field: FieldSpec, key: Hashable) -> Vector:
    return {key: field.one}


# ---- subspaces in reduced row echelon form ----


class Subspace:
    """A subspace kept in reduced row echelon form, pivots at lowest keys."""

    def __init__(self, field: FieldSpec, vectors: Iterable[Vector] = ()):
        self.field = field
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows)

    def basis(self) -> list[Vector]:
        return [dict(self.rows[p]) for p in self.pivots]

    def reduce(self, v: Vector) -> Vector:
        """Remainder of v modulo the subspace; supported off the pivots."""
        f = self.field
        r = dict(v)
        for p in [k for k in v if k in self.rows]:
            c = r.get(p)
            if c is not None:
                axpy(f, r, f.neg(c), self.rows[p])
        return r

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def add(self, v: Vector) -> bool:
        """Insert v; return False when it was already in the span."""
        f = self.field
        r = self.reduce(v)
        if not r:
            return False
        pivot = min(r)
        inv = f.inv(r[pivot])
        r = {k: f.mul(inv, x) for k, x in r.items()}
        for row in self.rows.values():
            c = row.get(pivot)
            if c is not None:
                axpy(f, row, f.neg(c), r)
        self.rows[pivot] = r
        return True

    def coordinates(self, v: Vector) -> dict | None:
        """Coefficients of v on the RREF rows (keyed by pivot), or None."""
        if not self.contains(v):
            return None
        return {p: v[p] for p in self.pivots if p in v}

    def quotient_coords(self, v: Vector) -> Vector:
        """Image of v in the quotient; coordinates on the non-pivot keys."""
        return self.reduce(v)

    def copy(self) -> Subspace:
        other = Subspace(self.field)
        other.rows = {p: dict(r) for p, r in self.rows.items()}
        return other


class Solver:
    """Express vectors as combinations of a fixed list of generators."""

    def __init__(self, field: FieldSpec, vectors: Sequence[Vector]):
        self.field = field
        self.size = len(vectors)
        self._rows: dict = {}
        self._combos: dict = {}
        self.independent: list[int] = []
        f = field
        for idx, v in enumerate(vectors):
            r, combo = self._reduce(v, {idx: f.one})
            if not r:
                continue
            pivot = min(r)
            inv = f.inv(r[pivot])
            r = vscale(f, inv, r)
            combo = vscale(f, inv, combo)
            for q, row in self._rows.items():
                c = row.get(pivot)
                if c is not None:
                    axpy(f, row, f.neg(c), r)
                    axpy(f, self._combos[q], f.neg(c), combo)
            self._rows[pivot] = r
            self._combos[pivot] = combo
            self.independent.append(idx)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Vector, combo: dict) -> tuple[Vector, dict]:
        f = self.field
        r = dict(v)
        combo = dict(combo)
        for p in [k for k in v if k in self._rows]:
            c = r.get(p)
            if c is not None:
                axpy(f, r, f.neg(c), self._rows[p])
                axpy(f, combo, f.neg(c), self._combos[p])
        return r, combo

    def express(self, w: Vector) -> dict | None:
        """Coefficients c with w = sum c[i] * vectors[i], or None if not in span."""
        f = self.field
        r, neg_combo = self._reduce(w, {})
        if r:
            return None
        return vscale(f, f.neg(f.one), neg_combo)


# ---- sparse matrices ----


class SparseMatrix:
    """A rows x cols matrix over one field, stored column by column."""

    def __init__(self, field: FieldSpec, rows: int, cols: int, columns: dict | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._cols: dict[int, Vector] = {}
        for j, col in (columns or {}).items():
            if not 0 <= j < cols:
                raise IndexError(f"column {j} out of range 0..{cols - 1}")
            clean = {}
            for i, x in col.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row {i} out of range 0..{rows - 1}")
                field.check(x)
                if not field.is_zero(x):
                    clean[i] = x
            if clean:
                self._cols[j] = clean

    @classmethod
    def from_entries(
        cls, field: FieldSpec, rows: int, cols: int, entries: Iterable[tuple[int, int, Scalar]]
    ) -> SparseMatrix:
        columns: dict[int, dict] = {}
        for i, j, x in entries:
            col = columns.setdefault(j, {})
            if i in col:
                raise ValueError(f"duplicate entry ({i}, {j})")
            col[i] = x
        return cls(field, rows, cols, columns)

    @classmethod
    def from_dense(cls, field: FieldSpec, dense: Sequence[Sequence]) -> SparseMatrix:
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = [
            (i, j, field.coerce(x)) for i, row in enumerate(dense) for j, x in enumerate(row) if x
        ]
        return cls.from_entries(field, rows, cols, [(i, j, x) for i, j, x in entries if not field.is_zero(x)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> SparseMatrix:
        return cls(field, n, n, {j: {j: field.one} for j in range(n)})

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> SparseMatrix:
        return cls(field, rows, cols)

    @classmethod
    def from_function(
        cls, field: FieldSpec, rows: int, cols: int, image: Callable[[int], Vector]
    ) -> SparseMatrix:
        return cls(field, rows, cols, {j: image(j) for j in range(cols)})

    def entries(self) -> list[tuple[int, int, Scalar]]:
        return sorted((i, j, x) for j, col in self._cols.items() for i, x in col.items())

    def column(self, j: int) -> Vector:
        return dict(self._cols.get(j, {}))

    def row_vectors(self) -> dict[int, Vector]:
        rows: dict[int, Vector] = {}
        for j, col in self._cols.items():
            for i, x in col.items():
                rows.setdefault(i, {})[j] = x
        return rows

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        for j, x in v.items():
            col = self._cols.get(j)
            if col:
                axpy(self.field, out, x, col)
        return out

    def _same_field(self, other: SparseMatrix) -> None:
        if self.field != other.field:
            raise MixedField(f"{self.field} vs {other.field}")

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        """Composite self o other."""
        self._same_field(other)
        if other.rows != self.cols:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return SparseMatrix(
            self.field, self.rows, other.cols, {j: self.apply(c) for j, c in other._cols.items()}
        )

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        self._same_field(other)
        columns = {j: dict(c) for j, c in self._cols.items()}
        for j, c in other._cols.items():
            axpy(self.field, columns.setdefault(j, {}), self.field.one, c)
        return SparseMatrix(self.field, self.rows, self.cols, columns)

    def __neg__(self) -> SparseMatrix:
        return self.scale(self.field.neg(self.field.one))

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self + (-other)

    def scale(self, c: Scalar) -> SparseMatrix:
        return SparseMatrix(
            self.field, self.rows, self.cols, {j: vscale(self.field, c, col) for j, col in self._cols.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self._cols == other._cols
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, field={self.field})"

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def is_zero(self) -> bool:
        return not self._cols

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(self.field, self.cols, self.rows, self.row_vectors())

    def power(self, k: int) -> SparseMatrix:
        result = SparseMatrix.identity(self.field, self.rows)
        for _ in range(k):
            result = self @ result
        return result

    def kron(self, other: SparseMatrix) -> SparseMatrix:
        self._same_field(other)
        f = self.field
        columns: dict[int, Vector] = {}
        for j1, c1 in self._cols.items():
            for j2, c2 in other._cols.items():
                columns[j1 * other.cols + j2] = {
                    i1 * other.rows + i2: f.mul(x, y) for i1, x in c1.items() for i2, y in c2.items()
                }
        return SparseMatrix(f, self.rows * other.rows, self.cols * other.cols, columns)

    def to_dense(self) -> list[list]:
        dense = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for i, j, x in self.entries():
            dense[i][j] = x
        return dense

    # ---- elimination ----

    def row_echelon(self) -> Subspace:
        """Row space in RREF (pivot on lowest column, then lowest row)."""
        rows = self.row_vectors()
        return Subspace(self.field, (rows[i] for i in sorted(rows)))

    def image(self) -> Subspace:
        return Subspace(self.field, (self._cols[j] for j in sorted(self._cols)))

    def rank(self) -> int:
        return self.row_echelon().dim

    def kernel(self) -> list[Vector]:
        """Null space basis: one vector per free column, in column order."""
        f = self.field
        echelon = self.row_echelon()
        pivots = set(echelon.rows)
        basis = []
        for free in range(self.cols):
            if free in pivots:
                continue
            v = {free: f.one}
            for p, row in echelon.rows.items():
                c = row.get(free)
                if c is not None:
                    v[p] = f.neg(c)
            basis.append(v)
        return basis


def rank(m: SparseMatrix) -> int:
    """Rank by Gaussian elimination with deterministic pivoting."""
    return m.rank()


# ---- homology ----


@dataclass
class Homology:
    """Homology of C_{in} -> C -> C_{out} at the middle term."""

    field: FieldSpec
    dimension: int
    representatives: list[Vector]
    cycles: Subspace
    boundaries: Subspace
    _solver: Solver = dc_field(repr=False)
    _retraction: dict = dc_field(repr=False, default_factory=dict)

    def express(self, cycle: Vector) -> dict[int, Scalar]:
        """Coordinates of a cycle's class on the representatives."""
        if not self.cycles.contains(cycle):
            raise NotAComplex("vector is not a cycle")
        coeffs = self._solver.express(self.boundaries.reduce(cycle))
        if coeffs is None:
            raise NotAComplex("cycle not expressible modulo boundaries")
        return coeffs

    def retract(self, chain: Vector) -> dict[int, Scalar]:
        """Chain retraction onto homology: the class of the cycle part of ``chain``.

        Zero on the standard complement of the cycle space, so it is a
        chain map to homology with zero differential.
        """
        out: dict = {}
        for p, c in chain.items():
            image = self._retraction.get(p)
            if image:
                axpy(self.field, out, c, image)
        return out


def homology_dims(d_in: SparseMatrix, d_out: SparseMatrix) -> Homology:
    """Homology of two composable maps with deterministic representatives."""
    if d_in.field != d_out.field:
        raise MixedField(f"{d_in.field} vs {d_out.field}")
    if d_in.rows != d_out.cols:
        raise ValueError("d_in and d_out are not composable")
    if d_in.rows and not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out o d_in != 0")
    return _homology(d_in.field, d_in.image(), Subspace(d_in.field, d_out.kernel()))


def _homology(field: FieldSpec, boundaries: Subspace, cycles: Subspace) -> Homology:
    extended = boundaries.copy()
    reps: list[Vector] = []
    for z in cycles.basis():
        if extended.add(z):
            reps.append(z)
    solver = Solver(field, [boundaries.reduce(h) for h in reps])
    retraction = {}
    for p, z in cycles.rows.items():
        coeffs = solver.express(boundaries.reduce(z))
        retraction[p] = coeffs or {}
    log.debug("homology: %d cycles, %d boundaries, %d classes", cycles.dim, boundaries.dim, len(reps))
    return Homology(field, len(reps), reps, cycles, boundaries, solver, retraction)


# ---- graded vector spaces ----


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite graded vector space: one degree and one label per basis vector."""

    degrees: tuple[int, ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i}" for i in range(len(self.degrees))))
        if len(self.labels) != len(self.degrees):
            raise ValueError("one label per basis vector is required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def component(self, degree: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]


def shift(v: GradedVectorSpace, n: int) -> GradedVectorSpace:
    """Grading shift: degree d of the result is degree d - n of ``v``."""
    return GradedVectorSpace(tuple(d + n for d in v.degrees), v.labels)
