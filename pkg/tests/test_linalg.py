"""Tests for linalg.py -- sparse elimination, homology and graded spaces."""

import random

import pytest

from errors import MixedField, NotAComplex
from fields import GF, QQ
from linalg import GradedVectorSpace, SparseMatrix, Solver, Subspace, homology_dims, rank, shift, vtensor


def random_matrix(field, rows, cols, rng, density=0.5):
    entries = []
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                x = field.random(rng)
                if not field.is_zero(x):
                    entries.append((i, j, x))
    return SparseMatrix.from_entries(field, rows, cols, entries)


class TestRank:
    def test_zero(self):
        assert rank(SparseMatrix.zero(QQ, 3, 3)) == 0

    def test_identity(self):
        assert rank(SparseMatrix.identity(GF(2), 4)) == 4

    def test_small_gf2(self):
        m = SparseMatrix.from_dense(GF(2), [[1, 1, 0], [1, 1, 1]])
        assert m.rank() == 2

    @pytest.mark.parametrize("field", [QQ, GF(2), GF(5)])
    def test_rank_nullity(self, field):
        rng = random.Random(3)
        for _ in range(20):
            m = random_matrix(field, rng.randint(1, 6), rng.randint(1, 6), rng)
            kernel = m.kernel()
            assert m.rank() + len(kernel) == m.cols
            for v in kernel:
                assert m.apply(v) == {}

    def test_mixed_fields(self):
        with pytest.raises(MixedField):
            SparseMatrix.identity(QQ, 2) @ SparseMatrix.identity(GF(2), 2)

    def test_stored_zero_rejected(self):
        m = SparseMatrix.from_entries(GF(3), 2, 2, [(0, 0, 0), (1, 1, 2)])
        assert m.nnz == 1

    def test_duplicate_entry(self):
        with pytest.raises(ValueError):
            SparseMatrix.from_entries(QQ, 2, 2, [(0, 0, QQ.one), (0, 0, QQ.one)])


class TestDeterminism:
    def test_same_basis_twice(self):
        rng = random.Random(11)
        m = random_matrix(GF(3), 5, 7, rng)
        assert m.kernel() == m.kernel()
        assert Subspace(GF(3), m.kernel()).basis() == Subspace(GF(3), list(m.kernel())).basis()

    def test_pivots_are_lowest_keys(self):
        s = Subspace(QQ, [{2: QQ.one, 5: QQ.one}, {0: QQ.one, 2: QQ.one}])
        assert s.pivots == [0, 2]
        assert s.rows[0] == {0: QQ.one, 5: QQ.neg(QQ.one)}


class TestSolver:
    def test_express(self):
        f = GF(5)
        vectors = [{0: 1, 1: 2}, {1: 1}, {0: 1, 1: 3}]
        solver = Solver(f, vectors)
        assert solver.rank == 2
        coeffs = solver.express({0: 2, 1: 1})
        total = {}
        for i, c in coeffs.items():
            for k, x in vectors[i].items():
                total[k] = f.add(total.get(k, 0), f.mul(c, x))
        assert {k: x for k, x in total.items() if x} == {0: 2, 1: 1}

    def test_not_in_span(self):
        assert Solver(QQ, [{0: QQ.one}]).express({1: QQ.one}) is None


class TestHomology:
    def test_zero_differentials(self):
        z = SparseMatrix.zero(QQ, 3, 3)
        assert homology_dims(z, z).dimension == 3

    def test_exact(self):
        h = homology_dims(SparseMatrix.identity(QQ, 2), SparseMatrix.zero(QQ, 1, 2))
        assert h.dimension == 0

    def test_multiplication_by_x_is_exact(self):
        # k[x]/(x^2) with both maps multiplication by x: image = kernel = span{x}.
        x = SparseMatrix.from_dense(QQ, [[0, 0], [1, 0]])
        h = homology_dims(x, x)
        assert h.dimension == 0

    def test_not_a_complex(self):
        with pytest.raises(NotAComplex):
            homology_dims(SparseMatrix.identity(QQ, 2), SparseMatrix.identity(QQ, 2))

    def test_euler_characteristic(self):
        rng = random.Random(5)
        f = GF(2)
        for _ in range(10):
            a, b, c = rng.randint(1, 4), rng.randint(1, 5), rng.randint(1, 4)
            d2 = random_matrix(f, b, a, rng)
            # d1 kills the image of d2: rows drawn from the left kernel of d2.
            left = d2.transpose().kernel()
            rows = [left[rng.randrange(len(left))] if left and rng.random() < 0.7 else {} for _ in range(c)]
            d1 = SparseMatrix(f, b, c, {i: r for i, r in enumerate(rows) if r}).transpose()
            h1 = homology_dims(d2, d1)
            h0 = homology_dims(d1, SparseMatrix.zero(f, 0, c))
            h2 = homology_dims(SparseMatrix.zero(f, a, 0), d2)
            assert a - b + c == h2.dimension - h1.dimension + h0.dimension

    def test_express_modulo_boundaries(self):
        d_in = SparseMatrix.from_dense(QQ, [[1], [1], [0]])
        d_out = SparseMatrix.zero(QQ, 1, 3)
        h = homology_dims(d_in, d_out)
        assert h.dimension == 2
        # e0 + e1 is a boundary.
        assert h.express({0: QQ.one}) == {0: QQ.one}
        assert h.express({1: QQ.one}) == {0: QQ.neg(QQ.one)}


class TestGradedVectorSpace:
    def test_shift(self):
        v = GradedVectorSpace((0,), ("a",))
        assert shift(v, 0) == v
        assert shift(v, 2).dims == {2: 1}
        assert shift(shift(v, 1), -1) == v

    def test_shift_composes(self):
        v = GradedVectorSpace((0, 1, 1), ("a", "b", "c"))
        assert shift(shift(v, 2), 3) == shift(v, 5)

    def test_labels_unique(self):
        with pytest.raises(ValueError):
            GradedVectorSpace((0, 0), ("a", "a"))

    def test_default_labels(self):
        assert GradedVectorSpace((0, 1)).labels == ("v0", "v1")


class TestTensor:
    def test_keys_flatten(self):
        f = QQ
        t = vtensor(f, {0: f.one}, {(1, 2): f.from_int(3)})
        assert t == {(0, 1, 2): f.from_int(3)}
