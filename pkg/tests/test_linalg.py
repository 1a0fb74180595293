"""
Tests for exact linear algebra over finite fields
"""

import numpy as np
import pytest

from src import linalg
from src.errors import Degenerate, NotSquare


def ints(A):
    return A.view(np.ndarray).tolist()


class TestRowReduce:
    """Tests for elimination, rank and kernels"""

    def test_rank_and_kernel(self, f3):
        M = f3.matrix([[1, 1], [1, 1]])
        rank, K = linalg.rank_kernel(M)
        assert rank == 1
        assert ints(K) == [[2], [1]]
        assert linalg.is_zero(M @ K)

    def test_full_rank_has_empty_kernel(self, f5):
        M = f5.matrix([[1, 2], [3, 4]])
        assert linalg.rank(M) == 2
        assert linalg.kernel(M).shape == (2, 0)

    def test_pivots_are_lowest_index(self, f7_matrix):
        _, pivots = linalg.row_reduce(f7_matrix)
        assert pivots == [0, 2]


@pytest.fixture
def f7_matrix():
    from src.gf import field_make
    F7 = field_make(7)
    return F7.matrix([[1, 2, 0], [2, 4, 1], [3, 6, 1]])


class TestDeterminant:
    """Tests for fraction-free determinants"""

    def test_two_by_two(self, f5):
        assert int(linalg.determinant(f5.matrix([[1, 2], [3, 4]]))) == 3

    def test_row_swap_flips_sign(self, f5):
        assert int(linalg.determinant(f5.matrix([[0, 1], [1, 0]]))) == 4

    def test_three_by_three(self):
        from src.gf import field_make
        F7 = field_make(7)
        M = F7.matrix([[2, 0, 1], [1, 3, 2], [1, 1, 2]])
        assert int(linalg.determinant(M)) == 6

    def test_singular(self, f7_matrix):
        assert int(linalg.determinant(f7_matrix)) == 0

    def test_not_square(self, f5):
        with pytest.raises(NotSquare):
            linalg.determinant(f5.matrix([[1, 2, 3]]))


class TestInverse:
    """Tests for inversion"""

    def test_inverse(self, f11):
        M = f11.matrix([[2, 3], [5, 7]])
        assert np.array_equal(ints(M @ linalg.inverse(M)), [[1, 0], [0, 1]])

    def test_singular_raises(self, f3):
        with pytest.raises(Degenerate):
            linalg.inverse(f3.matrix([[1, 1], [1, 1]]))


class TestDecompositions:
    """Tests for CR factorization and principal blocks"""

    def test_cr_decompose(self):
        from src.gf import field_make
        F7 = field_make(7)
        M = F7.matrix([[1, 2, 3], [2, 4, 6]])
        C, R = linalg.cr_decompose(M)
        assert C.shape == (2, 1)
        assert ints(C @ R) == ints(M)

    def test_principal_block_is_invertible(self, f3):
        M = f3.matrix([[1, 1, 0], [1, 1, 0], [0, 0, 2]])
        indices, block = linalg.principal_block(M)
        assert indices == [0, 2]
        assert int(linalg.determinant(block)) != 0


class TestHermitian:
    """Tests for conjugate transposes and column spaces"""

    def test_symmetric_is_hermitian_in_case_o(self, f5):
        assert linalg.is_hermitian(f5, f5.matrix([[1, 2], [2, 3]]))
        assert not linalg.is_hermitian(f5, f5.matrix([[1, 2], [3, 3]]))

    def test_case_u_needs_conjugate_entries(self, f25):
        alpha = [0, 1]
        M = f25.matrix([[1, alpha], [alpha, 1]])
        assert not linalg.is_hermitian(f25, M)
        conj = f25.encode(f25.element(alpha) ** 5)
        assert linalg.is_hermitian(f25, f25.matrix([[1, alpha], [conj, 1]]))

    def test_same_column_space(self, f5):
        A = f5.matrix([[1, 0], [0, 1], [1, 1]])
        B = f5.matrix([[1, 1], [1, 2], [2, 3]])
        C = f5.matrix([[1], [0], [0]])
        assert linalg.same_column_space(A, B)
        assert not linalg.same_column_space(A, C)

    def test_trace(self, f11):
        assert int(linalg.trace(f11.matrix([[5, 1], [2, 9]]))) == 3


FIELD_ARGS = {
    'F3': (3,),
    'F7': (7,),
    'F25': (5, 2, [1, 1, 1], 'frobenius'),
}


def random_matrix(field, rng, shape):
    return field.GF(rng.integers(0, field.order, size=shape))


class TestRandomMatrices:
    """Seeded random matrices over prime and extension fields"""

    @pytest.mark.parametrize('name', list(FIELD_ARGS))
    def test_cr_decompose_reconstructs(self, name):
        from src.gf import field_make
        field = field_make(*FIELD_ARGS[name])
        rng = np.random.default_rng(300 + field.order)
        for _ in range(200):
            M = random_matrix(field, rng, tuple(int(x) for x in rng.integers(1, 6, size=2)))
            C, R = linalg.cr_decompose(M)
            r = linalg.rank(M)
            assert C.shape == (M.shape[0], r)
            assert R.shape == (r, M.shape[1])
            if r == 0:
                assert linalg.is_zero(M)
                continue
            assert linalg.rank(C) == r
            assert ints(C @ R) == ints(M)

    @pytest.mark.parametrize('name', list(FIELD_ARGS))
    def test_rank_plus_nullity(self, name):
        from src.gf import field_make
        field = field_make(*FIELD_ARGS[name])
        rng = np.random.default_rng(400 + field.order)
        for _ in range(100):
            M = random_matrix(field, rng, tuple(int(x) for x in rng.integers(1, 6, size=2)))
            r, K = linalg.rank_kernel(M)
            assert r + K.shape[1] == M.shape[1]
            if K.shape[1]:
                assert linalg.is_zero(M @ K)

    @pytest.mark.parametrize('name', list(FIELD_ARGS))
    def test_determinant_is_multiplicative(self, name):
        from src.gf import field_make
        field = field_make(*FIELD_ARGS[name])
        rng = np.random.default_rng(500 + field.order)
        for _ in range(100):
            n = int(rng.integers(1, 5))
            A = random_matrix(field, rng, (n, n))
            B = random_matrix(field, rng, (n, n))
            product = linalg.determinant(A) * linalg.determinant(B)
            assert int(linalg.determinant(A @ B)) == int(product)
