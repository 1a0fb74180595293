"""
Tests for Hermitian spaces, diagonalization and discriminants
"""

import numpy as np
import pytest

from src import linalg
from src.errors import Degenerate, DimensionMismatch, NotHermitian
from src.geometry import (
    adjoint_of,
    diagonalize_form,
    discriminant_of,
    forms_equivalent,
    scalar_product,
    space_make,
    standard_space,
    subspace_analyze,
    vector_norms,
)
from src.gf import SquareClass


def ints(A):
    return A.view(np.ndarray).tolist()


class TestSpaceMake:
    """Tests for form validation"""

    def test_accepts_nondegenerate_symmetric_form(self, f3):
        space = space_make(f3, f3.matrix([[1, 0], [0, 2]]))
        assert space.dim == 2

    def test_rejects_non_hermitian(self, f5):
        with pytest.raises(NotHermitian):
            space_make(f5, f5.matrix([[1, 2], [3, 1]]))

    def test_rejects_singular(self, f5):
        with pytest.raises(Degenerate):
            space_make(f5, f5.matrix([[1, 1], [1, 1]]))

    def test_rejects_non_square(self, f5):
        with pytest.raises(NotHermitian):
            space_make(f5, f5.matrix([[1, 0, 0], [0, 1, 0]]))


class TestScalarProduct:
    """Tests for <u, v> = u* M v"""

    def test_standard_product(self, f11):
        space = standard_space(f11, 2)
        assert int(scalar_product(space, f11.GF([0, 1]), f11.GF([3, 5]))) == 5

    def test_length_mismatch(self, f11):
        space = standard_space(f11, 2)
        with pytest.raises(DimensionMismatch):
            scalar_product(space, f11.GF([0, 1, 0]), f11.GF([3, 5]))

    def test_unitary_product_conjugates_first_argument(self, f25):
        space = standard_space(f25, 1)
        alpha = f25.element([0, 1])
        u = f25.GF([int(alpha)])
        assert scalar_product(space, u, u) == alpha ** 5 * alpha

    def test_vector_norms(self, f5):
        space = standard_space(f5, 2)
        vectors = f5.matrix([[1, 1, 2], [2, 0, 2]])
        assert ints(vector_norms(space, vectors)) == [0, 1, 3]

    def test_adjoint_is_transpose_for_standard_forms(self, f5):
        A = f5.matrix([[1, 2, 3], [4, 0, 1]])
        adjoint = adjoint_of(A, standard_space(f5, 3), standard_space(f5, 2))
        assert ints(adjoint) == ints(A.T)


class TestSubspaceAnalyze:
    """Tests for isotropy of subspaces"""

    def test_nonisotropic_line(self, f3):
        report = subspace_analyze(standard_space(f3, 2), f3.matrix([[1], [1]]))
        assert report.dim == 1
        assert report.nonisotropic
        assert not report.totally_isotropic

    def test_isotropic_line(self, f5):
        report = subspace_analyze(standard_space(f5, 2), f5.matrix([[1], [2]]))
        assert report.isotropic
        assert report.totally_isotropic
        assert report.radical_basis.shape[1] == 1

    def test_dependent_basis_is_reduced(self, f5):
        report = subspace_analyze(standard_space(f5, 3), f5.matrix([[1, 2], [0, 0], [1, 2]]))
        assert report.dim == 1
        assert report.orth_complement_basis.shape[1] == 2


class TestDiagonalize:
    """Tests for the normal form diag(1, ..., 1, delta)"""

    def _check(self, space):
        P, diag = diagonalize_form(space)
        D = linalg.conj_transpose(space.field, P) @ space.form @ P
        assert ints(D) == ints(space.field.GF(np.diag([int(x) for x in diag])))
        return [int(x) for x in diag]

    def test_two_nonsquares_combine(self, f3):
        space = space_make(f3, f3.matrix([[2, 0], [0, 2]]))
        assert self._check(space) == [1, 1]

    def test_nonsquare_discriminant_moves_last(self, f3):
        space = space_make(f3, f3.matrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
        assert self._check(space) == [1, 1, 2]

    def test_off_diagonal_form(self, f5):
        space = space_make(f5, f5.matrix([[0, 1], [1, 0]]))
        diag = self._check(space)
        assert diag[0] == 1

    def test_case_u_normalizes_to_identity(self, f25):
        alpha = [0, 1]
        conj = f25.encode(f25.element(alpha) ** 5)
        space = space_make(f25, f25.matrix([[0, alpha], [conj, 1]]))
        assert self._check(space) == [1, 1]


class TestDiscriminant:
    """Tests for discriminants and congruence of forms"""

    def test_singular_gram_uses_basic_submatrix(self, f5):
        gram = f5.matrix([[2, 1, 1], [1, 2, 4], [1, 4, 2]])
        disc = discriminant_of(f5, gram)
        assert int(disc.representative) == 3
        assert disc.square_class == SquareClass.NONSQUARE

    def test_equivalent_forms(self, f3):
        identity = standard_space(f3, 2)
        scaled = space_make(f3, f3.matrix([[2, 0], [0, 2]]))
        assert forms_equivalent(identity, scaled)

    def test_inequivalent_forms(self, f3):
        identity = standard_space(f3, 2)
        twisted = space_make(f3, f3.matrix([[1, 0], [0, 2]]))
        assert not forms_equivalent(identity, twisted)

    def test_dimension_mismatch(self, f3):
        assert not forms_equivalent(standard_space(f3, 2), standard_space(f3, 3))
