"""
Tests for block design verification
"""

import pytest

from src.designs import design_verify
from src.errors import IndexOutOfRange, InvalidInputError, UnequalBlockSizes
from tests.conftest import load_data

FANO = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]


class TestDesignVerify:
    """Tests for t-(n, k, lambda) designs"""

    def test_affine_plane(self):
        data = load_data('affine_plane_f3.json')
        design = design_verify(data['points'], data['blocks'], data['t'])
        assert design.is_design
        assert (design.k, design.lam, design.r, design.b) == (3, 1, 4, 12)
        assert design.intersection_numbers == (0, 1)
        assert design.quasi_symmetric
        assert not design.symmetric
        assert design.label() == '2-(9,3,1; 0,1)'
        assert design.counting_identities
        assert design.fisher_holds

    @pytest.mark.parametrize('name', ['f3_square_simplices.json', 'f3_nonsquare_simplices.json'])
    def test_simplex_supports(self, name):
        data = load_data(name)
        design = design_verify(data['points'], data['blocks'], 2)
        assert design.is_design
        assert (design.k, design.lam, design.r, design.b) == (4, 2, 6, 15)
        assert design.counting_identities
        assert design.fisher_holds

    def test_fano_plane_is_symmetric(self):
        design = design_verify(7, FANO, 2)
        assert design.symmetric
        assert design.intersection_numbers == (1,)
        assert design.label() == '2-(7,3,1)'

    def test_block_order_is_irrelevant(self):
        shuffled = [list(reversed(block)) for block in reversed(FANO)]
        assert design_verify(7, shuffled, 2).is_design

    def test_not_a_design(self):
        design = design_verify(3, [[1, 2], [1, 3]], 2)
        assert not design.is_design
        assert design.lam is None
        assert design.uncovered == (2, 3)
        assert design.label() == 'not a 2-design'

    def test_one_design(self):
        design = design_verify(4, [[1, 2], [3, 4]], 1)
        assert design.is_design
        assert design.lam == 1
        assert design.fisher_holds is None

    def test_unequal_blocks(self):
        with pytest.raises(UnequalBlockSizes):
            design_verify(4, [[1, 2], [1, 2, 3]], 2)

    def test_point_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            design_verify(3, [[1, 4]], 2)

    def test_strength_out_of_range(self):
        with pytest.raises(InvalidInputError):
            design_verify(3, [[1, 2]], 4)

    def test_no_blocks(self):
        with pytest.raises(InvalidInputError):
            design_verify(3, [], 2)

    def test_repeated_point(self):
        with pytest.raises(InvalidInputError):
            design_verify(3, [[1, 1]], 2)
