"""
Tests for regular simplices inside equiangular systems
"""

import pytest

from src.errors import NotEquiangular
from src.frames import equiangular_of, regular_simplex
from src.gf import SquareClass, field_make
from src.simplices import simplex_enumerate, simplex_necessary, simplices_by_criteria
from tests.conftest import load_data


class TestSimplexNecessary:
    """Tests for the necessary conditions"""

    def test_gerzon_ten(self, gerzon_ten):
        params = equiangular_of(gerzon_ten)
        assert simplex_necessary(10, 4, 3, params).squares
        assert not simplex_necessary(10, 4, 2, params).squares

    def test_etf_congruence(self, three_lines):
        params = equiangular_of(three_lines)
        result = simplex_necessary(3, 2, 2, params, etf=True)
        assert result.etf_congruence is not None
        assert result.possible == (result.squares and result.etf_congruence)


class TestSimplexEnumerate:
    """Tests for simplex enumeration"""

    def test_hesse_has_twelve_triangles(self, hesse):
        records = simplex_enumerate(hesse)
        triangles = [r for r in records if r.s == 2]
        assert len(triangles) == 12
        assert len(records) == 12
        assert all(r.discriminant_matches for r in records)

    def test_gerzon_ten_tetrahedra(self, gerzon_ten):
        records = simplex_enumerate(gerzon_ten)
        assert len(records) == 30
        assert {r.s for r in records} == {3}

        square = [r for r in records if r.discriminant == SquareClass.SQUARE]
        nonsquare = [r for r in records if r.discriminant == SquareClass.NONSQUARE]
        assert len(square) == 15
        assert len(nonsquare) == 15
        assert all(r.discriminant_matches for r in records)
        assert all(r.criteria is None for r in records)

    def test_gerzon_ten_supports_are_designs(self, gerzon_ten):
        records = simplex_enumerate(gerzon_ten, 3)
        square = sorted(list(r.kappa) for r in records if r.discriminant == SquareClass.SQUARE)
        nonsquare = sorted(list(r.kappa) for r in records if r.discriminant == SquareClass.NONSQUARE)
        assert square == sorted(load_data('f3_square_simplices.json')['blocks'])
        assert nonsquare == sorted(load_data('f3_nonsquare_simplices.json')['blocks'])

    def test_c_prime_tracks_discriminant(self, gerzon_ten):
        records = {r.kappa: r for r in simplex_enumerate(gerzon_ten, 3)}
        assert int(records[(1, 2, 3, 4)].c_prime) == 2
        assert records[(1, 2, 3, 4)].discriminant == SquareClass.NONSQUARE
        assert int(records[(7, 8, 9, 10)].c_prime) == 1
        assert records[(7, 8, 9, 10)].discriminant == SquareClass.SQUARE

    def test_regular_triangle(self):
        fs = regular_simplex(field_make(7), 2)
        records = simplex_enumerate(fs, 2)
        assert [r.kappa for r in records] == [(1, 2, 3)]
        assert records[0].criteria is True
        assert int(records[0].c_prime) == 3

    def test_size_list(self, hesse):
        assert simplex_enumerate(hesse, [3]) == []
        assert len(simplex_enumerate(hesse, [2, 3])) == 12

    def test_not_equiangular(self, cycle_pair):
        with pytest.raises(NotEquiangular):
            simplex_enumerate(cycle_pair[0])


class TestSimplicesByCriteria:
    """Tests for the triple-product characterization"""

    def test_agrees_with_direct_check(self):
        fs = regular_simplex(field_make(7), 2)
        assert simplices_by_criteria(fs, 2) == [(1, 2, 3)]
