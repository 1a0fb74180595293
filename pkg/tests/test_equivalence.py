"""
Tests for m-products, gauges, unitary and switching equivalence
"""

import itertools

import numpy as np
import pytest

from src.equivalence import gauge_of, m_product, switching_equiv, triples_applicable, unitary_equiv
from src.errors import IndexOutOfRange, ShapeMismatch, StrategyPreconditionFailed
from src.frames import frame_make
from src.geometry import standard_space
from src.gf import field_make, involve, unimodular_elements


def ints(A):
    return A.view(np.ndarray).tolist()


def switched(fs, values):
    t = fs.field.GF(np.array([int(v) for v in values], dtype=np.int64))
    return frame_make(fs.space, fs.synthesis * t.reshape(1, -1))


def certificate_holds(fs_a, fs_b, t_diag):
    field = fs_a.field
    t = field.GF(np.array([int(v) for v in t_diag], dtype=np.int64))
    gram = involve(field, t).reshape(-1, 1) * fs_a.gram * t.reshape(1, -1)
    return ints(gram) == ints(fs_b.gram)


class TestMProduct:
    """Tests for cyclic products of the Gram matrix"""

    def test_triple_product(self, three_lines):
        assert int(m_product(three_lines, (1, 2, 3)).value) == 4

    def test_norm(self, three_lines):
        assert int(m_product(three_lines, (2,)).value) == 1

    def test_out_of_range(self, three_lines):
        with pytest.raises(IndexOutOfRange):
            m_product(three_lines, (1, 4))

    def test_empty(self, three_lines):
        with pytest.raises(IndexOutOfRange):
            m_product(three_lines, ())


class TestGauge:
    """Tests for the gauge eta_jk"""

    def test_canonical_root_gives_one(self, three_lines):
        assert int(gauge_of(three_lines, 1, 2)) == 1

    def test_gauge_pairs_multiply_to_one(self, three_lines):
        flipped = switched(three_lines, [1, 10, 1])
        assert int(gauge_of(flipped, 1, 2)) == 10
        assert int(gauge_of(flipped, 1, 2) * gauge_of(flipped, 2, 1)) == 1

    def test_vanishing_product(self, cycle_pair):
        plus, _ = cycle_pair
        assert int(gauge_of(plus, 1, 3)) == 0


class TestUnitaryEquiv:
    """Tests for unitary equivalence"""

    def test_reflexive(self, three_lines):
        assert unitary_equiv(three_lines, three_lines).equivalent

    def test_equal_gram_different_rank(self, rank_gap_pair):
        phi, psi = rank_gap_pair
        assert ints(phi.gram) == ints(psi.gram)
        verdict = unitary_equiv(phi, psi)
        assert not verdict.equivalent
        assert verdict.reason.startswith('kernels differ')

    def test_switched_gram_differs(self, three_lines):
        verdict = unitary_equiv(three_lines, switched(three_lines, [1, 10, 1]))
        assert not verdict.equivalent
        assert verdict.reason == 'Gram matrices differ'

    def test_shape_mismatch(self, three_lines, hesse):
        with pytest.raises(ShapeMismatch):
            unitary_equiv(three_lines, hesse)


class TestSwitchingEquiv:
    """Tests for switching equivalence certificates and obstructions"""

    def test_sign_switch(self, three_lines):
        other = switched(three_lines, [1, 10, 1])
        certificate = switching_equiv(three_lines, other)
        assert certificate.equivalent
        assert certificate.strategy == 'triples'
        assert certificate_holds(three_lines, other, certificate.t_diag)

    def test_unimodular_switch_in_case_u(self, hesse):
        units = unimodular_elements(hesse.field)
        other = switched(hesse, [units[j % len(units)] for j in range(hesse.n)])
        certificate = switching_equiv(hesse, other)
        assert certificate.equivalent
        assert certificate_holds(hesse, other, certificate.t_diag)

    def test_totally_isotropic_pair(self, gerzon_ten, gerzon_ten_switched):
        certificate = switching_equiv(gerzon_ten, gerzon_ten_switched)
        assert certificate.equivalent
        assert [int(t) for t in certificate.t_diag] == [1, 1, 2, 1, 1, 1, 1, 1, 1, 1]

    def test_general_strategy_agrees(self, three_lines):
        other = switched(three_lines, [10, 1, 10])
        certificate = switching_equiv(three_lines, other, strategy='general')
        assert certificate.equivalent
        assert certificate_holds(three_lines, other, certificate.t_diag)

    def test_short_products_agree_but_systems_differ(self, cycle_pair):
        plus, minus = cycle_pair
        for m in (1, 2, 3):
            for indices in itertools.product(range(1, 6), repeat=m):
                assert m_product(plus, indices).value == m_product(minus, indices).value

        certificate = switching_equiv(plus, minus)
        assert not certificate.equivalent
        assert certificate.strategy == 'general'
        assert certificate.obstruction == '4-product mismatch on cycle (3, 2, 1, 4): 1 vs 4'

    def test_norm_mismatch(self, three_lines):
        other = frame_make(three_lines.space, three_lines.synthesis * three_lines.field.GF(2))
        certificate = switching_equiv(three_lines, other)
        assert not certificate.equivalent
        assert certificate.obstruction.startswith('1-product')

    def test_kernel_mismatch(self, rank_gap_pair):
        phi, psi = rank_gap_pair
        certificate = switching_equiv(phi, psi)
        assert not certificate.equivalent
        assert certificate.obstruction.startswith('kernel mismatch')

    @pytest.mark.parametrize('strategy', ['auto', 'general'])
    def test_phase_between_components(self, f5, strategy):
        """Isotropic v over F_5: [v, 2v] and [v, -2v] differ by a phase on the second component"""
        phi = frame_make(standard_space(f5, 2), f5.matrix([[1, 2], [2, 4]]))
        psi = frame_make(standard_space(f5, 2), f5.matrix([[1, 3], [2, 1]]))
        certificate = switching_equiv(phi, psi, strategy=strategy)
        assert certificate.equivalent
        assert [int(t) for t in certificate.t_diag] == [1, 4]
        assert certificate_holds(phi, psi, certificate.t_diag)

    def test_phases_across_three_components(self, f5):
        phi = frame_make(standard_space(f5, 2), f5.matrix([[1, 2, 1], [2, 4, 2]]))
        psi = frame_make(standard_space(f5, 2), f5.matrix([[1, 3, 4], [2, 1, 3]]))
        certificate = switching_equiv(phi, psi)
        assert certificate.equivalent
        assert [int(t) for t in certificate.t_diag] == [1, 4, 4]

    def test_no_unimodular_phase_fits(self, f5):
        """[v, 2v] against [v, v] needs the phase 3, which is not unimodular"""
        phi = frame_make(standard_space(f5, 2), f5.matrix([[1, 2], [2, 4]]))
        psi = frame_make(standard_space(f5, 2), f5.matrix([[1, 1], [2, 2]]))
        certificate = switching_equiv(phi, psi)
        assert not certificate.equivalent
        assert certificate.obstruction.startswith('kernel mismatch')

    def test_triples_needs_its_precondition(self, cycle_pair):
        with pytest.raises(StrategyPreconditionFailed):
            switching_equiv(*cycle_pair, strategy='triples')

    def test_unknown_strategy(self, three_lines):
        with pytest.raises(StrategyPreconditionFailed):
            switching_equiv(three_lines, three_lines, strategy='guess')


FIELD_ARGS = {
    'F7': (7,),
    'F11': (11,),
    'F25': (5, 2, [1, 1, 1], 'frobenius'),
}


def random_frame(field, rng, d, n):
    synthesis = field.GF(rng.integers(0, field.order, size=(d, n)))
    return frame_make(standard_space(field, d), synthesis)


def random_units(field, rng, n):
    units = unimodular_elements(field)
    return [units[int(i)] for i in rng.integers(0, len(units), size=n)]


class TestMProductProperties:
    """Seeded random tuples: m-products under rotation, reversal and switching"""

    @pytest.mark.parametrize('name', ['F7', 'F25'])
    def test_rotation_reversal_and_switching(self, name):
        field = field_make(*FIELD_ARGS[name])
        rng = np.random.default_rng(600 + field.order)
        for _ in range(50):
            d = int(rng.integers(1, 4))
            fs = random_frame(field, rng, d, int(rng.integers(2, 6)))
            m = int(rng.integers(1, 6))
            indices = [int(j) for j in rng.integers(1, fs.n + 1, size=m)]
            value = m_product(fs, indices).value

            shift = int(rng.integers(0, m))
            rotated = indices[shift:] + indices[:shift]
            assert int(m_product(fs, rotated).value) == int(value)
            assert int(m_product(fs, indices[::-1]).value) == int(involve(field, value))

            other = switched(fs, random_units(field, rng, fs.n))
            assert int(m_product(other, indices).value) == int(value)


class TestStrategyAgreement:
    """Seeded random pairs: the triples and general strategies reach the same verdict"""

    @pytest.mark.parametrize('name', ['F11', 'F25'])
    def test_triples_and_general_agree(self, name):
        field = field_make(*FIELD_ARGS[name])
        rng = np.random.default_rng(700 + field.order)
        compared = 0
        for _ in range(40):
            d = int(rng.integers(2, 4))
            n = int(rng.integers(d + 1, d + 4))
            phi = random_frame(field, rng, d, n)
            for psi in (switched(phi, random_units(field, rng, n)), random_frame(field, rng, d, n)):
                if not triples_applicable(phi, psi):
                    continue
                by_triples = switching_equiv(phi, psi, strategy='triples')
                by_general = switching_equiv(phi, psi, strategy='general')
                assert by_triples.equivalent == by_general.equivalent
                for certificate in (by_triples, by_general):
                    if certificate.equivalent:
                        assert certificate_holds(phi, psi, certificate.t_diag)
                compared += 1
        assert compared >= 5

    @pytest.mark.parametrize('name', list(FIELD_ARGS))
    def test_switched_frames_are_equivalent(self, name):
        field = field_make(*FIELD_ARGS[name])
        rng = np.random.default_rng(800 + field.order)
        for _ in range(30):
            d = int(rng.integers(1, 4))
            phi = random_frame(field, rng, d, int(rng.integers(2, 6)))
            psi = switched(phi, random_units(field, rng, phi.n))
            certificate = switching_equiv(phi, psi, strategy='general')
            assert certificate.equivalent
            assert certificate_holds(phi, psi, certificate.t_diag)
