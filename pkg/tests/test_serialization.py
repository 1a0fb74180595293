"""
Tests for the JSON wire format
"""

import json

import numpy as np
import pytest

from src.errors import InvalidInputError, NotPrime
from src.search import Dedup, Mode
from src.serialization import (
    design_input_from_json,
    dump_json,
    field_from_json,
    frame_from_json,
    frame_to_json,
    load_json,
    search_spec_from_json,
)
from tests.conftest import data_path, load_data


class TestFiles:
    """Tests for reading and writing documents"""

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidInputError):
            load_json(str(tmp_path / 'absent.json'))

    def test_bad_json(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('[1, 2')
        with pytest.raises(InvalidInputError):
            load_json(str(path))

    def test_reads_data_file(self):
        assert load_json(data_path('f11_three_lines.json'))['field']['p'] == 11

    def test_dump_to_file(self, tmp_path):
        path = tmp_path / 'out.json'
        dump_json({'holds': True}, str(path))
        assert json.loads(path.read_text()) == {'holds': True}

    def test_dump_to_stdout(self, capsys):
        dump_json({'n': 3})
        assert json.loads(capsys.readouterr().out) == {'n': 3}


class TestParsers:
    """Tests for document parsers"""

    def test_field_needs_p(self):
        with pytest.raises(InvalidInputError):
            field_from_json({'degree': 2})

    def test_field_errors_keep_their_type(self):
        with pytest.raises(NotPrime):
            field_from_json({'p': 9})

    def test_field_from_wrapped_document(self):
        field = field_from_json(load_data('f11_three_lines.json'))
        assert (field.p, field.m) == (11, 1)

    def test_frame_defaults_to_identity_form(self, three_lines):
        form = three_lines.space.form.view(np.ndarray)
        assert form.tolist() == [[1, 0], [0, 1]]

    def test_frame_from_report(self, three_lines):
        report = {'verdict': True, 'frame': frame_to_json(three_lines)}
        fs = frame_from_json(report)
        assert (fs.n, fs.d) == (3, 2)

    def test_frame_not_an_object(self):
        with pytest.raises(InvalidInputError):
            frame_from_json([[1, 2]])

    def test_frame_missing_vectors(self):
        with pytest.raises(InvalidInputError):
            frame_from_json({'field': {'p': 5}})

    def test_design_input(self):
        points, blocks, t = design_input_from_json(load_data('affine_plane_f3.json'))
        assert points == 9
        assert len(blocks) == 12
        assert t in (None, 2)

    def test_search_spec_max_target(self):
        spec = search_spec_from_json({'field': {'p': 5}, 'dim': 3, 'a': 1, 'b': 1, 'n_target': 'max'})
        assert spec.n_target is None
        assert spec.form.shape == (3, 3)
        assert spec.mode == Mode.ALL
        assert spec.dedup == Dedup.PROJECTIVE

    def test_search_spec_node_budget(self):
        spec = search_spec_from_json({'field': {'p': 5}, 'dim': 2, 'a': 1, 'b': 1, 'node_budget': 500})
        assert spec.node_budget == 500
        assert search_spec_from_json({'field': {'p': 5}, 'dim': 2, 'a': 1, 'b': 1}).node_budget is None

    def test_search_spec_needs_dim_or_form(self):
        with pytest.raises(InvalidInputError):
            search_spec_from_json({'field': {'p': 5}, 'a': 1, 'b': 1})


class TestEncoders:
    """Tests for report encoders"""

    def test_extension_elements_are_lists(self, hesse):
        document = frame_to_json(hesse)
        assert document['field'] == {'p': 5, 'degree': 2, 'modulus': [1, 1, 1], 'involution': 'frobenius'}
        assert document['vectors'][0][0] == [1, 0]
        assert document['vectors'][1][4] == [0, 1]

    def test_prime_elements_are_ints(self, three_lines):
        document = frame_to_json(three_lines)
        assert document['vectors'] == [[0, 3, 8], [1, 5, 5]]
        assert document['form'] == [[1, 0], [0, 1]]
