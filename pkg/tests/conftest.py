"""Pytest configuration and fixtures."""

import json
import os
import sys

import pytest

# Add the project root to the path
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, ROOT)

# no log files during tests
os.environ.setdefault('FFF_ENV', 'testing')

DATA_DIR = os.path.join(ROOT, 'data')


def data_path(name):
    return os.path.join(DATA_DIR, name)


def load_data(name):
    with open(data_path(name), encoding='utf-8') as handle:
        return json.load(handle)


def load_frame(name):
    from src.serialization import frame_from_json
    return frame_from_json(load_data(name))


@pytest.fixture
def app():
    """Create and configure a test Flask app."""
    from src.api import app
    app.config['TESTING'] = True
    return app


@pytest.fixture
def client(app):
    """A test client for the app."""
    return app.test_client()


@pytest.fixture
def f3():
    from src.gf import field_make
    return field_make(3)


@pytest.fixture
def f5():
    from src.gf import field_make
    return field_make(5)


@pytest.fixture
def f11():
    from src.gf import field_make
    return field_make(11)


@pytest.fixture
def f25():
    """F_25 = F_5[x]/(x^2 + x + 1) with the Frobenius involution."""
    from src.gf import field_make
    return field_make(5, 2, [1, 1, 1], 'frobenius')


@pytest.fixture
def three_lines():
    """(1, 3, 7)-ETF of three vectors in F_11^2."""
    return load_frame('f11_three_lines.json')


@pytest.fixture
def hesse():
    """(2, 1, 1)-ETF of nine vectors in the unitary geometry on F_25^3."""
    return load_frame('f25_hesse.json')


@pytest.fixture
def gerzon_ten():
    """(0, 1, 0)-ETF of ten vectors in F_3^4 with form diag(1, 1, 1, 2)."""
    return load_frame('f3_gerzon_ten.json')


@pytest.fixture
def gerzon_ten_switched():
    return load_frame('f3_gerzon_ten_switched.json')


@pytest.fixture
def welch_not_tight():
    return load_frame('f5_welch_not_tight.json')


@pytest.fixture
def pentagon_frame(f11):
    """Seidel frame 4I + S of the 5-cycle plus an isolated point over F_11."""
    from src.twographs import seidel_frame, seidel_of_graph
    adjacency = load_data('pentagon_plus_point.json')['adjacency']
    return seidel_frame(f11, seidel_of_graph(adjacency), 4)


@pytest.fixture
def rook_frame():
    """Seidel frame 3I + S of the 3x3 rook graph plus an isolated point over F_13."""
    from src.gf import field_make
    from src.twographs import seidel_frame, seidel_of_graph
    adjacency = load_data('rook_plus_point.json')['adjacency']
    return seidel_frame(field_make(13), seidel_of_graph(adjacency), 3)


@pytest.fixture
def nonsquare_image():
    """(2, 1, 3)-ETF for its span in F_5^3 whose image has nonsquare discriminant."""
    return load_frame('f5_nonsquare_image.json')


@pytest.fixture
def nonsquare_image_plane():
    """The same Gram matrix realized in F_5^2 with form diag(1, 3)."""
    return load_frame('f5_nonsquare_image_plane.json')


@pytest.fixture
def rank_gap_pair():
    """Two systems in F_3^4 with equal Gram matrices and different ranks."""
    return load_frame('f3_rank_gap_phi.json'), load_frame('f3_rank_gap_psi.json')


@pytest.fixture
def complement_pair():
    """A 2-tight frame and a system whose Gram matrix is 2I minus its Gram."""
    return load_frame('f3_complement_not_frame_phi.json'), load_frame('f3_complement_not_frame_psi.json')


@pytest.fixture
def cycle_pair():
    """Five vectors in F_5^4 agreeing on all products of length at most 3."""
    return load_frame('f5_cycle_plus.json'), load_frame('f5_cycle_minus.json')
