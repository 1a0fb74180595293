"""
Two-graphs induced by equiangular systems in orthogonal geometries, their
Seidel matrices, and strongly regular graph checks.

Points are numbered 1..n in everything this module returns.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .equivalence import triple_products
from .errors import (
    BetaNotRoot,
    CaseU,
    CompleteOrEmpty,
    HypothesisViolated,
    IndexOutOfRange,
    InvalidInputError,
    InvalidTwoGraph,
    NotEquiangular,
)
from .frames import equiangular_of, etf_verify, frame_status, gram_realize, require_equiangular
from .gf import as_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoGraph:
    n: int
    coherent: tuple
    beta: Optional[object] = None

    def is_coherent(self, triple):
        return tuple(sorted(triple)) in set(self.coherent)

    @property
    def trivial(self):
        """Empty or complete."""
        return not self.coherent or len(self.coherent) == self.n * (self.n - 1) * (self.n - 2) // 6


@dataclass(frozen=True)
class TwoGraphParams:
    regular: bool
    ell: Optional[int]
    m_quad: Optional[int]


@dataclass(frozen=True, eq=False)
class SeidelMatrix:
    entries: np.ndarray

    @property
    def n(self):
        return self.entries.shape[0]


@dataclass(frozen=True)
class SeidelAnalysis:
    two_eigenvalues: bool
    alpha: Optional[int]
    gamma: Optional[int]


@dataclass(frozen=True, eq=False)
class RegularityReport:
    params: TwoGraphParams
    seidel: SeidelMatrix
    analysis: SeidelAnalysis
    pair_counts: np.ndarray

    @property
    def consistent(self):
        return self.params.regular == self.analysis.two_eigenvalues


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int
    modular: Optional[int] = None


@dataclass(frozen=True)
class SrgResult:
    holds: bool
    params: Optional[SrgParams]
    reason: Optional[str] = None


@dataclass(frozen=True, eq=False)
class CorrespondenceReport:
    etf: bool
    regular: bool
    agree: bool
    n_even: bool
    two_graph: TwoGraph
    params: TwoGraphParams


def _coherence_cube(tg):
    cube = np.zeros((tg.n, tg.n, tg.n), dtype=bool)
    for triple in tg.coherent:
        for i, j, k in itertools.permutations(x - 1 for x in triple):
            cube[i, j, k] = True
    return cube


def _first_odd_quadruple(tg):
    cube = _coherence_cube(tg)
    for i, j, k, l in itertools.combinations(range(tg.n), 4):
        count = int(cube[i, j, k]) + int(cube[i, j, l]) + int(cube[i, k, l]) + int(cube[j, k, l])
        if count % 2:
            return (i + 1, j + 1, k + 1, l + 1)
    return None


def two_graph_make(n, coherent, beta=None):
    """Validate a coherent-triple list and build a TwoGraph.

    Raises:
        InvalidInputError: triples that are malformed or out of range.
        InvalidTwoGraph: a 4-subset holds an odd number of coherent triples.
    """
    n = int(n)
    if n < 0:
        raise InvalidInputError(f"point count must be non-negative, got {n}")
    triples = set()
    for triple in coherent:
        triple = tuple(sorted(int(x) for x in triple))
        if len(triple) != 3 or len(set(triple)) != 3:
            raise InvalidInputError(f"{list(triple)} is not a 3-subset")
        if triple[0] < 1 or triple[-1] > n:
            raise IndexOutOfRange(f"triple {list(triple)} outside 1..{n}")
        triples.add(triple)
    tg = TwoGraph(n, tuple(sorted(triples)), beta)
    odd = _first_odd_quadruple(tg)
    if odd is not None:
        raise InvalidTwoGraph(f"4-subset {list(odd)} contains an odd number of coherent triples")
    return tg


def _validate_graph(adjacency):
    A = np.asarray(adjacency, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidInputError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.all((A == 0) | (A == 1)):
        raise InvalidInputError("adjacency entries must be 0 or 1")
    if np.any(np.diag(A)) or not np.array_equal(A, A.T):
        raise InvalidInputError("graph must be simple and undirected")
    return A


def seidel_of_graph(adjacency):
    """-1 on edges, +1 on non-edges, 0 on the diagonal."""
    A = _validate_graph(adjacency)
    n = A.shape[0]
    return SeidelMatrix(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64) - 2 * A)


def graph_two_graph(adjacency):
    """The two-graph whose coherent triples span an odd number of edges."""
    A = _validate_graph(adjacency)
    n = A.shape[0]
    coherent = [(i + 1, j + 1, k + 1) for i, j, k in itertools.combinations(range(n), 3)
                if (A[i, j] + A[j, k] + A[i, k]) % 2]
    return TwoGraph(n, tuple(coherent))


def _descendant_adjacency(tg, x):
    """Graph on the other points: y ~ z iff {x, y, z} is coherent."""
    cube = _coherence_cube(tg)
    others = [v for v in range(tg.n) if v != x]
    return cube[x][np.ix_(others, others)].astype(np.int64)


def descendant_graph(tg, x):
    """Adjacency matrix of the descendant at point x (1-based), x removed."""
    if not 1 <= x <= tg.n:
        raise IndexOutOfRange(f"point {x} outside 1..{tg.n}")
    return _descendant_adjacency(tg, x - 1)


def canonical_seidel(tg):
    """Seidel matrix of the inducing graph in which point 1 is isolated."""
    n = tg.n
    A = np.zeros((n, n), dtype=np.int64)
    if n:
        A[1:, 1:] = _descendant_adjacency(tg, 0)
    return seidel_of_graph(A)


def seidel_analysis(seidel):
    """Test S^2 = alpha S + (n - 1) I over the integers."""
    S = seidel.entries
    n = seidel.n
    square = S @ S
    gamma = n - 1
    if n < 2:
        return SeidelAnalysis(True, 0, gamma)
    alpha = int(square[0, 1] * S[0, 1])
    holds = np.array_equal(square, alpha * S + gamma * np.eye(n, dtype=np.int64))
    return SeidelAnalysis(holds, alpha if holds else None, gamma if holds else None)


def two_graph_regularity(tg):
    odd = _first_odd_quadruple(tg)
    if odd is not None:
        raise InvalidTwoGraph(f"4-subset {list(odd)} contains an odd number of coherent triples")
    n = tg.n
    counts = np.zeros((n, n), dtype=np.int64)
    for triple in tg.coherent:
        for i, j in itertools.combinations(triple, 2):
            counts[i - 1, j - 1] += 1
            counts[j - 1, i - 1] += 1
    off = counts[~np.eye(n, dtype=bool)]
    regular = off.size == 0 or bool(np.all(off == off[0]))
    ell = (int(off[0]) if off.size else 0) if regular else None

    m_quad = None
    if regular:
        cube = _coherence_cube(tg)
        per_triple = set()
        for i, j, k in ((a - 1, b - 1, c - 1) for a, b, c in tg.coherent):
            extensions = cube[i, j] & cube[i, k] & cube[j, k]
            per_triple.add(int(extensions.sum()))
        if len(per_triple) <= 1:
            m_quad = per_triple.pop() if per_triple else 0

    seidel = canonical_seidel(tg)
    report = RegularityReport(
        params=TwoGraphParams(regular, ell, m_quad),
        seidel=seidel,
        analysis=seidel_analysis(seidel),
        pair_counts=counts,
    )
    logger.debug("two_graph_regularity: n=%d %s", n, report.params)
    return report


def two_graph_of(fs, beta):
    """Coherent triples are those with triple product -beta^3."""
    field = fs.field
    if field.is_unitary:
        raise CaseU("two-graphs are defined for orthogonal geometries only")
    beta = as_element(field, beta)
    params = equiangular_of(fs)
    if params is None:
        raise NotEquiangular("norms or pair products are not constant")
    if params.b is None:
        return TwoGraph(fs.n, (), beta)
    if int(params.b) == 0:
        raise HypothesisViolated("two-graphs need b != 0")
    if int(beta * beta) != int(params.b):
        raise BetaNotRoot(f"beta^2 = {int(beta * beta)} differs from b = {int(params.b)}")
    target = int(-(beta ** 3))
    T = triple_products(fs.gram).view(np.ndarray)
    coherent = [(j + 1, k + 1, l + 1) for j, k, l in itertools.combinations(range(fs.n), 3)
                if T[j, k, l] == target]
    return two_graph_make(fs.n, coherent, beta)


def srg_check(adjacency, modular_p=None):
    """Exact or mod-p strong regularity of a simple graph."""
    A = _validate_graph(adjacency)
    v = A.shape[0]
    edges = int(A.sum()) // 2
    if edges == 0 or edges == v * (v - 1) // 2:
        raise CompleteOrEmpty("strongly regular graphs are neither complete nor empty")

    def reduce(values):
        return values % modular_p if modular_p else values

    degrees = reduce(A.sum(axis=1))
    common = reduce(A @ A)
    off = ~np.eye(v, dtype=bool)
    adjacent = common[(A == 1) & off]
    apart = common[(A == 0) & off]

    failures = []
    if np.any(degrees != degrees[0]):
        failures.append("degrees differ")
    if np.any(adjacent != adjacent[0]):
        failures.append("adjacent pairs have different common-neighbor counts")
    if np.any(apart != apart[0]):
        failures.append("non-adjacent pairs have different common-neighbor counts")
    if failures:
        return SrgResult(False, None, "; ".join(failures))
    params = SrgParams(v, int(degrees[0]), int(adjacent[0]), int(apart[0]), modular_p)
    logger.debug("srg_check: %s", params)
    return SrgResult(True, params)


def etf_twograph_correspond(fs, beta=1):
    """Compare the ETF verdict of an (a, 1)-equiangular frame with regularity
    of its two-graph. Also reports whether n is even, without asserting it.
    """
    field = fs.field
    if field.is_unitary:
        raise CaseU("two-graphs are defined for orthogonal geometries only")
    params = require_equiangular(fs)
    if int(params.b) != 1:
        raise HypothesisViolated(f"needs b = 1, got b = {int(params.b)}")
    if field.p <= fs.n:
        raise HypothesisViolated(f"needs characteristic above n = {fs.n}, got {field.p}")
    status = frame_status(fs)
    if not status.is_frame_for_ambient:
        raise HypothesisViolated("needs a frame for the ambient space")
    if fs.n <= fs.d:
        raise HypothesisViolated(f"needs n > d, got n = {fs.n}, d = {fs.d}")
    tg = two_graph_of(fs, beta)
    if tg.trivial:
        raise HypothesisViolated("the induced two-graph is trivial (empty or complete)")

    etf = etf_verify(fs).verdict
    regularity = two_graph_regularity(tg)
    regular = regularity.params.regular
    report = CorrespondenceReport(
        etf=etf,
        regular=regular,
        agree=etf == regular,
        n_even=fs.n % 2 == 0,
        two_graph=tg,
        params=regularity.params,
    )
    if not report.agree:
        logger.warning("etf_twograph_correspond: ETF %s but regular %s", etf, regular)
    return report


def seidel_frame(field, seidel, a, beta=1):
    """Realize the Gram matrix aI + beta S as an equiangular system."""
    if field.is_unitary:
        raise CaseU("Seidel frames are built in orthogonal geometries")
    a, beta = as_element(field, a), as_element(field, beta)
    S = field.GF(seidel.entries % field.p)
    G = a * linalg.identity(field.GF, seidel.n) + beta * S
    fs = gram_realize(field, G)
    logger.debug("seidel_frame: %d vectors in dimension %d", fs.n, fs.d)
    return fs
