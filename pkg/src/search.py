"""
Exhaustive search for (a, b)-equiangular systems over small fields.

Candidates are the vectors of norm a, one per orbit under unimodular scaling
unless dedup is 'none'. Two candidates are compatible when their product pair
<u, v><v, u> equals b, and a system is a clique of the compatibility graph,
grown depth-first over bitsets in canonical candidate order.
"""

import enum
import itertools
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, InvalidInputError
from .frames import etf_verify, frame_make
from .geometry import space_make
from .gf import as_element, canonical_elements, involve, unimodular_elements

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 7


class Mode(str, enum.Enum):
    ALL = 'all'
    FIRST = 'first'
    COUNT = 'count'


class Dedup(str, enum.Enum):
    NONE = 'none'
    PROJECTIVE = 'projective'
    SWITCHING_CLASS = 'switching_class'


@dataclass
class SearchSpec:
    field: object
    form: object
    a: object
    b: object
    n_target: Optional[int] = None
    mode: Mode = Mode.ALL
    dedup: Dedup = Dedup.PROJECTIVE
    etf_only: bool = False
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    node_budget: Optional[int] = None


@dataclass
class SearchStats:
    candidates: int = 0
    nodes_visited: int = 0
    pruned: int = 0
    wall_time: float = 0.0

    def merge(self, other):
        self.nodes_visited += other.nodes_visited
        self.pruned += other.pruned


@dataclass(eq=False)
class SearchResult:
    systems: list
    count: int
    size: int
    stats: SearchStats = dc_field(default_factory=SearchStats)


def _all_vectors(field, d):
    """Every vector of F^d as a d x q^d FieldArray, in canonical order."""
    ordered = canonical_elements(field)
    columns = np.array(list(itertools.product(ordered, repeat=d)), dtype=np.int64).reshape(-1, d)
    return field.GF(columns.T.copy())


def _orbit_representatives(field, vectors):
    """Column indices of the canonical member of each unimodular orbit."""
    units = unimodular_elements(field)
    order = {v: i for i, v in enumerate(canonical_elements(field))}
    ints = vectors.view(np.ndarray)
    keep = []
    for j in range(ints.shape[1]):
        key = tuple(order[int(x)] for x in ints[:, j])
        images = [tuple(order[int(x)] for x in (u * vectors[:, j]).view(np.ndarray)) for u in units]
        if min(images) == key:
            keep.append(j)
    return keep


def candidate_vectors(spec):
    """Norm-a candidates as columns, in canonical order.

    Raises:
        BudgetExceeded: q^d exceeds the budget.
    """
    field = spec.field
    d = spec.form.shape[0]
    total = field.order ** d
    if total > spec.budget:
        raise BudgetExceeded(f"{total} candidate vectors exceed the budget of {spec.budget}")
    vectors = _all_vectors(field, d)
    norms = (involve(field, vectors) * (spec.form @ vectors)).sum(axis=0)
    a = as_element(field, spec.a)
    nonzero = vectors.view(np.ndarray).any(axis=0)
    selected = np.flatnonzero((norms.view(np.ndarray) == int(a)) & nonzero)
    chosen = vectors[:, selected]
    if spec.dedup != Dedup.NONE and chosen.shape[1]:
        chosen = chosen[:, _orbit_representatives(field, chosen)]
    return chosen, total


def _bits(flags):
    return int.from_bytes(np.packbits(flags, bitorder='little').tobytes(), 'little')


def _compatibility_masks(field, form, candidates, b):
    """Bitset rows of the compatibility graph, one candidate at a time.

    The form is Hermitian, so <v, u> is the conjugate of <u, v> and one row of
    products gives the pairs.
    """
    left = involve(field, candidates).T @ form
    target = int(b)
    masks = []
    for i in range(candidates.shape[1]):
        row = left[i] @ candidates
        pairs = (row * involve(field, row)).view(np.ndarray) == target
        pairs[i] = False
        masks.append(_bits(pairs))
    return masks


class _NodeBudget:
    """Clique nodes shared by every worker of one search."""

    BATCH = 4096

    def __init__(self, limit):
        self.limit = limit
        self.used = 0
        self.exhausted = False
        self._lock = threading.Lock()

    def charge(self, nodes):
        with self._lock:
            self.used += nodes
            if self.used > self.limit:
                self.exhausted = True
        if self.exhausted:
            raise BudgetExceeded(f"search visited more than {self.limit} clique nodes")


class _CliqueWalker:
    """Bitset cliques of a fixed size whose lowest member is a given vertex."""

    def __init__(self, masks, budget):
        self.count = len(masks)
        self.masks = masks
        self.budget = budget

    def _visit(self, stats):
        stats.nodes_visited += 1
        if stats.nodes_visited % _NodeBudget.BATCH == 0 or self.budget.exhausted:
            self.budget.charge(_NodeBudget.BATCH)

    def settle(self, stats):
        """Charge the nodes of a finished task not yet charged in a batch."""
        self.budget.charge(stats.nodes_visited % _NodeBudget.BATCH)

    def largest_from(self, first, stats):
        best = [1]

        def grow(size, allowed):
            self._visit(stats)
            if size > best[0]:
                best[0] = size
            while allowed:
                if size + bin(allowed).count('1') <= best[0]:
                    stats.pruned += 1
                    return
                v = (allowed & -allowed).bit_length() - 1
                allowed &= allowed - 1
                grow(size + 1, allowed & self.masks[v])

        grow(1, self.masks[first] & ~((1 << (first + 1)) - 1))
        return best[0]

    def cliques_from(self, first, size, stats):
        """Cliques of the given size with lowest member first, in lexicographic order."""

        def grow(chosen, allowed):
            self._visit(stats)
            if len(chosen) == size:
                yield tuple(chosen)
                return
            while allowed:
                if len(chosen) + bin(allowed).count('1') < size:
                    stats.pruned += 1
                    return
                v = (allowed & -allowed).bit_length() - 1
                allowed &= allowed - 1
                yield from grow(chosen + [v], allowed & self.masks[v])

        yield from grow([first], self.masks[first] & ~((1 << (first + 1)) - 1))


def _switching_key(field, gram):
    """Gram matrix with tree edges of its correlation network moved to the
    canonical member of their unimodular orbit."""
    units = unimodular_elements(field)
    order = {v: i for i, v in enumerate(canonical_elements(field))}
    n = gram.shape[0]
    t = [None] * n
    for root in range(n):
        if t[root] is not None:
            continue
        t[root] = field.one
        stack = [root]
        while stack:
            p = stack.pop()
            for j in range(n):
                if t[j] is None and int(gram[p, j]) != 0:
                    base = involve(field, t[p]) * gram[p, j]
                    t[j] = min(units, key=lambda u: order[int(base * u)])
                    stack.append(j)
    t = field.GF(np.array([int(x) for x in t], dtype=np.int64))
    switched = involve(field, t).reshape(-1, 1) * gram * t.reshape(1, -1)
    return tuple(switched.view(np.ndarray).ravel().tolist())


class _Run:
    """One search over a fixed candidate set."""

    def __init__(self, spec, candidates):
        self.spec = spec
        self.candidates = candidates
        self.space = space_make(spec.field, spec.form)
        b = as_element(spec.field, spec.b)
        limit = spec.budget if spec.node_budget is None else spec.node_budget
        masks = _compatibility_masks(spec.field, spec.form, candidates, b)
        self.walker = _CliqueWalker(masks, _NodeBudget(limit))

    def frame(self, members):
        return frame_make(self.space, self.candidates[:, list(members)])

    def accept(self, members):
        if not self.spec.etf_only:
            return True
        return len(members) > 1 and etf_verify(self.frame(members)).verdict

    def largest(self):
        if self.walker.count == 0:
            return 0, SearchStats()
        results = self._map(lambda first, stats: self.walker.largest_from(first, stats))
        stats = SearchStats()
        for _, task_stats in results:
            stats.merge(task_stats)
        return max(value for value, _ in results), stats

    def collect(self, size):
        first_only = self.spec.mode == Mode.FIRST

        def task(first, stats):
            found = []
            for members in self.walker.cliques_from(first, size, stats):
                if self.accept(members):
                    found.append(members)
                    if first_only:
                        break
            return found

        results = self._map(task)
        stats = SearchStats()
        hits = []
        for found, task_stats in results:
            stats.merge(task_stats)
            hits.extend(found)
            if first_only and hits:
                break
        return hits, stats

    def _map(self, work):
        """Run work(first, stats) for every first vertex; results in vertex order."""

        def run(first):
            stats = SearchStats()
            value = work(first, stats)
            self.walker.settle(stats)
            return value, stats

        firsts = range(self.walker.count)
        if self.spec.workers > 1:
            with ThreadPoolExecutor(max_workers=self.spec.workers) as pool:
                return list(pool.map(run, firsts))
        return [run(first) for first in firsts]


def search_equiangular(spec):
    """Find (a, b)-equiangular systems of n_target vectors (or of maximum size).

    Args:
        spec: SearchSpec; n_target None searches for the largest systems.

    Returns:
        SearchResult with systems in canonical order (empty in count mode).

    Raises:
        BudgetExceeded, InvalidInputError
    """
    started = time.perf_counter()
    try:
        spec.mode, spec.dedup = Mode(spec.mode), Dedup(spec.dedup)
    except ValueError as e:
        raise InvalidInputError(str(e)) from e
    if spec.n_target is not None and spec.n_target < 1:
        raise InvalidInputError(f"n_target must be positive, got {spec.n_target}")
    if spec.workers < 1:
        raise InvalidInputError(f"workers must be positive, got {spec.workers}")

    candidates, scanned = candidate_vectors(spec)
    run = _Run(spec, candidates)
    stats = SearchStats(candidates=scanned)
    logger.info("search_equiangular: %d candidates of norm %s", candidates.shape[1], spec.a)

    if spec.n_target is not None:
        sizes = [spec.n_target]
    else:
        top, largest_stats = run.largest()
        stats.merge(largest_stats)
        sizes = range(top, 0, -1) if spec.etf_only else [top]

    hits, size = [], 0
    for size in sizes:
        if size > run.walker.count:
            continue
        hits, collect_stats = run.collect(size)
        stats.merge(collect_stats)
        if hits:
            break

    if spec.dedup == Dedup.SWITCHING_CLASS:
        seen, unique = set(), []
        for members in hits:
            key = _switching_key(spec.field, run.frame(members).gram)
            if key not in seen:
                seen.add(key)
                unique.append(members)
        hits = unique

    systems = [] if spec.mode == Mode.COUNT else [run.frame(members) for members in hits]
    stats.wall_time = time.perf_counter() - started
    result = SearchResult(systems=systems, count=len(hits), size=size if hits else 0, stats=stats)
    logger.info("search_equiangular: %d system(s) of size %d, %d nodes",
                result.count, result.size, stats.nodes_visited)
    return result
