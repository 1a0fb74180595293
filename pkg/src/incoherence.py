"""
beta-incoherent sets of an equiangular system in an orthogonal geometry and
the block designs a maximal linearly independent one carries.

A set is beta-incoherent when every triple inside it has triple product
beta^3. Indices in results are 1-based.
"""

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import linalg
from .designs import Design, design_verify
from .equivalence import SwitchingCertificate, switching_equiv, triple_products
from .errors import (
    BetaNotRoot,
    CaseU,
    HypothesesNotMet,
    HypothesisViolated,
    IndexOutOfRange,
    NotIncoherent,
    NotIndependent,
    NotMaximal,
)
from .frames import FrameSystem, frame_make, require_equiangular
from .gf import as_element
from .twographs import TwoGraphParams, two_graph_of, two_graph_regularity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IncoherentSet:
    indices: tuple
    beta: object
    linearly_independent: bool

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True)
class IncoherenceResult:
    inc: int
    witness: IncoherentSet
    inc_negated: int
    inc_min: int
    bound_applicable: bool
    bound_holds: Optional[bool]
    nodes: int = 0


@dataclass(frozen=True, eq=False)
class NormalizedSystem:
    frame: FrameSystem
    signs: list
    certificate: SwitchingCertificate


@dataclass(frozen=True)
class LemmaCheck:
    applicable: bool
    independent: bool
    minimally_dependent: bool
    size_within_bound: bool
    simplex_relation: Optional[bool]

    @property
    def holds(self):
        if not self.applicable:
            return True
        return ((self.independent or self.minimally_dependent) and self.size_within_bound
                and self.simplex_relation is not False)


@dataclass(frozen=True)
class GammaReport:
    outside: int
    gamma1: tuple
    gamma2: tuple
    g1: int
    g2: int
    rho: object
    root_check: bool
    roots_minimal: Optional[bool]
    intersection_check: bool
    intersection_failures: list = dc_field(default_factory=list)


@dataclass(frozen=True)
class SplitSum:
    total: int
    expected: int

    @property
    def holds(self):
        return self.total == self.expected


@dataclass(frozen=True, eq=False)
class DesignExtraction:
    points: tuple
    params: TwoGraphParams
    g1: int
    g2: int
    blocks1: Design
    blocks2: Design
    lambda_checks: dict
    split_sum: SplitSum
    quasi_symmetric: Optional[bool] = None
    predicted_intersections: Optional[tuple] = None
    symmetric: Optional[bool] = None
    merged: Optional[Design] = None
    merged_lambda_ok: Optional[bool] = None
    four_design: Optional[Design] = None

    @property
    def holds(self):
        checks = [self.blocks1.is_design if self.g1 != self.g2 else True,
                  self.blocks2.is_design if self.g1 != self.g2 else True,
                  all(self.lambda_checks.values()), self.split_sum.holds,
                  self.quasi_symmetric, self.symmetric, self.merged_lambda_ok,
                  None if self.four_design is None else self.four_design.is_design]
        return all(check is not False for check in checks)


def _require_orthogonal_root(fs, beta):
    field = fs.field
    if field.is_unitary:
        raise CaseU("incoherent sets are defined for orthogonal geometries only")
    params = require_equiangular(fs)
    beta = as_element(field, beta)
    if int(beta) == 0 or int(beta * beta) != int(params.b):
        raise BetaNotRoot(f"beta = {int(beta)} is not a nonzero square root of b = {int(params.b)}")
    return params, beta


def _good_triples(fs, beta):
    """Boolean cube of triples whose product is beta^3."""
    T = triple_products(fs.gram).view(np.ndarray)
    return T == int(beta ** 3)


class _CliqueSearch:
    """Largest subset all of whose triples are good."""

    def __init__(self, good):
        self.good = good
        self.n = good.shape[0]
        self.nodes = 0

    def _narrow(self, chosen, v, candidates):
        keep = candidates
        for x in chosen:
            keep = [u for u in keep if self.good[x, v, u]]
        return keep

    def maximum(self):
        n = self.n
        if n <= 2:
            return n
        degree = [int(self.good[v].sum()) for v in range(n)]
        order = sorted(range(n), key=lambda v: (-degree[v], v))
        best = [min(n, 2)]

        def expand(chosen, candidates):
            self.nodes += 1
            if len(chosen) > best[0]:
                best[0] = len(chosen)
            for position, v in enumerate(candidates):
                if len(chosen) + len(candidates) - position <= best[0]:
                    return
                rest = self._narrow(chosen, v, candidates[position + 1:])
                expand(chosen + [v], rest)

        expand([], order)
        return best[0]

    def first_of_size(self, size):
        """Lexicographically smallest subset of the given size."""

        def expand(chosen, candidates):
            self.nodes += 1
            if len(chosen) == size:
                return chosen
            for position, v in enumerate(candidates):
                if len(chosen) + len(candidates) - position < size:
                    return None
                rest = self._narrow(chosen, v, candidates[position + 1:])
                hit = expand(chosen + [v], rest)
                if hit is not None:
                    return hit
            return None

        return expand([], list(range(self.n)))


def _independent(fs, indices):
    columns = [j - 1 for j in indices]
    return linalg.rank(fs.synthesis[:, columns]) == len(columns)


def _largest(fs, beta):
    search = _CliqueSearch(_good_triples(fs, beta))
    size = search.maximum()
    witness = search.first_of_size(size)
    return size, tuple(v + 1 for v in witness), search.nodes


def incoherence_number(fs, beta):
    """Inc_beta with a lexicographically smallest witness, and Inc_{-beta}.

    Raises:
        CaseU, NotEquiangular, BetaNotRoot
    """
    params, beta = _require_orthogonal_root(fs, beta)
    field = fs.field
    size, witness, nodes = _largest(fs, beta)
    negated, _, more = _largest(fs, -beta)
    inc_min = min(size, negated)
    applicable = (int(params.a) != 0 and int(params.a * params.a) != int(params.b)
                  and fs.d % field.p != 0)
    result = IncoherenceResult(
        inc=size,
        witness=IncoherentSet(witness, beta, _independent(fs, witness)),
        inc_negated=negated,
        inc_min=inc_min,
        bound_applicable=applicable,
        bound_holds=inc_min <= fs.d if applicable else None,
        nodes=nodes + more,
    )
    if applicable and not result.bound_holds:
        logger.warning("incoherence_number: min(Inc) = %d exceeds d = %d", inc_min, fs.d)
    logger.debug("incoherence_number: beta=%d Inc=%d Inc(-beta)=%d", int(beta), size, negated)
    return result


def _check_incoherent(fs, indices, beta):
    for j in indices:
        if not 1 <= j <= fs.n:
            raise IndexOutOfRange(f"index {j} outside 1..{fs.n}")
    target = int(beta ** 3)
    T = triple_products(fs.gram).view(np.ndarray)
    for j, k, l in itertools.combinations(indices, 3):
        if T[j - 1, k - 1, l - 1] != target:
            raise NotIncoherent(f"triple {[j, k, l]} has product {T[j - 1, k - 1, l - 1]}, not beta^3")


def _signs(fs, indices, beta):
    """+1/-1 per vector so that products inside indices all become beta."""
    signs = [1] * fs.n
    first = indices[0] - 1
    for j in indices[1:]:
        if int(fs.gram[first, j - 1]) != int(beta):
            signs[j - 1] = -1
    return signs


def switch_normalize_incoherent(fs, inc_set):
    """Flip signs inside a beta-incoherent set until all its products equal beta."""
    _, beta = _require_orthogonal_root(fs, inc_set.beta)
    indices = tuple(sorted(inc_set.indices))
    _check_incoherent(fs, indices, beta)
    if not indices:
        signs = [1] * fs.n
    else:
        signs = _signs(fs, indices, beta)
    t = fs.field.GF(np.array([s % fs.field.p for s in signs], dtype=np.int64))
    switched = frame_make(fs.space, fs.synthesis * t.reshape(1, -1))
    certificate = switching_equiv(fs, switched)
    logger.debug("switch_normalize_incoherent: flipped %s",
                 [j + 1 for j, s in enumerate(signs) if s < 0])
    return NormalizedSystem(switched, signs, certificate)


def _split(fs, indices, beta, signs, outside):
    """Partition of indices by the sign of <outside, .> after normalization."""
    values = {}
    for j in indices:
        value = fs.gram[outside - 1, j - 1]
        values[j] = int(value if signs[j - 1] > 0 else -value)
    first = values[indices[0]]
    same = tuple(j for j in indices if values[j] == first)
    other = tuple(j for j in indices if values[j] != first)
    if len(other) < len(same):
        return other, same
    return same, other


def _quadratic_roots(field, d, rho):
    """Integers x in [0, p) with 4x^2 - 4dx + (rho - 1)^2 (d + rho) = 0."""
    four, ed = field.embed(4), field.embed(d)
    constant = (rho - 1) ** 2 * (ed + rho)
    return [x for x in range(field.p)
            if int(four * field.embed(x) ** 2 - four * ed * field.embed(x) + constant) == 0]


def _on_quadratic(field, d, rho, x):
    four, ed, ex = field.embed(4), field.embed(d), field.embed(x)
    return int(four * ex * ex - four * ed * ex + (rho - 1) ** 2 * (ed + rho)) == 0


def _shifts(field, rho):
    quarter = field.embed(4) ** -1
    return ((rho - 1) ** 2 * quarter, (rho * rho - 1) * quarter)


def _check_gamma_hypotheses(fs, indices, beta, params):
    if int(params.a) == 0 or int(params.a * params.a) == int(params.b):
        raise HypothesisViolated("needs a != 0 and a^2 != b")
    _check_incoherent(fs, indices, beta)
    if len(indices) != fs.d:
        raise NotMaximal(f"needs |Gamma| = d = {fs.d}, got {len(indices)}")
    if not _independent(fs, indices):
        raise NotIndependent("Gamma is linearly dependent")
    target = int(beta ** 3)
    T = triple_products(fs.gram).view(np.ndarray)
    for g in range(1, fs.n + 1):
        if g in indices:
            continue
        if all(T[g - 1, j - 1, k - 1] == target for j, k in itertools.combinations(indices, 2)):
            raise NotMaximal(f"vector {g} extends Gamma")


def gamma_analyze(fs, gamma_set, outside):
    """Split Gamma along one outside vector and check the size and intersection laws."""
    params, beta = _require_orthogonal_root(fs, gamma_set.beta)
    field = fs.field
    indices = tuple(sorted(gamma_set.indices))
    _check_gamma_hypotheses(fs, indices, beta, params)
    if outside in indices or not 1 <= outside <= fs.n:
        raise IndexOutOfRange(f"{outside} is not a vector outside Gamma")

    rho = params.a / beta
    signs = _signs(fs, indices, beta)
    gamma1, gamma2 = _split(fs, indices, beta, signs, outside)
    g1, g2 = len(gamma1), len(gamma2)
    root_check = _on_quadratic(field, fs.d, rho, g1) and _on_quadratic(field, fs.d, rho, g2)
    roots_minimal = None
    if field.p > fs.d:
        roots = _quadratic_roots(field, fs.d, rho)
        roots_minimal = sorted(set(roots)) == sorted({g1, g2})

    shifts = _shifts(field, rho)
    failures = []
    for other in range(1, fs.n + 1):
        if other in indices or other == outside:
            continue
        classes = _split(fs, indices, beta, signs, other)
        allowed = {int(field.embed(g1) - shift) for shift in shifts}
        hits = [len(set(gamma1) & set(cls)) for cls in classes
                if int(field.embed(len(cls)) - field.embed(g1)) == 0]
        if not any(int(field.embed(h)) in allowed for h in hits):
            failures.append(other)

    report = GammaReport(
        outside=outside,
        gamma1=gamma1,
        gamma2=gamma2,
        g1=g1,
        g2=g2,
        rho=rho,
        root_check=root_check,
        roots_minimal=roots_minimal,
        intersection_check=not failures,
        intersection_failures=failures,
    )
    logger.debug("gamma_analyze: outside %d splits into %s / %s", outside, gamma1, gamma2)
    return report


def incoherence_lemma_check(fs, inc_set):
    """Independent or minimally dependent, and a + d beta = 0 at d + 1 vectors."""
    params, beta = _require_orthogonal_root(fs, inc_set.beta)
    field = fs.field
    indices = tuple(sorted(inc_set.indices))
    _check_incoherent(fs, indices, beta)
    applicable = int(params.a) != int(beta)
    columns = [j - 1 for j in indices]
    k = len(columns)
    rank = linalg.rank(fs.synthesis[:, columns]) if k else 0
    independent = rank == k
    minimally = False
    if rank == k - 1:
        null = linalg.kernel(fs.synthesis[:, columns])
        minimally = null.shape[1] == 1 and bool(np.all(null.view(np.ndarray) != 0))
    relation = None
    d = fs.d
    if k == d + 1 and (d * (d - 1)) % field.p != 0:
        relation = int(params.a + field.embed(d) * beta) == 0
    return LemmaCheck(
        applicable=applicable,
        independent=independent,
        minimally_dependent=minimally,
        size_within_bound=k <= d + 1,
        simplex_relation=relation,
    )


def _regular_params(fs, beta):
    regularity = two_graph_regularity(two_graph_of(fs, beta))
    return regularity.params


def _split_sum(fs, indices, beta, params):
    signs = _signs(fs, indices, beta)
    total = 0
    for g in range(1, fs.n + 1):
        if g in indices:
            continue
        gamma1, gamma2 = _split(fs, indices, beta, signs, g)
        total += len(gamma1) * len(gamma2)
    size = len(indices)
    return SplitSum(total, params.ell * size * (size - 1) // 2)


def incoherent_split_sum(fs, gamma_set, beta=None):
    """Sum over outside vectors of |Gamma_1||Gamma_2| against ell |Gamma|(|Gamma|-1)/2."""
    _, beta = _require_orthogonal_root(fs, gamma_set.beta if beta is None else beta)
    indices = tuple(sorted(gamma_set.indices))
    _check_incoherent(fs, indices, beta)
    if not indices:
        raise NotIncoherent("the identity needs a non-empty set")
    params = _regular_params(fs, beta)
    if not params.regular:
        raise HypothesesNotMet("the induced two-graph is not regular")
    return _split_sum(fs, indices, beta, params)


def design_extract(fs, gamma_set):
    """Block designs on Gamma cut out by the vectors outside it.

    Raises:
        HypothesesNotMet: names the first failing hypothesis.
    """
    try:
        params, beta = _require_orthogonal_root(fs, gamma_set.beta)
    except (CaseU, BetaNotRoot) as e:
        raise HypothesesNotMet(str(e)) from e
    field = fs.field
    indices = tuple(sorted(gamma_set.indices))
    d, n = fs.d, fs.n
    if field.p <= d:
        raise HypothesesNotMet(f"characteristic {field.p} must exceed d = {d}")
    if d < 2:
        raise HypothesesNotMet("needs d >= 2")
    try:
        _check_gamma_hypotheses(fs, indices, beta, params)
    except (HypothesisViolated, NotIncoherent, NotMaximal, NotIndependent) as e:
        raise HypothesesNotMet(str(e)) from e
    tg_params = _regular_params(fs, beta)
    if not tg_params.regular:
        raise HypothesesNotMet("the induced two-graph is not regular")

    signs = _signs(fs, indices, beta)
    position = {j: i + 1 for i, j in enumerate(indices)}
    splits = [_split(fs, indices, beta, signs, g) for g in range(1, n + 1) if g not in indices]
    sizes = {len(gamma1) for gamma1, _ in splits}
    if len(sizes) != 1:
        raise HypothesesNotMet(f"|Gamma_1| varies across outside vectors: {sorted(sizes)}")
    g1 = sizes.pop()
    g2 = d - g1
    ell = tg_params.ell

    blocks1 = [[position[j] for j in gamma1] for gamma1, _ in splits]
    blocks2 = [[position[j] for j in gamma2] for _, gamma2 in splits]
    design1 = design_verify(d, blocks1, 2)
    design2 = design_verify(d, blocks2, 2)

    lambda_checks = {}
    if g1 != g2:
        lambda_checks['blocks1'] = design1.is_design and design1.lam * 2 * g2 == ell * (g1 - 1)
        lambda_checks['blocks2'] = design2.is_design and design2.lam * 2 * g1 == ell * (g2 - 1)

    extraction = dict(
        points=indices,
        params=tg_params,
        g1=g1,
        g2=g2,
        blocks1=design1,
        blocks2=design2,
        lambda_checks=lambda_checks,
        split_sum=_split_sum(fs, indices, beta, tg_params),
    )

    rho = params.a / beta
    if n > 2 * d and g1 != g2:
        predicted = tuple(sorted({int(field.embed(g1) - shift) for shift in _shifts(field, rho)}))
        extraction['predicted_intersections'] = predicted
        extraction['quasi_symmetric'] = (design1.quasi_symmetric
                                         and set(design1.intersection_numbers) <= set(predicted))
    if n == 2 * d and g1 != g2:
        extraction['symmetric'] = design1.symmetric and len(design1.intersection_numbers) <= 1
    if g1 == g2:
        merged = design_verify(d, blocks1 + blocks2, 2)
        extraction['merged'] = merged
        extraction['merged_lambda_ok'] = merged.is_design and merged.lam == n - d - ell
    if 2 * n == d * (d + 1) and d >= 4:
        extraction['four_design'] = design_verify(d, blocks1, 4)

    result = DesignExtraction(**extraction)
    logger.debug("design_extract: g1=%d g2=%d ell=%s", g1, g2, ell)
    return result
