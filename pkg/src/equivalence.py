"""
m-products, exponential gauges, and the unitary / switching equivalence tests.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import IndexOutOfRange, ShapeMismatch, StrategyPreconditionFailed
from .gf import involve, sqrt_or_none, unimodular_elements

logger = logging.getLogger(__name__)

STRATEGIES = ('auto', 'triples', 'general')


@dataclass(frozen=True)
class MProduct:
    indices: tuple
    value: object


@dataclass(frozen=True)
class UnitaryVerdict:
    equivalent: bool
    reason: str


@dataclass(frozen=True, eq=False)
class SwitchingCertificate:
    equivalent: bool
    strategy: str
    t_diag: Optional[list] = None
    obstruction: Optional[str] = None


def _ints(A):
    return A.view(np.ndarray)


def m_product(fs, indices):
    """Cyclic product <phi_j1, phi_j2> ... <phi_jm, phi_j1> over 1-based indices."""
    indices = tuple(int(j) for j in indices)
    if not indices:
        raise IndexOutOfRange("an m-product needs at least one index")
    for j in indices:
        if not 1 <= j <= fs.n:
            raise IndexOutOfRange(f"index {j} outside 1..{fs.n}")
    value = fs.field.one
    for position, j in enumerate(indices):
        k = indices[(position + 1) % len(indices)]
        value = value * fs.gram[j - 1, k - 1]
    return MProduct(indices, value)


def gauge_of(fs, j, k):
    """eta_jk = <phi_j, phi_k> / sqrt(Delta(phi_j, phi_k)), or 0.

    The root is the canonical plain square root, so eta_jk * eta_kj = 1 in
    both cases. In Case O eta is +1 or -1 depending on whether the product
    is itself the canonical root.
    """
    field = fs.field
    product = fs.gram[j - 1, k - 1]
    double = product * fs.gram[k - 1, j - 1]
    if int(double) == 0:
        return field.zero
    root = sqrt_or_none(field, double, plain=True)
    return product / root


def _same_shape(fs_a, fs_b):
    if fs_a.field != fs_b.field:
        raise ShapeMismatch(f"systems live over different fields: {fs_a.field} vs {fs_b.field}")
    if fs_a.n != fs_b.n:
        raise ShapeMismatch(f"systems have {fs_a.n} and {fs_b.n} vectors")


def unitary_equiv(fs_a, fs_b):
    """Equal Gram matrices and equal kernels."""
    _same_shape(fs_a, fs_b)
    if not np.array_equal(_ints(fs_a.gram), _ints(fs_b.gram)):
        return UnitaryVerdict(False, "Gram matrices differ")
    if not linalg.same_column_space(linalg.kernel(fs_a.synthesis), linalg.kernel(fs_b.synthesis)):
        return UnitaryVerdict(False, "kernels differ (equal Grams, different linear dependencies)")
    return UnitaryVerdict(True, "Gram matrices and kernels agree")


def _doubles(G):
    return _ints(G * G.T)


def triple_products(G):
    # T[j, k, l] = G[j, k] G[k, l] G[l, j]
    n = G.shape[0]
    return G.reshape(n, n, 1) * G.reshape(1, n, n) * G.T.reshape(n, 1, n)


def _frame_with_nonvanishing_products(fs):
    return linalg.rank(fs.synthesis) == fs.d and np.all(_doubles(fs.gram) != 0)


def _equiangular_frame(fs):
    G = _ints(fs.gram)
    doubles = _doubles(fs.gram)
    off = doubles[~np.eye(fs.n, dtype=bool)]
    return (linalg.rank(fs.synthesis) == fs.d
            and np.all(np.diag(G) == G[0, 0])
            and (off.size == 0 or np.all(off == off[0])))


def triples_applicable(fs_a, fs_b):
    if _frame_with_nonvanishing_products(fs_a) and _frame_with_nonvanishing_products(fs_b):
        return True
    return (_equiangular_frame(fs_a) and _equiangular_frame(fs_b)
            and np.array_equal(_doubles(fs_a.gram), _doubles(fs_b.gram))
            and np.array_equal(np.diag(_ints(fs_a.gram)), np.diag(_ints(fs_b.gram))))


def _certificate_holds(fs_a, fs_b, t):
    conj_t = involve(fs_a.field, t)
    switched = conj_t.reshape(-1, 1) * fs_a.gram * t.reshape(1, -1)
    return np.array_equal(_ints(switched), _ints(fs_b.gram))


def _kernels_match(fs_a, fs_b, t):
    switched = fs_a.synthesis * t.reshape(1, -1)
    return linalg.same_column_space(linalg.kernel(switched), linalg.kernel(fs_b.synthesis))


def _first_mismatch(fs_a, fs_b):
    """Obstruction among norms and double products, or None."""
    norms_a, norms_b = np.diag(_ints(fs_a.gram)), np.diag(_ints(fs_b.gram))
    for j in range(fs_a.n):
        if norms_a[j] != norms_b[j]:
            return f"1-product (norm) mismatch at ({j + 1},)"
    doubles_a, doubles_b = _doubles(fs_a.gram), _doubles(fs_b.gram)
    for j in range(fs_a.n):
        for k in range(j + 1, fs_a.n):
            if doubles_a[j, k] != doubles_b[j, k]:
                return f"2-product mismatch at ({j + 1}, {k + 1})"
    return None


def _gauge_diagonal(fs_a, fs_b):
    """t from the gauges relative to the first vector; None if a gauge vanishes."""
    field = fs_a.field
    values = [field.one]
    for j in range(2, fs_a.n + 1):
        eta_a = gauge_of(fs_a, 1, j)
        eta_b = gauge_of(fs_b, j, 1)
        if int(eta_a) == 0 or int(eta_b) == 0:
            return None
        values.append(involve(field, eta_b * eta_a))
    return field.GF(np.array([int(v) for v in values], dtype=np.int64))


def _spanning_forest(G):
    """BFS forest of the correlation network, rooted at each lowest index."""
    n = G.shape[0]
    adjacency = _ints(G) != 0
    parent = [None] * n
    order = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            j = queue.popleft()
            order.append(j)
            for k in range(n):
                if k != j and adjacency[j, k] and not seen[k]:
                    seen[k] = True
                    parent[k] = j
                    queue.append(k)
    return parent, order


def _path_to_root(parent, j):
    path = [j]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _cycle_through(parent, j, k):
    up_j, up_k = _path_to_root(parent, j), _path_to_root(parent, k)
    common = next(x for x in up_j if x in up_k)
    return up_j[:up_j.index(common) + 1] + list(reversed(up_k[:up_k.index(common)]))


def _propagate(fs_a, fs_b):
    """Unimodular constants along a spanning forest, then cycle-closure checks.

    Returns (t, obstruction); t is None when a closure fails.
    """
    field = fs_a.field
    GF = field.GF
    GA, GB = fs_a.gram, fs_b.gram
    n = fs_a.n
    parent, order = _spanning_forest(GA)
    t = GF.Zeros(n)
    for j in order:
        p = parent[j]
        if p is None:
            t[j] = 1
        else:
            t[j] = GB[p, j] / (involve(field, t[p]) * GA[p, j])

    conj_t = involve(field, t)
    for j in range(n):
        for k in range(j + 1, n):
            if int(GA[j, k]) == 0:
                continue
            if int(conj_t[j] * GA[j, k] * t[k]) != int(GB[j, k]):
                cycle = [x + 1 for x in _cycle_through(parent, j, k)]
                value_a = m_product(fs_a, cycle).value
                value_b = m_product(fs_b, cycle).value
                return None, (f"{len(cycle)}-product mismatch on cycle {tuple(cycle)}: "
                              f"{field.encode(value_a)} vs {field.encode(value_b)}")
    return t, None


def _component_phases(fs_a, fs_b, t):
    """Rescale t by one unimodular phase per correlation component so that
    ker(Phi T) = ker(Psi), or return None when no choice of phases does.

    Phases only matter between components: inside a component they are fixed
    by the propagation, and a global phase leaves every kernel alone.
    """
    field = fs_a.field
    GF = field.GF
    n = fs_a.n
    K_a = linalg.kernel(fs_a.synthesis)
    K_b = linalg.kernel(fs_b.synthesis)
    if K_a.shape[1] != K_b.shape[1]:
        return None
    parent, _ = _spanning_forest(fs_a.gram)
    roots = [_path_to_root(parent, j)[-1] for j in range(n)]
    components = sorted(set(roots))

    # rows of N cut out col(K_a); need sum_c lambda_c N (T K_b)|_c = 0
    N = linalg.kernel(K_a.T).T
    switched = t.reshape(-1, 1) * K_b
    blocks = []
    for root in components:
        part = switched.copy()
        part[np.array([r != root for r in roots]), :] = 0
        blocks.append((N @ part).reshape(-1))
    nonzero = [_ints(block) != 0 for block in blocks]
    settled = np.full(blocks[0].size, -1)
    for c, mask in enumerate(nonzero):
        settled[mask] = c

    units = unimodular_elements(field)
    phases = [field.one] * len(components)

    def extend(c, partial):
        if c == len(components):
            return True
        choices = units if c and nonzero[c].any() else [field.one]
        for u in choices:
            total = partial + u * blocks[c]
            if np.any(_ints(total)[settled == c] != 0):
                continue
            phases[c] = u
            if extend(c + 1, total):
                return True
        return False

    if not extend(0, GF.Zeros(blocks[0].size)):
        return None
    index = {root: c for c, root in enumerate(components)}
    scale = GF(np.array([int(phases[index[r]]) for r in roots], dtype=np.int64))
    logger.debug("switching_equiv: phased %d correlation components", len(components))
    return t * scale


def _triples_decide(fs_a, fs_b):
    obstruction = _first_mismatch(fs_a, fs_b)
    if obstruction:
        return None, obstruction
    n = fs_a.n
    TA, TB = _ints(triple_products(fs_a.gram)), _ints(triple_products(fs_b.gram))
    for j in range(n):
        for k in range(j + 1, n):
            for l in range(k + 1, n):
                if TA[j, k, l] != TB[j, k, l]:
                    return None, f"3-product mismatch at ({j + 1}, {k + 1}, {l + 1})"
    t = _gauge_diagonal(fs_a, fs_b)
    if t is None or not _certificate_holds(fs_a, fs_b, t):
        t, obstruction = _propagate(fs_a, fs_b)
    return t, obstruction


def _general_decide(fs_a, fs_b):
    obstruction = _first_mismatch(fs_a, fs_b)
    if obstruction:
        return None, obstruction
    return _propagate(fs_a, fs_b)


def switching_equiv(fs_a, fs_b, strategy='auto'):
    """Decide whether Psi = U Phi T for a unitary U and unimodular diagonal T.

    Args:
        fs_a: The system Phi.
        fs_b: The system Psi.
        strategy: 'triples' (double and triple products), 'general'
            (correlation-network propagation) or 'auto'.

    Returns:
        A SwitchingCertificate; when equivalent it carries t_diag with
        Psi-dagger Psi = T-dagger (Phi-dagger Phi) T.
    """
    _same_shape(fs_a, fs_b)
    if strategy not in STRATEGIES:
        raise StrategyPreconditionFailed(f"unknown strategy {strategy!r}")
    applicable = triples_applicable(fs_a, fs_b)
    if strategy == 'triples' and not applicable:
        raise StrategyPreconditionFailed(
            "triples strategy needs frames with nonvanishing products or equiangular frames")
    chosen = strategy if strategy != 'auto' else ('triples' if applicable else 'general')

    if chosen == 'triples':
        t, obstruction = _triples_decide(fs_a, fs_b)
    else:
        t, obstruction = _general_decide(fs_a, fs_b)

    if t is not None and not _kernels_match(fs_a, fs_b, t):
        t = _component_phases(fs_a, fs_b, t)
        if t is None:
            obstruction = "kernel mismatch: ker(Phi T) differs from ker(Psi)"
    if t is not None and not _certificate_holds(fs_a, fs_b, t):
        t, obstruction = None, "Gram identity fails for the recovered switching"

    if t is None:
        logger.debug("switching_equiv (%s): not equivalent, %s", chosen, obstruction)
        return SwitchingCertificate(False, chosen, None, obstruction)
    logger.debug("switching_equiv (%s): equivalent", chosen)
    return SwitchingCertificate(True, chosen, [t[j] for j in range(fs_a.n)], None)
