"""
Exact dense linear algebra over a galois field.

Matrices are 2-d `galois.FieldArray` values. Elimination is written out here
instead of using the numpy.linalg overrides so that pivot choice is the
greedy lowest-index rule reports depend on.
"""

import itertools
import logging

import numpy as np

from .errors import Degenerate, NoInvertiblePrincipalBlock, NotSquare
from .gf import involve

logger = logging.getLogger(__name__)


def _ints(A):
    return A.view(np.ndarray)


def is_zero(A):
    return not np.any(_ints(A))


def _require_square(M):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {M.shape}")


def identity(GF, n):
    return GF(np.eye(n, dtype=np.int64))


def row_reduce(M):
    """Reduced row echelon form and the pivot columns, in index order."""
    GF = type(M)
    A = M.copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(_ints(A[r:, c]))
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = A[r] * (A[r, c] ** -1)
        column = A[:, c].copy()
        column[r] = 0
        if np.any(_ints(column)):
            A = A - column.reshape(rows, 1) * A[r].reshape(1, cols)
        pivots.append(c)
        r += 1
    return GF(A), pivots


def rank(M):
    return len(row_reduce(M)[1])


def rank_kernel(M):
    """Rank of M and a matrix whose columns are a basis of {x : Mx = 0}."""
    GF = type(M)
    R, pivots = row_reduce(M)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    kernel = GF.Zeros((cols, len(free)))
    for j, f in enumerate(free):
        kernel[f, j] = 1
        for i, c in enumerate(pivots):
            kernel[c, j] = -R[i, f]
    logger.debug("rank_kernel: %s -> rank %d", M.shape, len(pivots))
    return len(pivots), kernel


def kernel(M):
    return rank_kernel(M)[1]


def determinant(M):
    """Determinant by Bareiss fraction-free elimination."""
    _require_square(M)
    GF = type(M)
    n = M.shape[0]
    if n == 0:
        return GF(1)
    A = M.copy()
    sign = 1
    previous = GF(1)
    for k in range(n - 1):
        if int(A[k, k]) == 0:
            below = np.flatnonzero(_ints(A[k + 1:, k]))
            if below.size == 0:
                return GF(0)
            p = k + 1 + int(below[0])
            A[[k, p]] = A[[p, k]]
            sign = -sign
        for i in range(k + 1, n):
            A[i, k + 1:] = (A[k, k] * A[i, k + 1:] - A[i, k] * A[k, k + 1:]) / previous
            A[i, k] = 0
        previous = A[k, k]
    det = A[n - 1, n - 1]
    return det if sign == 1 else -det


def inverse(M):
    _require_square(M)
    GF = type(M)
    n = M.shape[0]
    augmented = GF.Zeros((n, 2 * n))
    augmented[:, :n] = M
    augmented[:, n:] = identity(GF, n)
    R, pivots = row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        raise Degenerate("matrix is singular")
    return R[:, n:]


def cr_decompose(M):
    """M = C R with C the first independent columns of M in index order."""
    R, pivots = row_reduce(M)
    C = M[:, pivots]
    return C, R[:len(pivots), :]


def basic_submatrix(M):
    """Greedy column basis K of M and the principal block M[K, K]."""
    _require_square(M)
    _, pivots = row_reduce(M)
    if not pivots:
        return [], type(M).Zeros((0, 0))
    return pivots, M[np.ix_(pivots, pivots)]


def principal_block(M):
    """An invertible principal block of full rank.

    Tries the greedy basic submatrix first, then every index set of the same
    size in lexicographic order.
    """
    indices, sub = basic_submatrix(M)
    r = len(indices)
    if r == 0 or int(determinant(sub)) != 0:
        return indices, sub
    logger.debug("principal_block: greedy block %s is singular, scanning", indices)
    for candidate in itertools.combinations(range(M.shape[0]), r):
        block = M[np.ix_(candidate, candidate)]
        if int(determinant(block)) != 0:
            return list(candidate), block
    raise NoInvertiblePrincipalBlock(f"no invertible principal block of size {r}")


def conj_transpose(field, M):
    return involve(field, M).T.copy()


def is_hermitian(field, M):
    return M.ndim == 2 and M.shape[0] == M.shape[1] and np.array_equal(
        _ints(M), _ints(conj_transpose(field, M)))


def same_column_space(A, B):
    """True when the columns of A and B span the same subspace."""
    if A.shape[0] != B.shape[0]:
        return False
    GF = type(A)
    ra, rb = rank(A) if A.shape[1] else 0, rank(B) if B.shape[1] else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    stacked = GF.Zeros((A.shape[0], A.shape[1] + B.shape[1]))
    stacked[:, :A.shape[1]] = A
    stacked[:, A.shape[1]:] = B
    return rank(stacked) == ra


def trace(M):
    GF = type(M)
    total = GF(0)
    for i in range(min(M.shape)):
        total = total + M[i, i]
    return total
