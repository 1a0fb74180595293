"""
Non-degenerate Hermitian spaces <u, v> = u* M v.
"""

import logging
from dataclasses import dataclass

from . import linalg
from .errors import Degenerate, DimensionMismatch, NotHermitian
from .gf import (
    SquareClass,
    canonical_elements,
    canonical_nonsquare,
    involve,
    norm_solve,
    sqrt_or_none,
    square_class,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HermitianSpace:
    field: object
    form: object

    @property
    def dim(self):
        return self.form.shape[0]


@dataclass(frozen=True, eq=False)
class SubspaceReport:
    basis: object
    orth_complement_basis: object
    radical_basis: object
    nonisotropic: bool
    isotropic: bool
    totally_isotropic: bool

    @property
    def dim(self):
        return self.basis.shape[1]


@dataclass(frozen=True, eq=False)
class Discriminant:
    square_class: SquareClass
    representative: object


def space_make(field, form):
    """Validate a Hermitian form and wrap it as a space.

    Raises:
        NotHermitian: form is not square or differs from its conjugate transpose.
        Degenerate: form is singular.
    """
    if form.ndim != 2 or form.shape[0] != form.shape[1]:
        raise NotHermitian(f"form must be square, got shape {form.shape}")
    if not linalg.is_hermitian(field, form):
        raise NotHermitian("form is not Hermitian")
    if int(linalg.determinant(form)) == 0:
        raise Degenerate("form is singular")
    logger.debug("space_make: %d-dim space over %s", form.shape[0], field)
    return HermitianSpace(field, form)


def standard_space(field, dim):
    return HermitianSpace(field, linalg.identity(field.GF, dim))


def scalar_product(space, u, v):
    if u.shape != (space.dim,) or v.shape != (space.dim,):
        raise DimensionMismatch(f"vectors must have length {space.dim}")
    conj_u = involve(space.field, u).reshape(1, -1)
    return (conj_u @ space.form @ v.reshape(-1, 1))[0, 0]


def adjoint_of(A, domain, codomain):
    """A-dagger = M^{-1} A* N for A mapping domain (form M) to codomain (form N)."""
    if A.shape != (codomain.dim, domain.dim):
        raise DimensionMismatch(
            f"map of shape {A.shape} does not go from dim {domain.dim} to dim {codomain.dim}")
    return linalg.inverse(domain.form) @ linalg.conj_transpose(domain.field, A) @ codomain.form


def subspace_analyze(space, basis):
    if basis.ndim != 2 or basis.shape[0] != space.dim:
        raise DimensionMismatch(f"basis vectors must have length {space.dim}")
    field = space.field
    GF = field.GF
    W, _ = linalg.cr_decompose(basis)
    k = W.shape[1]
    if k == 0:
        zero = GF.Zeros((space.dim, 0))
        return SubspaceReport(W, linalg.identity(GF, space.dim), zero, True, False, True)

    conj_w = linalg.conj_transpose(field, W)
    orth = linalg.kernel(conj_w @ space.form)
    restricted = conj_w @ space.form @ W
    coefficients = linalg.kernel(restricted)
    if coefficients.shape[1]:
        radical, _ = linalg.cr_decompose(W @ coefficients)
    else:
        radical = GF.Zeros((space.dim, 0))

    nonisotropic = radical.shape[1] == 0
    report = SubspaceReport(
        basis=W,
        orth_complement_basis=orth,
        radical_basis=radical,
        nonisotropic=nonisotropic,
        isotropic=not nonisotropic,
        totally_isotropic=linalg.is_zero(restricted),
    )
    logger.debug("subspace_analyze: dim %d, radical %d", k, radical.shape[1])
    return report


def _congruent(field, P, M):
    return linalg.conj_transpose(field, P) @ M @ P


def _trace_pivot(field, entry):
    """Some t with t*entry + (t*entry)^sigma != 0."""
    GF = field.GF
    for value in canonical_elements(field):
        t = GF(value)
        product = t * entry
        if int(product + involve(field, product)) != 0:
            return t
    raise Degenerate("no polarization pivot exists")


def _sum_of_two_squares(field, target):
    """(x, y) with x^2 + y^2 = target, first x in canonical order."""
    GF = field.GF
    for value in canonical_elements(field):
        x = GF(value)
        y = sqrt_or_none(field, target - x * x)
        if y is not None:
            return x, y
    raise Degenerate(f"{int(target)} is not a sum of two squares")


def diagonalize_form(space):
    """Basis P with P* M P diagonal and normalized.

    Case U normalizes every diagonal entry to 1. Case O normalizes to
    (1, ..., 1, delta) with delta either 1 or the canonical nonsquare.
    """
    field = space.field
    GF = field.GF
    M = space.form
    d = space.dim
    P = linalg.identity(GF, d)

    for i in range(d):
        A = _congruent(field, P, M)
        if int(A[i, i]) == 0:
            later = [j for j in range(i + 1, d) if int(A[j, j]) != 0]
            if later:
                j = later[0]
                P[:, [i, j]] = P[:, [j, i]]
            else:
                partners = [j for j in range(i + 1, d) if int(A[i, j]) != 0]
                if not partners:
                    raise Degenerate("form is degenerate")
                j = partners[0]
                t = _trace_pivot(field, A[i, j])
                P[:, i] = P[:, i] + t * P[:, j]
            A = _congruent(field, P, M)
        pivot = A[i, i]
        for j in range(i + 1, d):
            if int(A[i, j]) != 0:
                P[:, j] = P[:, j] - (A[i, j] / pivot) * P[:, i]

    D = _congruent(field, P, M)
    entries = [D[i, i] for i in range(d)]

    # scale each vector so its norm is 1 or the canonical nonsquare
    nonsquare = canonical_nonsquare(field)
    odd = []
    for i, value in enumerate(entries):
        root = norm_solve(field, value)
        if root is not None:
            P[:, i] = P[:, i] * (root ** -1)
        else:
            scale = sqrt_or_none(field, nonsquare / value)
            P[:, i] = P[:, i] * scale
            odd.append(i)

    # two nonsquare lines combine into two unit lines
    while len(odd) >= 2:
        i, j = odd.pop(0), odd.pop(0)
        x, y = _sum_of_two_squares(field, nonsquare ** -1)
        u = x * P[:, i] + y * P[:, j]
        w = -y * P[:, i] + x * P[:, j]
        P[:, i] = u
        P[:, j] = w

    if odd and odd[0] != d - 1:
        k = odd[0]
        P[:, [k, d - 1]] = P[:, [d - 1, k]]

    D = _congruent(field, P, M)
    diag = [D[i, i] for i in range(d)]
    logger.debug("diagonalize_form: %s", [int(x) for x in diag])
    return P, diag


def discriminant_of(field, matrix):
    """Square class of det(matrix), or of its basic-submatrix determinant when singular."""
    if not linalg.is_hermitian(field, matrix):
        raise NotHermitian("discriminant needs a Hermitian matrix")
    representative = linalg.determinant(matrix)
    if int(representative) == 0:
        _, block = linalg.principal_block(matrix)
        representative = linalg.determinant(block) if block.shape[0] else field.one
    if field.is_unitary:
        # every nonzero element of F_0 is a norm
        return Discriminant(SquareClass.SQUARE, representative)
    return Discriminant(square_class(field, representative), representative)


def space_discriminant(space):
    return discriminant_of(space.field, space.form)


def forms_equivalent(space_a, space_b):
    """Congruence test: same dimension and, in Case O, same discriminant."""
    if space_a.dim != space_b.dim:
        return False
    return (space_discriminant(space_a).square_class
            == space_discriminant(space_b).square_class)


def vector_norms(space, vectors):
    """<v, v> for each column of vectors, as a 1-d array."""
    products = involve(space.field, vectors) * (space.form @ vectors)
    total = products[0].copy()
    for row in range(1, products.shape[0]):
        total = total + products[row]
    return total

