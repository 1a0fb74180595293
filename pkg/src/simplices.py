"""
Regular simplices inside equiangular systems.

A subset kappa of s+1 vectors is a regular s-simplex when its Gram block has
rank s, squares to c' times itself, and the vectors span an s-dimensional
space. Candidates are grown depth-first; every partial set must stay linearly
independent with all triple products equal and nonzero.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .equivalence import triple_products
from .frames import equiangular_of, frame_status, require_equiangular
from .geometry import discriminant_of
from .gf import SquareClass, square_class

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplexRecord:
    kappa: tuple
    s: int
    c_prime: object
    discriminant: SquareClass
    predicted_discriminant: Optional[SquareClass]
    criteria: Optional[bool]

    @property
    def discriminant_matches(self):
        return self.predicted_discriminant is None or self.predicted_discriminant == self.discriminant


@dataclass(frozen=True)
class SimplexNecessary:
    squares: bool
    etf_congruence: Optional[bool]

    @property
    def possible(self):
        return self.squares and self.etf_congruence is not False


def _embed(GF, n):
    return GF(int(n) % GF.characteristic)


def simplex_necessary(n, d, s, params, etf=False):
    """a^2 = s^2 b, and for an ETF ambient also (n - d) s^2 = d (n - 1)."""
    GF = type(params.a)
    es = _embed(GF, s)
    squares = int(params.a * params.a) == int(es * es * params.b)
    congruence = None
    if etf:
        congruence = int(_embed(GF, n - d) * es * es) == int(_embed(GF, d) * _embed(GF, n - 1))
    return SimplexNecessary(squares, congruence)


def _c_prime(block):
    """c' with block^2 = c' block, or None."""
    square = block @ block
    nonzero = np.argwhere(block.view(np.ndarray))
    if nonzero.size == 0:
        return None
    i, j = (int(v) for v in nonzero[0])
    c = square[i, j] / block[i, j]
    if not np.array_equal(square.view(np.ndarray), (c * block).view(np.ndarray)):
        return None
    return c


def _predicted_discriminant(field, params, s, c_prime):
    if field.is_unitary:
        return SquareClass.SQUARE
    if s % field.p == 0:
        return square_class(field, c_prime ** s)
    value = (params.a / field.embed(s)) ** s * field.embed(s + 1) ** (s + 1)
    return square_class(field, value)


def _criteria(fs, params, kappa, s, T):
    """Triple-product characterization, usable when p does not divide s(s+1)."""
    field = fs.field
    es = field.embed(s)
    a, b = params.a, params.b
    if int(a * a) != int(es * es * b):
        return False
    target = int(-(a ** 3) / es ** 3)
    if target == 0:
        return False
    for x, j in enumerate(kappa):
        for y in range(x + 1, len(kappa)):
            for z in range(y + 1, len(kappa)):
                if T[j, kappa[y], kappa[z]] != target:
                    return False
    ell = kappa[0]
    expected = int(field.embed(s + 1) * a * b / es)
    G = fs.gram
    members = list(kappa)
    for k in range(fs.n):
        if k in kappa:
            continue
        # sum over j of G[l, k] G[k, j] G[j, l]
        total = G[ell, k] * (G[k, members] @ G[members, ell])
        if int(total) != expected:
            return False
    return True


def _sub_etf(fs, kappa, s):
    """c' when the vectors indexed by kappa form a regular s-simplex, else None."""
    block = fs.gram[np.ix_(kappa, kappa)]
    if linalg.rank(block) != s or linalg.rank(fs.synthesis[:, list(kappa)]) != s:
        return None
    c = _c_prime(block)
    if c is None or int(c) == 0:
        return None
    return c


def _extend(fs, s, T, chosen, start, found, stats):
    stats['nodes'] += 1
    if len(chosen) == s + 1:
        found.append(tuple(chosen))
        return
    remaining = s + 1 - len(chosen)
    for k in range(start, fs.n - remaining + 1):
        candidate = chosen + [k]
        if len(candidate) <= s and linalg.rank(fs.synthesis[:, candidate]) != len(candidate):
            stats['pruned'] += 1
            continue
        if len(candidate) >= 3 and not _triples_consistent(T, candidate):
            stats['pruned'] += 1
            continue
        _extend(fs, s, T, candidate, k + 1, found, stats)


def _triples_consistent(T, candidate):
    """Triples through the newest index equal the first triple, which is nonzero."""
    first = T[candidate[0], candidate[1], candidate[2]]
    if first == 0:
        return False
    k = candidate[-1]
    for x in range(len(candidate) - 1):
        for y in range(x + 1, len(candidate) - 1):
            if T[candidate[x], candidate[y], k] != first:
                return False
    return True


def simplex_enumerate(fs, s=None):
    """Every regular simplex in an equiangular system.

    Args:
        fs: An equiangular FrameSystem.
        s: One simplex size, an iterable of sizes, or None for 2..d.

    Returns:
        SimplexRecords sorted by (s, kappa) with 1-based kappa.

    Raises:
        NotEquiangular
    """
    params = require_equiangular(fs)
    field = fs.field
    if s is None:
        sizes = range(2, fs.d + 1)
    elif isinstance(s, int):
        sizes = [s]
    else:
        sizes = sorted(set(int(x) for x in s))
    status = frame_status(fs)
    T = triple_products(fs.gram).view(np.ndarray)

    records = []
    for size in sizes:
        if size < 1 or size + 1 > fs.n:
            continue
        if not simplex_necessary(fs.n, fs.d, size, params).squares:
            logger.debug("simplex_enumerate: a^2 != s^2 b for s=%d, skipped", size)
            continue
        found = []
        stats = {'nodes': 0, 'pruned': 0}
        _extend(fs, size, T, [], 0, found, stats)
        use_criteria = ((size * (size + 1)) % field.p != 0 and status.tight
                        and status.is_frame_for_ambient and fs.d < fs.n)
        for kappa in found:
            c = _sub_etf(fs, kappa, size)
            if c is None:
                continue
            block = fs.gram[np.ix_(kappa, kappa)]
            criteria = _criteria(fs, params, kappa, size, T) if use_criteria else None
            if criteria is False:
                logger.warning("simplex_enumerate: %s passes the direct check but not the "
                               "triple-product criteria", [k + 1 for k in kappa])
            records.append(SimplexRecord(
                kappa=tuple(k + 1 for k in kappa),
                s=size,
                c_prime=c,
                discriminant=discriminant_of(field, block).square_class,
                predicted_discriminant=_predicted_discriminant(field, params, size, c),
                criteria=criteria,
            ))
        logger.debug("simplex_enumerate: s=%d, %d candidates, %d nodes, %d pruned",
                     size, len(found), stats['nodes'], stats['pruned'])
    records.sort(key=lambda r: (r.s, r.kappa))
    return records


def simplices_by_criteria(fs, s):
    """Supports of s+1 vectors passing the triple-product characterization
    alone. Meaningful when the characteristic does not divide s(s+1).
    """
    params = equiangular_of(fs)
    T = triple_products(fs.gram).view(np.ndarray)
    found = []
    stats = {'nodes': 0, 'pruned': 0}
    _extend(fs, s, T, [], 0, found, stats)
    return [tuple(k + 1 for k in kappa) for kappa in found
            if linalg.rank(fs.synthesis[:, list(kappa)]) == s and _criteria(fs, params, kappa, s, T)]
