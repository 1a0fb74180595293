"""
Exact verification of t-(n, k, lambda) block designs.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

from .errors import IndexOutOfRange, InvalidInputError, UnequalBlockSizes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Design:
    n_points: int
    blocks: tuple
    t: int
    k: int
    lam: Optional[int]
    r: Optional[int]
    intersection_numbers: tuple
    is_design: bool
    counting_identities: Optional[bool] = None
    fisher_holds: Optional[bool] = None
    uncovered: Optional[tuple] = None

    @property
    def b(self):
        return len(self.blocks)

    @property
    def quasi_symmetric(self):
        return self.is_design and len(self.intersection_numbers) <= 2

    @property
    def symmetric(self):
        return self.is_design and self.b == self.n_points

    def label(self):
        if not self.is_design:
            return f"not a {self.t}-design"
        text = f"{self.t}-({self.n_points},{self.k},{self.lam})"
        if self.quasi_symmetric and len(self.intersection_numbers) == 2:
            s1, s2 = self.intersection_numbers
            text = f"{self.t}-({self.n_points},{self.k},{self.lam}; {s1},{s2})"
        return text


def _mask(points):
    value = 0
    for x in points:
        value |= 1 << x
    return value


def _normalize_blocks(n_points, blocks):
    normalized = []
    for block in blocks:
        block = tuple(sorted(int(x) for x in block))
        if len(set(block)) != len(block):
            raise InvalidInputError(f"block {list(block)} repeats a point")
        if block and (block[0] < 1 or block[-1] > n_points):
            raise IndexOutOfRange(f"block {list(block)} outside 1..{n_points}")
        normalized.append(block)
    return normalized


def design_verify(n_points, blocks, t):
    """Count the blocks through every t-subset of the points.

    Args:
        n_points: Points are 1..n_points.
        blocks: Iterable of k-subsets (any order, repeats allowed).
        t: Strength to verify, 1 <= t <= n_points.

    Returns:
        A Design; is_design is False with the first uneven t-subset in
        uncovered when the counts differ.

    Raises:
        UnequalBlockSizes, InvalidInputError, IndexOutOfRange.
    """
    n_points, t = int(n_points), int(t)
    if not 1 <= t <= n_points:
        raise InvalidInputError(f"strength t must lie in 1..{n_points}, got {t}")
    normalized = _normalize_blocks(n_points, blocks)
    if not normalized:
        raise InvalidInputError("a design needs at least one block")
    sizes = {len(block) for block in normalized}
    if len(sizes) != 1:
        raise UnequalBlockSizes(f"block sizes {sorted(sizes)} differ")
    k = sizes.pop()

    masks = [_mask(block) for block in normalized]
    lam = None
    uncovered = None
    for subset in itertools.combinations(range(1, n_points + 1), t):
        target = _mask(subset)
        count = sum(1 for m in masks if m & target == target)
        if lam is None:
            lam = count
        elif count != lam:
            uncovered = subset
            break
    is_design = uncovered is None

    replication = [sum(1 for m in masks if m >> x & 1) for x in range(1, n_points + 1)]
    r = replication[0] if len(set(replication)) == 1 else None
    intersections = sorted({bin(a & b).count('1') for a, b in itertools.combinations(masks, 2)})

    identities = None
    fisher = None
    if is_design and r is not None:
        identities = len(masks) * k == n_points * r
        if t >= 2:
            identities = identities and r * (k - 1) == (n_points - 1) * lam
            if k < n_points:
                fisher = len(masks) >= n_points

    design = Design(
        n_points=n_points,
        blocks=tuple(normalized),
        t=t,
        k=k,
        lam=lam if is_design else None,
        r=r,
        intersection_numbers=tuple(intersections),
        is_design=is_design,
        counting_identities=identities,
        fisher_holds=fisher,
        uncovered=uncovered,
    )
    logger.debug("design_verify: %s, intersections %s", design.label(), intersections)
    return design
