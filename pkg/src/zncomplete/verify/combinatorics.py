"""Colexicographic ranking of combinations and structured set enumerators.

Colex rank of index combination c_1 < ... < c_s is sum(C(c_i, i)).  All
combinations sharing the top indices c_s, ..., c_i form one contiguous rank
interval, which is what lets a pruned depth-first search report exactly how
many ranks of a range it has covered.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from ..zn import ResidueSet, units


def colex_rank(indices: Sequence[int]) -> int:
    return sum(math.comb(c, i) for i, c in enumerate(sorted(indices), start=1))


def colex_unrank(rank: int, size: int) -> list[int]:
    """Index combination of the given colex rank (ascending indices)."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    out = []
    for i in range(size, 0, -1):
        # largest c with C(c, i) <= rank
        lo, hi = i - 1, i - 1
        while math.comb(hi + 1, i) <= rank:
            hi = hi * 2 + 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid, i) <= rank:
                lo = mid
            else:
                hi = mid - 1
        out.append(lo)
        rank -= math.comb(lo, i)
    out.reverse()
    return out


def check_rank_range(total: int, rank_range: tuple[int, int] | None) -> tuple[int, int]:
    if rank_range is None:
        return 0, total
    lo, hi = rank_range
    if not 0 <= lo <= hi <= total:
        raise ValueError(f"rank range [{lo}, {hi}) not inside [0, {total})")
    return lo, hi


def enumerate_subsets(
    pool: ResidueSet, size: int, rank_range: tuple[int, int] | None = None
) -> Iterator[ResidueSet]:
    """Yield the size-subsets of ``pool`` whose colex rank lies in rank_range."""
    p = len(pool)
    if not 0 <= size <= p:
        raise ValueError(f"size {size} outside [0, {p}]")
    lo, hi = check_rank_range(math.comb(p, size), rank_range)
    if lo == hi:
        return
    elems = pool.elements
    c = colex_unrank(lo, size)
    for _ in range(hi - lo):
        yield ResidueSet(pool.n, (elems[i] for i in c))
        # next combination in colex order
        j = 0
        while j < size - 1 and c[j] + 1 == c[j + 1]:
            j += 1
        if j < size:
            c[j] += 1
        c[:j] = range(j)


def unit_pairs(n: int) -> list[tuple[int, int]]:
    """Units split into pairs (x, -x) with x < -x.  Needs n >= 3."""
    if n < 3:
        raise ValueError("units pair up into {x, -x} only for n >= 3")
    return [(x, n - x) for x in units(n) if x < n - x]


def antisymmetric_unit_sets(n: int, min_size: int = 0) -> list[tuple[int, ...]]:
    """Every set of units A with A and -A disjoint, sorted ascending.

    Each pair {x, -x} contributes nothing, x, or -x; there are 3^(phi(n)/2)
    such sets before the size filter.
    """
    pairs = unit_pairs(n)
    out: list[tuple[int, ...]] = [()]
    for x, y in pairs:
        out = [s for t in out for s in (t, t + (x,), t + (y,))]
    return sorted(tuple(sorted(s)) for s in out if len(s) >= min_size)


def count_antisymmetric_unit_sets(n: int, min_size: int = 0) -> int:
    p = len(unit_pairs(n))
    return sum(math.comb(p, a) * 2**a for a in range(min_size, p + 1))
