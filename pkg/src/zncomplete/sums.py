"""Sumsets, subset-sum closures, restricted k-fold sums and translate escapes."""

from __future__ import annotations

from dataclasses import dataclass

from .zn import ResidueSet, ZnSet, _same_modulus, full_mask, rotate, subgroup_generated


@dataclass(frozen=True)
class ClosurePair:
    """Nonempty-subset sums ``s`` of a set together with ``s0 = s | {0}``."""

    s: ZnSet
    s0: ZnSet


def sumset(x: ZnSet, y: ZnSet) -> ZnSet:
    _same_modulus(x.n, y.n)
    n = x.n
    # iterate over the sparser operand; X + Y is symmetric
    if len(y) > len(x):
        x, y = y, x
    full = full_mask(n)
    acc = 0
    for t in y:
        acc |= rotate(x.bits, t, n)
        if acc == full:
            break
    return ZnSet(n, acc)


def nonempty_sums_bits(n: int, elements) -> int:
    """Bit vector of all nonempty distinct-element subset sums."""
    full = full_mask(n)
    acc = 0
    for x in elements:
        acc |= rotate(acc, x, n) | (1 << x)
        if acc == full:
            break
    return acc


def subset_sums(a: ResidueSet) -> ClosurePair:
    # 0 may or may not be a nonempty subset sum, so the nonempty sums get
    # their own recurrence; s0 is then just s with 0 adjoined.
    s = nonempty_sums_bits(a.n, a.elements)
    return ClosurePair(ZnSet(a.n, s), ZnSet(a.n, s | 1))


def k_fold_layers(a: ResidueSet, k: int) -> list[ZnSet]:
    """Rows ``[0∧A, 1∧A, ..., k∧A]`` of the layered restricted-sum table."""
    if not 0 <= k <= len(a):
        raise ValueError(f"k={k} outside [0, {len(a)}]")
    n = a.n
    rows = [1] + [0] * k
    for i, x in enumerate(a.elements):
        for j in range(min(k, i + 1), 0, -1):
            rows[j] |= rotate(rows[j - 1], x, n)
    return [ZnSet(n, r) for r in rows]


def k_fold_sums(a: ResidueSet, k: int) -> ZnSet:
    """All sums of exactly k distinct elements of A."""
    return k_fold_layers(a, k)[k]


def escape_count(b: ZnSet, x: int) -> int:
    """|(B + x) \\ B|: how many members of the translate leave B."""
    n = b.n
    return (rotate(b.bits, x, n) & ~b.bits).bit_count()


def escape_profile(b: ZnSet) -> list[int]:
    n, bits = b.n, b.bits
    mask = full_mask(n)
    return [(rotate(bits, x, n) & ~bits & mask).bit_count() for x in range(n)]


def is_complete(a: ResidueSet) -> bool:
    if not len(a):
        raise ValueError("completeness is undefined for the empty set")
    return subset_sums(a).s == subgroup_generated(a)
