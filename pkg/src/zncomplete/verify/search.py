"""Pruned depth-first searches over colex rank ranges of fixed-size subsets.

Both searches pick indices from the top down (c_s first), which visits
combinations in colex order, so every subtree is one contiguous rank interval.
A subtree is pruned as soon as its chosen top elements already satisfy an
upward-closed property:

* closure search: the nonempty subset sums fill Z_n (a superset of a complete
  unit set is complete);
* restricted search: the k-fold restricted sums fill Z_n (k∧T ⊆ k∧A whenever
  T ⊆ A).

Pruned ranks are counted as covered.  Leaves that fail the property are
reported by rank.  ``numba`` kernels handle n <= 64 with one machine word per
set; the pure Python versions are the reference and cover every n.
"""

from __future__ import annotations

import math

import numpy as np

from ..zn import full_mask, rotate

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

WORD_BITS = 64


def _comb_table(p: int, size: int) -> list[list[int]]:
    return [[math.comb(c, i) for i in range(size + 1)] for c in range(p + 1)]


def closure_search_py(n, pool, size, lo, hi, keep):
    """Returns (covered, nodes, violation_count, first violation ranks)."""
    full = full_mask(n)
    comb = _comb_table(len(pool), size)
    covered = nodes = nviol = 0
    ranks: list[int] = []

    def visit(upper, base, state, i):
        nonlocal covered, nodes, nviol
        for c in range(i - 1, upper):
            sub_lo = base + comb[c][i]
            sub_hi = sub_lo + comb[c][i - 1]
            if sub_hi <= lo:
                continue
            if sub_lo >= hi:
                return
            nodes += 1
            x = pool[c]
            t = state | rotate(state, x, n) | (1 << x)
            if t == full:
                covered += min(sub_hi, hi) - max(sub_lo, lo)
            elif i == 1:
                covered += 1
                nviol += 1
                if len(ranks) < keep:
                    ranks.append(sub_lo)
            else:
                visit(c, sub_lo, t, i - 1)

    if size >= 1 and lo < hi:
        visit(len(pool), 0, 0, size)
    return covered, nodes, nviol, ranks


def restricted_search_py(n, pool, size, k, lo, hi, keep):
    """Like closure_search_py, with the property |k∧A| = n."""
    full = full_mask(n)
    comb = _comb_table(len(pool), size)
    covered = nodes = nviol = 0
    ranks: list[int] = []

    def visit(upper, base, layers, i, depth):
        nonlocal covered, nodes, nviol
        # only layers that can still grow into layer k are maintained
        jlo = max(1, k - (i - 1))
        jhi = min(k, depth + 1)
        for c in range(i - 1, upper):
            sub_lo = base + comb[c][i]
            sub_hi = sub_lo + comb[c][i - 1]
            if sub_hi <= lo:
                continue
            if sub_lo >= hi:
                return
            nodes += 1
            x = pool[c]
            new = list(layers)
            for j in range(jlo, jhi + 1):
                new[j] = layers[j] | rotate(layers[j - 1], x, n)
            if new[k] == full:
                covered += min(sub_hi, hi) - max(sub_lo, lo)
            elif i == 1:
                covered += 1
                nviol += 1
                if len(ranks) < keep:
                    ranks.append(sub_lo)
            else:
                visit(c, sub_lo, new, i - 1, depth + 1)

    if size >= 1 and lo < hi and 1 <= k <= size:
        visit(len(pool), 0, [1] + [0] * k, size, 0)
    return covered, nodes, nviol, ranks


if numba is not None:

    @numba.njit(cache=True)
    def _rot64(s, x, nn, full):
        if x == 0:
            return s
        return ((s << x) | (s >> (nn - x))) & full

    @numba.njit(cache=True)
    def _closure_search_u64(n, pool, size, lo, hi, keep, comb):
        nn = np.uint64(n)
        full = np.uint64(0xFFFFFFFFFFFFFFFF) >> np.uint64(64 - n)
        one = np.uint64(1)
        c = np.zeros(size + 1, np.int64)
        upper = np.zeros(size + 1, np.int64)
        base = np.zeros(size + 1, np.int64)
        state = np.zeros(size + 1, np.uint64)
        ranks = np.zeros(max(keep, 1), np.int64)
        covered = 0
        nodes = 0
        nviol = 0
        d = 0
        upper[0] = pool.shape[0]
        c[0] = size - 2
        while d >= 0:
            i = size - d
            c[d] += 1
            cc = c[d]
            if cc >= upper[d]:
                d -= 1
                continue
            sub_lo = base[d] + comb[cc, i]
            sub_hi = sub_lo + comb[cc, i - 1]
            if sub_hi <= lo:
                continue
            if sub_lo >= hi:
                d -= 1
                continue
            nodes += 1
            x = pool[cc]
            s = state[d]
            t = s | _rot64(s, x, nn, full) | (one << x)
            if t == full:
                covered += min(sub_hi, hi) - max(sub_lo, lo)
            elif i == 1:
                covered += 1
                if nviol < keep:
                    ranks[nviol] = sub_lo
                nviol += 1
            else:
                d += 1
                state[d] = t
                base[d] = sub_lo
                upper[d] = cc
                c[d] = i - 3
        return covered, nodes, nviol, ranks[: min(nviol, keep)]

    @numba.njit(cache=True)
    def _restricted_search_u64(n, pool, size, k, lo, hi, keep, comb):
        nn = np.uint64(n)
        full = np.uint64(0xFFFFFFFFFFFFFFFF) >> np.uint64(64 - n)
        c = np.zeros(size + 1, np.int64)
        upper = np.zeros(size + 1, np.int64)
        base = np.zeros(size + 1, np.int64)
        layers = np.zeros((size + 1, k + 1), np.uint64)
        for d in range(size + 1):
            layers[d, 0] = np.uint64(1)
        ranks = np.zeros(max(keep, 1), np.int64)
        covered = 0
        nodes = 0
        nviol = 0
        d = 0
        upper[0] = pool.shape[0]
        c[0] = size - 2
        while d >= 0:
            i = size - d
            c[d] += 1
            cc = c[d]
            if cc >= upper[d]:
                d -= 1
                continue
            sub_lo = base[d] + comb[cc, i]
            sub_hi = sub_lo + comb[cc, i - 1]
            if sub_hi <= lo:
                continue
            if sub_lo >= hi:
                d -= 1
                continue
            nodes += 1
            x = pool[cc]
            jlo = max(1, k - (i - 1))
            jhi = min(k, d + 1)
            # rows of layers[d + 1] above jhi stay zero: depth fixes jhi
            for j in range(jlo, jhi + 1):
                layers[d + 1, j] = layers[d, j] | _rot64(layers[d, j - 1], x, nn, full)
            if layers[d + 1, k] == full:
                covered += min(sub_hi, hi) - max(sub_lo, lo)
            elif i == 1:
                covered += 1
                if nviol < keep:
                    ranks[nviol] = sub_lo
                nviol += 1
            else:
                d += 1
                base[d] = sub_lo
                upper[d] = cc
                c[d] = i - 3
        return covered, nodes, nviol, ranks[: min(nviol, keep)]


def _use_kernel(n: int, pool, size: int, engine: str) -> bool:
    if engine == "python":
        return False
    fits = numba is not None and n <= WORD_BITS and math.comb(len(pool), size) < 2**62
    if engine == "numba" and not fits:
        raise ValueError("numba engine needs numba installed and n <= 64")
    return fits


def _arrays(pool, size):
    p = np.array(pool, dtype=np.uint64)
    comb = np.array(_comb_table(len(pool), size), dtype=np.int64)
    return p, comb


def closure_search(n, pool, size, lo, hi, keep, engine="auto"):
    if size < 1 or lo >= hi:
        return 0, 0, 0, []
    if _use_kernel(n, pool, size, engine):
        p, comb = _arrays(pool, size)
        cov, nodes, nv, ranks = _closure_search_u64(n, p, size, lo, hi, keep, comb)
        return int(cov), int(nodes), int(nv), [int(r) for r in ranks]
    return closure_search_py(n, pool, size, lo, hi, keep)


def restricted_search(n, pool, size, k, lo, hi, keep, engine="auto"):
    if size < 1 or lo >= hi or not 1 <= k <= size:
        return 0, 0, 0, []
    if _use_kernel(n, pool, size, engine):
        p, comb = _arrays(pool, size)
        cov, nodes, nv, ranks = _restricted_search_u64(n, p, size, k, lo, hi, keep, comb)
        return int(cov), int(nodes), int(nv), [int(r) for r in ranks]
    return restricted_search_py(n, pool, size, k, lo, hi, keep)
