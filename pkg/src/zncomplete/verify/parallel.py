"""Splitting campaigns into disjoint index ranges and merging the results."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .report import Tally

# trials are drawn in fixed blocks; each block owns an RNG derived from
# (seed, block start), so results do not depend on how blocks are grouped
SAMPLE_BLOCK = 1000

# exhaustive campaigns above this many instances need an explicit override
EXHAUSTIVE_BUDGET = 10**9


class BudgetExceededError(RuntimeError):
    pass


def check_budget(count: int, allow_large: bool, what: str) -> None:
    if count > EXHAUSTIVE_BUDGET and not allow_large:
        raise BudgetExceededError(
            f"{what}: {count} instances exceeds the exhaustive budget "
            f"{EXHAUSTIVE_BUDGET}; pass allow_large / --allow-large to run anyway"
        )


def block_rng(seed: int, block_start: int) -> random.Random:
    # str seeds are hashed with SHA-512, stable across processes and runs
    return random.Random(f"{seed}/{block_start}")


def split_range(lo: int, hi: int, parts: int, align: int = 1) -> list[tuple[int, int]]:
    """Cut [lo, hi) into at most ``parts`` contiguous pieces on ``align`` boundaries."""
    if hi <= lo:
        return [(lo, hi)]
    units_ = -(-(hi - lo) // align)
    parts = max(1, min(parts, units_))
    cuts = [lo + ((units_ * i) // parts) * align for i in range(parts)] + [hi]
    return [(a, min(b, hi)) for a, b in zip(cuts, cuts[1:]) if a < min(b, hi)]


def run_ranges(
    worker: Callable[..., Tally],
    args: tuple,
    lo: int,
    hi: int,
    jobs: int,
    keep: int,
    align: int = 1,
) -> Tally:
    """Run ``worker(*args, lo, hi)`` over disjoint pieces and fold the tallies."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    pieces = split_range(lo, hi, jobs, align)
    total = Tally(keep=keep)
    if jobs == 1 or len(pieces) == 1:
        for a, b in pieces:
            total = total.merge(worker(*args, a, b))
        return total
    with ProcessPoolExecutor(max_workers=min(jobs, len(pieces))) as pool:
        futures = [pool.submit(worker, *args, a, b) for a, b in pieces]
        for f in futures:
            total = total.merge(f.result())
    return total


def sampled_worker(trial: Callable, args: tuple, seed: int, keep: int, lo: int, hi: int) -> Tally:
    """Run ``trial(rng, tally, *args)`` once per trial index in [lo, hi)."""
    tally = Tally(keep=keep)
    start = lo - lo % SAMPLE_BLOCK
    for block in range(start, hi, SAMPLE_BLOCK):
        rng = block_rng(seed, block)
        for i in range(block, min(block + SAMPLE_BLOCK, hi)):
            if i < lo:
                # keep the stream aligned even for unaligned ranges
                trial(rng, Tally(keep=0), *args)
                continue
            trial(rng, tally, *args)
    return tally


def run_sampled(trial: Callable, args: tuple, trials: int, seed: int, jobs: int, keep: int) -> Tally:
    if trials < 1:
        raise ValueError("sampled mode needs trials >= 1")
    return run_ranges(
        sampled_worker, (trial, args, seed, keep), 0, trials, jobs, keep, align=SAMPLE_BLOCK
    )


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    return random.SystemRandom().getrandbits(63)
