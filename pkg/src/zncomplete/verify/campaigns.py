"""Campaigns over unit subsets: the completeness threshold, the k-fold
fullness conjecture, and the largest incomplete unit set."""

from __future__ import annotations

import math
import time

from ..bounds import conjecture_params, main_threshold
from ..sums import is_complete, k_fold_sums, subset_sums
from ..zn import ResidueSet, subgroup_generated, units
from .combinatorics import check_rank_range, colex_unrank
from .parallel import BudgetExceededError, check_budget, resolve_seed, run_ranges, run_sampled
from .report import AuditReport, Tally, Witness
from .search import closure_search, restricted_search

MODES = ("exhaustive", "sampled")


def _from_ranks(n: int, pool, size: int, ranks) -> list[tuple[int, ResidueSet]]:
    return [(r, ResidueSet(n, (pool[i] for i in colex_unrank(r, size)))) for r in ranks]


def _thm_witness(a: ResidueSet) -> Witness:
    return Witness(
        "complete", a.n, {"A": a.elements}, len(subset_sums(a).s), len(subgroup_generated(a)), "=="
    )


def _conj_witness(a: ResidueSet, k: int) -> Witness:
    return Witness("kfold_full", a.n, {"A": a.elements}, len(k_fold_sums(a, k)), a.n, "==", {"k": k})


def _closure_worker(n, pool, size, keep, engine, lo, hi) -> Tally:
    covered, _, nviol, ranks = closure_search(n, pool, size, lo, hi, keep, engine)
    tally = Tally(keep=keep, instances=covered)
    tally.count("pruned_instances", covered - nviol)
    for r, a in _from_ranks(n, pool, size, ranks):
        tally.add_violation(r, _thm_witness(a))
    tally.violation_count = nviol
    return tally


def _restricted_worker(n, pool, size, k, keep, engine, lo, hi) -> Tally:
    covered, _, nviol, ranks = restricted_search(n, pool, size, k, lo, hi, keep, engine)
    tally = Tally(keep=keep, instances=covered)
    tally.count("pruned_instances", covered - nviol)
    for r, a in _from_ranks(n, pool, size, ranks):
        tally.add_violation(r, _conj_witness(a, k))
    tally.violation_count = nviol
    return tally


def _theorem_trial(rng, tally: Tally, n: int, pool, size: int) -> None:
    a = ResidueSet(n, rng.sample(pool, size))
    tally.instances += 1
    if not is_complete(a):
        tally.add_violation(0, _thm_witness(a))


def _conjecture_trial(rng, tally: Tally, n: int, pool, size: int, k: int) -> None:
    a = ResidueSet(n, rng.sample(pool, size))
    tally.instances += 1
    if len(k_fold_sums(a, k)) != n:
        tally.add_violation(0, _conj_witness(a, k))


def _check_mode(mode: str, trials) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "sampled" and (trials is None or trials < 1):
        raise ValueError("sampled mode needs trials >= 1")


def verify_theorem(
    n: int,
    mode: str = "exhaustive",
    trials: int | None = None,
    seed: int | None = None,
    rank_range: tuple[int, int] | None = None,
    *,
    jobs: int = 1,
    allow_large: bool = False,
    max_witnesses: int = 1000,
    engine: str = "auto",
) -> AuditReport:
    """Check that every unit subset at the completeness threshold is complete.

    Only subsets of exactly ``main_threshold(n)`` units are enumerated; larger
    unit sets contain one of them and completeness is inherited upward.
    """
    start = time.perf_counter()
    size = main_threshold(n)
    _check_mode(mode, trials)
    pool = units(n).elements
    params: dict = {"mode": mode, "size": size, "units": len(pool)}
    out_seed = None
    if size > len(pool):
        params["vacuous"] = True
        tally = Tally(keep=max_witnesses)
    elif mode == "exhaustive":
        lo, hi = check_rank_range(math.comb(len(pool), size), rank_range)
        check_budget(hi - lo, allow_large, f"verify-theorem n={n}")
        params["rank_range"] = [lo, hi]
        tally = run_ranges(
            _closure_worker, (n, pool, size, max_witnesses, engine), lo, hi, jobs, max_witnesses
        )
    else:
        out_seed = resolve_seed(seed)
        params["trials"] = trials
        tally = run_sampled(_theorem_trial, (n, pool, size), trials, out_seed, jobs, max_witnesses)
    report = AuditReport.from_tally("verify-theorem", n, params, tally, out_seed)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def check_conjecture(
    n: int,
    mode: str = "exhaustive",
    trials: int | None = None,
    seed: int | None = None,
    rank_range: tuple[int, int] | None = None,
    *,
    jobs: int = 1,
    allow_large: bool = False,
    max_witnesses: int = 1000,
    engine: str = "auto",
) -> AuditReport:
    """Test |k∧A| = n over unit sets A of the conjectured size.

    Nothing is assumed about the outcome.  When there are fewer units than
    the conjectured size the report is flagged vacuous.
    """
    start = time.perf_counter()
    if n < 5:
        raise ValueError(f"check_conjecture needs n >= 5, got {n}")
    _check_mode(mode, trials)
    k, size = conjecture_params(n)
    pool = units(n).elements
    params: dict = {"mode": mode, "k": k, "size": size, "units": len(pool)}
    out_seed = None
    if size > len(pool):
        params["vacuous"] = True
        tally = Tally(keep=max_witnesses)
    elif mode == "exhaustive":
        lo, hi = check_rank_range(math.comb(len(pool), size), rank_range)
        check_budget(hi - lo, allow_large, f"verify-conjecture n={n}")
        params["rank_range"] = [lo, hi]
        tally = run_ranges(
            _restricted_worker, (n, pool, size, k, max_witnesses, engine), lo, hi, jobs, max_witnesses
        )
    else:
        out_seed = resolve_seed(seed)
        params["trials"] = trials
        tally = run_sampled(
            _conjecture_trial, (n, pool, size, k), trials, out_seed, jobs, max_witnesses
        )
    report = AuditReport.from_tally("verify-conjecture", n, params, tally, out_seed)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def max_incomplete_size(n: int, budget: int = 10**9, engine: str = "auto") -> tuple[int, ResidueSet]:
    """Largest s admitting an incomplete set of s units, with the colex-first witness."""
    pool = units(n).elements
    for size in range(len(pool), 0, -1):
        total = math.comb(len(pool), size)
        if total > budget:
            raise BudgetExceededError(
                f"max-incomplete n={n}: C({len(pool)}, {size}) = {total} exceeds budget {budget}"
            )
        _, _, nviol, ranks = closure_search(n, pool, size, 0, total, 1, engine)
        if nviol:
            return size, _from_ranks(n, pool, size, ranks)[0][1]
    raise AssertionError("a single unit is never complete for n >= 2")
