"""Auditors for the supporting inequalities: sumset growth, translate
escapes, the escape lower bound under antisymmetry, the subset-sum lower
bound, and the disjoint-closures inequality for incomplete sets.

Every auditor has an exhaustive mode (whole instance space, outer loop split
into index ranges for ``jobs``) and a sampled mode (seeded blocks of trials).
Violations are failures of established claims; ``audit_lemma_eh`` instead
records failures as findings, because the strict escape bound it maps is
known to fail on admissible instances.
"""

from __future__ import annotations

import math
import time

import numpy as np

from ..bounds import chowla_bound, lamb_bound_holds, mainlemma_bound_holds
from ..sums import escape_count, escape_profile, is_complete, nonempty_sums_bits, sumset
from ..zn import ResidueSet, ZnSet, check_modulus, rotate, units
from .combinatorics import antisymmetric_unit_sets, count_antisymmetric_unit_sets, unit_pairs
from .parallel import check_budget, resolve_seed, run_ranges, run_sampled
from .report import AuditReport, Tally, Witness

CLAIMS = ("chowla", "olson", "lemma-eh", "mainlemma", "final-ineq")


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _s0(n: int, elems) -> int:
    return nonempty_sums_bits(n, elems) | 1


def _finish(check, n, params, tally, seed, start) -> AuditReport:
    report = AuditReport.from_tally(check, n, params, tally, seed)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def _run(check, n, mode, trials, seed, jobs, keep, exhaustive, sampled, allow_large, params=None, exact=True):
    """Shared driver.  ``exhaustive`` is (worker, args, outer_count, instance_count);
    with ``exact=False`` the instance count is only an upper bound."""
    start = time.perf_counter()
    params = dict(params or {}, mode=mode)
    out_seed = None
    if mode == "exhaustive":
        worker, args, outer, count = exhaustive
        check_budget(count, allow_large, f"audit {check} n={n}")
        params["expected_instances" if exact else "instance_bound"] = count
        tally = run_ranges(worker, args + (keep,), 0, outer, jobs, keep)
    elif mode == "sampled":
        if trials is None or trials < 1:
            raise ValueError("sampled mode needs trials >= 1")
        out_seed = resolve_seed(seed)
        params["trials"] = trials
        trial, args = sampled
        tally = run_sampled(trial, args, trials, out_seed, jobs, keep)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _finish(f"audit-{check}", n, params, tally, out_seed, start)


def _random_subset(rng, population, size) -> tuple[int, ...]:
    return tuple(sorted(rng.sample(population, size)))


# sumset growth ---------------------------------------------------------------


def _chowla_check(tally, n, x_bits, y_elems, xy_bits, order):
    sx, sy = x_bits.bit_count(), len(y_elems)
    lhs, rhs = xy_bits.bit_count(), chowla_bound(n, sx, sy)
    tally.instances += 1
    if lhs < rhs:
        w = Witness("chowla", n, {"X": tuple(_iter_bits(x_bits)), "Y": tuple(y_elems)}, lhs, rhs, ">=")
        tally.add_violation(order, w)


def _chowla_exhaustive(n, unit_list, keep, lo, hi) -> Tally:
    tally = Tally(keep=keep)
    phi = len(unit_list)
    y_sizes = [m.bit_count() + 1 for m in range(1 << phi)]
    for x_bits in range(lo + 1, hi + 1):
        sx = x_bits.bit_count()
        shifted = [rotate(x_bits, u, n) for u in unit_list]
        acc = [x_bits] * (1 << phi)
        for mask in range(1 << phi):
            if mask:
                low = (mask & -mask).bit_length() - 1
                acc[mask] = acc[mask & (mask - 1)] | shifted[low]
            if acc[mask].bit_count() < min(n, sx + y_sizes[mask] - 1):
                y = (0,) + tuple(unit_list[i] for i in range(phi) if mask >> i & 1)
                tally.instances -= 1  # recounted by _chowla_check
                _chowla_check(tally, n, x_bits, y, acc[mask], 0)
        tally.instances += 1 << phi
    return tally


def _chowla_trial(rng, tally, n, unit_list):
    sx = rng.randint(1, n)
    x = ZnSet.from_iterable(n, rng.sample(range(n), sx))
    sy = rng.randint(0, len(unit_list))
    y_elems = (0,) + _random_subset(rng, unit_list, sy)
    y = ZnSet.from_iterable(n, y_elems)
    _chowla_check(tally, n, x.bits, y_elems, sumset(x, y).bits, 0)


def audit_chowla(n, mode="exhaustive", trials=None, seed=None, *, jobs=1, allow_large=False, max_witnesses=1000):
    """|X + Y| >= min(n, |X| + |Y| - 1) for X nonempty, 0 in Y, Y \\ {0} units."""
    check_modulus(n)
    unit_list = units(n).elements
    outer = (1 << n) - 1
    count = outer * (1 << len(unit_list))
    return _run(
        "chowla", n, mode, trials, seed, jobs, max_witnesses,
        (_chowla_exhaustive, (n, unit_list), outer, count),
        (_chowla_trial, (n, unit_list)),
        allow_large,
    )


# translate escapes and their identities --------------------------------------


def _olson_b_checks(tally, n, b_bits, lam, xs, xy_pairs, c_sets):
    """Symmetry, subadditivity and the escape-sum lower bound for one B.

    ``lam`` maps each residue that is needed to its escape count from B.
    """
    b_elems = tuple(_iter_bits(b_bits))
    size_b = len(b_elems)
    for x in xs:
        tally.instances += 1
        tally.count("escape_symmetry")
        if lam[x] != lam[-x % n]:
            tally.add_violation(0, Witness("escape_symmetry", n, {"B": b_elems}, lam[x], lam[-x % n], "==", {"x": x}))
    for x, y in xy_pairs:
        tally.instances += 1
        tally.count("escape_subadditive")
        lhs, rhs = lam[(x + y) % n], lam[x] + lam[y]
        if lhs > rhs:
            tally.add_violation(0, Witness("escape_subadditive", n, {"B": b_elems}, lhs, rhs, "<=", {"x": x, "y": y}))
    for c in c_sets:
        tally.instances += 1
        tally.count("escape_sum")
        lhs, rhs = sum(lam[e] for e in c), size_b * (len(c) - size_b + 1)
        if lhs < rhs:
            tally.add_violation(0, Witness("escape_sum", n, {"B": b_elems, "C": c}, lhs, rhs, ">="))


def _olson_y_checks(tally, n, y_elems, y_list, z_list):
    """Removal inequality for y in y_list, adjoining identity for z in z_list."""
    b_bits = _s0(n, y_elems)
    b = ZnSet(n, b_bits)
    size_b = len(b)
    for y in y_list:
        tally.instances += 1
        tally.count("removal")
        rest = _s0(n, [e for e in y_elems if e != y]).bit_count()
        rhs = rest + escape_count(b, y)
        if size_b < rhs:
            tally.add_violation(0, Witness("removal", n, {"Y": y_elems}, size_b, rhs, ">=", {"y": y}))
    for z in z_list:
        tally.instances += 1
        tally.count("adjoin")
        lhs = _s0(n, y_elems + (z,)).bit_count()
        rhs = size_b + escape_count(b, z)
        if lhs != rhs:
            tally.add_violation(0, Witness("adjoin", n, {"Y": y_elems}, lhs, rhs, "==", {"z": z}))


def _olson_exhaustive(n, keep, lo, hi) -> Tally:
    tally = Tally(keep=keep)
    n_b = (1 << n) - 1
    xs = range(n)
    xy_pairs = [(x, y) for x in xs for y in xs]
    nonzero = [tuple(i + 1 for i in range(n - 1) if m >> i & 1) for m in range(1, 1 << (n - 1))]
    for idx in range(lo, hi):
        if idx < n_b:
            b_bits = idx + 1
            lam = escape_profile(ZnSet(n, b_bits))
            _olson_b_checks(tally, n, b_bits, lam, xs, xy_pairs, nonzero)
        else:
            y_elems = nonzero[idx - n_b]
            z_list = [z for z in range(n) if z not in y_elems]
            _olson_y_checks(tally, n, y_elems, y_elems, z_list)
    return tally


def _random_nonempty(rng, n) -> ZnSet:
    # half dense uniform subsets, half small ones where the bounds are tight
    while True:
        if rng.random() < 0.5:
            bits = rng.getrandbits(n)
        else:
            bits = ZnSet.from_iterable(n, rng.sample(range(n), rng.randint(1, min(n, 24)))).bits
        if bits:
            return ZnSet(n, bits)


def _olson_trial(rng, tally, n):
    b = _random_nonempty(rng, n)
    x, y = rng.randrange(n), rng.randrange(n)
    c = _random_subset(rng, range(1, n), rng.randint(1, n - 1))
    needed = {x, -x % n, y, (x + y) % n, *c}
    lam = {v: escape_count(b, v) for v in needed}
    _olson_b_checks(tally, n, b.bits, lam, [x], [(x, y)], [c])
    y_elems = _random_subset(rng, range(1, n), rng.randint(1, min(n - 1, 16)))
    outside = [z for z in range(n) if z not in y_elems]
    _olson_y_checks(tally, n, y_elems, [rng.choice(y_elems)], [rng.choice(outside)])


def audit_olson_identities(n, mode="exhaustive", trials=None, seed=None, *, jobs=1, allow_large=False, max_witnesses=1000):
    """Escape-count identities: removal (removal), adjoining (adjoin), symmetry
    (escape_symmetry), subadditivity (escape_subadditive) and the summed lower bound (escape_sum).

    Exhaustive instances: every nonempty B with every x, every (x, y) and
    every nonempty C avoiding 0; every nonempty Y avoiding 0 with each y in Y
    and each z outside Y.  A sampled instance draws one of each.
    """
    check_modulus(n)
    n_b = (1 << n) - 1
    n_y = (1 << (n - 1)) - 1
    count = n_b * (n + n * n + n_y) + n_y * n
    return _run(
        "olson", n, mode, trials, seed, jobs, max_witnesses,
        (_olson_exhaustive, (n,), n_b + n_y, count),
        (_olson_trial, (n,)),
        allow_large,
    )


# escape lower bound for antisymmetric unit sets ------------------------------


def _lemma_eh_record(tally, n, a_elems, b_bits, alpha):
    """File findings for one (A, B); instance counting is the caller's job."""
    a, b = len(a_elems), b_bits.bit_count()
    sets = {"A": tuple(a_elems), "B": tuple(_iter_bits(b_bits))}
    if not lamb_bound_holds(a, b, alpha):
        tally.count("strict_escape_findings")
        tally.add_finding(0, Witness("strict_escape", n, sets, alpha * b, a * (b - a + 3), ">"))
    if 2 * b >= a * (a - 3) and alpha < a - 1:
        tally.count("weak_escape_findings")
        tally.add_finding(0, Witness("weak_escape", n, sets, alpha, a - 1, ">="))


def _lemma_eh_b_masks(n):
    limit = (n + 2) // 2
    return [m for m in range(1, 1 << n) if m.bit_count() <= limit]


def _lemma_eh_exhaustive(n, keep, lo, hi) -> Tally:
    tally = Tally(keep=keep)
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for s in antisymmetric_unit_sets(n, 3):
        by_size.setdefault(len(s), []).append(s)
    groups = [(a, np.array(v, dtype=np.int64)) for a, v in sorted(by_size.items())]
    b_masks = _lemma_eh_b_masks(n)
    for bi in range(lo, hi):
        b_bits = b_masks[bi]
        b = b_bits.bit_count()
        lam = np.array(escape_profile(ZnSet(n, b_bits)), dtype=np.int64)
        for a, mat in groups:
            tally.instances += len(mat)
            alpha = lam[mat].max(axis=1)
            flagged = alpha * b <= a * (b - a + 3)
            if 2 * b >= a * (a - 3):
                tally.count("weak_escape_applicable", len(mat))
                flagged |= alpha < a - 1
            for row in np.nonzero(flagged)[0]:
                _lemma_eh_record(tally, n, tuple(int(v) for v in mat[row]), b_bits, int(alpha[row]))
    return tally


def _random_antisymmetric(rng, pairs, size):
    chosen = rng.sample(pairs, size)
    return tuple(sorted(p[rng.randrange(2)] for p in chosen))


def _lemma_eh_trial(rng, tally, n, pairs):
    a_elems = _random_antisymmetric(rng, pairs, rng.randint(3, len(pairs)))
    b = ZnSet.from_iterable(n, rng.sample(range(n), rng.randint(1, (n + 2) // 2)))
    alpha = max(escape_count(b, x) for x in a_elems)
    tally.instances += 1
    if 2 * len(b) >= len(a_elems) * (len(a_elems) - 3):
        tally.count("weak_escape_applicable")
    _lemma_eh_record(tally, n, a_elems, b.bits, alpha)


def audit_lemma_eh(n, mode="exhaustive", trials=None, seed=None, *, jobs=1, allow_large=False, max_witnesses=1000):
    """Map where the escape lower bounds hold for antisymmetric unit sets.

    Instances are pairs (A, B) with A antisymmetric, all units, |A| >= 3, and
    B nonempty with 2|B| <= n + 2.  With alpha = max escape of B over A, the
    strict bound alpha > a - a(a-3)/b (strict_escape) and, where 2b >= a(a-3), the
    bound alpha >= a - 1 (weak_escape) are evaluated; failures are findings.
    """
    check_modulus(n)
    params = {"claims": ["strict_escape", "weak_escape"]}
    if n < 3 or len(unit_pairs(n)) < 3:
        params["vacuous"] = True
        return _finish("audit-lemma-eh", n, dict(params, mode=mode), Tally(keep=max_witnesses), None, time.perf_counter())
    pairs = unit_pairs(n)
    n_a = count_antisymmetric_unit_sets(n, 3)
    n_b = sum(math.comb(n, b) for b in range(1, (n + 2) // 2 + 1))
    return _run(
        "lemma-eh", n, mode, trials, seed, jobs, max_witnesses,
        (_lemma_eh_exhaustive, (n,), n_b, n_a * n_b),
        (_lemma_eh_trial, (n, pairs)),
        allow_large,
        params,
    )


# subset-sum lower bound ------------------------------------------------------


def _mainlemma_check(tally, n, a_elems):
    a = len(a_elems)
    size = _s0(n, a_elems).bit_count()
    tally.instances += 1
    if not mainlemma_bound_holds(n, a, size):
        w = Witness("antisym_sums", n, {"A": a_elems}, 2 * size, min(n + 2, 6 + a * (a - 1)), ">=")
        tally.add_violation(0, w)


def _mainlemma_exhaustive(n, keep, lo, hi) -> Tally:
    tally = Tally(keep=keep)
    sets = antisymmetric_unit_sets(n, 2)
    for i in range(lo, hi):
        _mainlemma_check(tally, n, sets[i])
    return tally


def _mainlemma_trial(rng, tally, n, pairs):
    _mainlemma_check(tally, n, _random_antisymmetric(rng, pairs, rng.randint(2, len(pairs))))


def audit_mainlemma(n, mode="exhaustive", trials=None, seed=None, *, jobs=1, allow_large=False, max_witnesses=1000):
    """2|S^0_A| >= min(n + 2, 6 + a(a - 1)) for antisymmetric unit A, |A| >= 2."""
    check_modulus(n)
    if n < 3 or len(unit_pairs(n)) < 2:
        params = {"mode": mode, "vacuous": True}
        return _finish("audit-mainlemma", n, params, Tally(keep=max_witnesses), None, time.perf_counter())
    pairs = unit_pairs(n)
    count = count_antisymmetric_unit_sets(n, 2)
    return _run(
        "mainlemma", n, mode, trials, seed, jobs, max_witnesses,
        (_mainlemma_exhaustive, (n,), count, count),
        (_mainlemma_trial, (n, pairs)),
        allow_large,
    )


# disjoint closures of an incomplete set --------------------------------------


def _final_pairs(tally, n, a_elems):
    """Check |S^0_X| + |S^0_Y| <= n + 1 over ordered disjoint nonempty X, Y ⊆ A."""
    a = len(a_elems)
    sizes = [1] * (1 << a)
    closures = [1] * (1 << a)
    for mask in range(1, 1 << a):
        low = (mask & -mask).bit_length() - 1
        prev = closures[mask & (mask - 1)]
        closures[mask] = prev | rotate(prev, a_elems[low], n)
        sizes[mask] = closures[mask].bit_count()
    everything = (1 << a) - 1
    for xm in range(1, 1 << a):
        rest = everything & ~xm
        ym = rest
        while ym:
            tally.instances += 1
            lhs = sizes[xm] + sizes[ym]
            if lhs > n + 1:
                sets = {
                    "A": a_elems,
                    "X": tuple(a_elems[i] for i in range(a) if xm >> i & 1),
                    "Y": tuple(a_elems[i] for i in range(a) if ym >> i & 1),
                }
                tally.add_violation(0, Witness("disjoint_closures", n, sets, lhs, n + 1, "<="))
            ym = (ym - 1) & rest


def _final_exhaustive(n, unit_list, keep, lo, hi) -> Tally:
    tally = Tally(keep=keep)
    for mask in range(lo + 1, hi + 1):
        a_elems = tuple(unit_list[i] for i in range(len(unit_list)) if mask >> i & 1)
        if is_complete(ResidueSet(n, a_elems)):
            continue
        tally.count("incomplete_sets")
        _final_pairs(tally, n, a_elems)
    return tally


def _final_trial(rng, tally, n, unit_list):
    # incomplete unit sets have at most about 2*sqrt(n) elements
    top = min(len(unit_list), 2 * math.isqrt(n) + 2)
    size = rng.randint(2, top)
    a_elems = _random_subset(rng, unit_list, size)
    if is_complete(ResidueSet(n, a_elems)):
        tally.count("complete_draws")
        return
    order = rng.sample(a_elems, size)
    nx = rng.randint(1, size - 1)
    ny = rng.randint(1, size - nx)
    x_elems, y_elems = tuple(sorted(order[:nx])), tuple(sorted(order[nx : nx + ny]))
    tally.instances += 1
    lhs = _s0(n, x_elems).bit_count() + _s0(n, y_elems).bit_count()
    if lhs > n + 1:
        sets = {"A": a_elems, "X": x_elems, "Y": y_elems}
        tally.add_violation(0, Witness("disjoint_closures", n, sets, lhs, n + 1, "<="))


def audit_final_inequality(n, mode="exhaustive", trials=None, seed=None, *, jobs=1, allow_large=False, max_witnesses=1000):
    """For incomplete unit sets A and disjoint nonempty X, Y ⊆ A:
    |S^0_X| + |S^0_Y| <= n + 1.

    Which A are incomplete is only known after enumeration, so the expected
    instance count is an upper bound over all unit sets.
    """
    check_modulus(n)
    unit_list = units(n).elements
    phi = len(unit_list)
    outer = (1 << phi) - 1
    # every ordered disjoint nonempty pair, over every unit set
    bound = 4**phi - 2 * 3**phi + 2**phi
    if phi < 2:
        params = {"mode": mode, "vacuous": True}
        return _finish("audit-final-ineq", n, params, Tally(keep=max_witnesses), None, time.perf_counter())
    return _run(
        "final-ineq", n, mode, trials, seed, jobs, max_witnesses,
        (_final_exhaustive, (n, unit_list), outer, bound),
        (_final_trial, (n, unit_list)),
        allow_large,
        exact=False,
    )


def run_audit(claim: str, n: int, **kwargs) -> AuditReport:
    dispatch = {
        "chowla": audit_chowla,
        "olson": audit_olson_identities,
        "lemma-eh": audit_lemma_eh,
        "mainlemma": audit_mainlemma,
        "final-ineq": audit_final_inequality,
    }
    if claim not in dispatch:
        raise ValueError(f"unknown claim {claim!r}; expected one of {CLAIMS}")
    return dispatch[claim](n, **kwargs)
