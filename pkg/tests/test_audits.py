from __future__ import annotations

import random
from itertools import combinations

import pytest

from oracles import complete_bf, escape_bf, subset_sums_bf, sumset_bf, units_bf
from zncomplete.verify import (
    CLAIMS,
    AuditReport,
    Witness,
    audit_chowla,
    audit_final_inequality,
    audit_lemma_eh,
    audit_mainlemma,
    audit_olson_identities,
    evaluate_claim,
    recheck,
    run_audit,
)
from zncomplete.verify.combinatorics import antisymmetric_unit_sets, count_antisymmetric_unit_sets
from zncomplete.verify.report import Tally


def strip(report):
    d = report.to_json()
    d.pop("elapsed_ms")
    return d


# claim examples, evaluated from stored sets alone


@pytest.mark.parametrize(
    "w,expected",
    [
        (Witness("chowla", 5, {"X": (0, 1), "Y": (0, 2)}, 0, 0, ">="), (4, 3)),
        (Witness("chowla", 5, {"X": (0,), "Y": (0,)}, 0, 0, ">="), (1, 1)),
        (Witness("adjoin", 5, {"Y": (1,)}, 0, 0, "==", {"z": 2}), (4, 4)),
        (Witness("escape_sum", 5, {"B": (0, 1), "C": (1, 2, 3, 4)}, 0, 0, ">="), (6, 6)),
        (Witness("escape_symmetry", 9, {"B": (1, 4, 5)}, 0, 0, "==", {"x": 0}), (0, 0)),
        (Witness("strict_escape", 11, {"A": (1, 2, 3), "B": (0, 1, 2, 3, 4)}, 0, 0, ">"), (15, 15)),
        (Witness("weak_escape", 11, {"A": (1, 2, 3), "B": (0, 1, 2, 3, 4)}, 0, 0, ">="), (3, 2)),
        (Witness("strict_escape", 11, {"A": (1, 2, 3), "B": (0, 2, 4, 6, 8)}, 0, 0, ">"), (25, 15)),
        (Witness("weak_escape", 11, {"A": (1, 2, 3), "B": (0, 2, 4, 6, 8)}, 0, 0, ">="), (5, 2)),
        (Witness("strict_escape", 11, {"A": (1, 2, 3), "B": (0,)}, 0, 0, ">"), (1, 3)),
        (Witness("antisym_sums", 7, {"A": (1, 2)}, 0, 0, ">="), (8, 8)),
        (Witness("antisym_sums", 5, {"A": (2, 4)}, 0, 0, ">="), (8, 7)),
        (Witness("disjoint_closures", 5, {"A": (1, 2), "X": (1,), "Y": (2,)}, 0, 0, "<="), (4, 6)),
        (Witness("disjoint_closures", 4, {"A": (1, 3), "X": (1,), "Y": (3,)}, 0, 0, "<="), (4, 5)),
    ],
)
def test_claim_examples(w, expected):
    assert evaluate_claim(w) == expected


def test_escape_values_of_documented_instance():
    b = range(5)
    assert [escape_bf(11, b, x) for x in (1, 2, 3)] == [1, 2, 3]


# exhaustive counts and outcomes against brute force


@pytest.mark.parametrize("n", range(2, 9))
def test_chowla_exhaustive_against_oracle(n):
    r = audit_chowla(n)
    us = units_bf(n)
    expected = ((1 << n) - 1) * (1 << len(us))
    assert r.instances_tested == expected == r.params["expected_instances"]
    assert r.violation_count == 0
    if n <= 6:
        bad = 0
        for xm in range(1, 1 << n):
            xs = [i for i in range(n) if xm >> i & 1]
            for r_ in range(len(us) + 1):
                for yy in combinations(us, r_):
                    y = (0,) + yy
                    bad += len(sumset_bf(n, xs, y)) < min(n, len(xs) + len(y) - 1)
        assert bad == 0


def olson_count(n):
    nb = (1 << n) - 1
    return nb * (n + n * n + (1 << (n - 1)) - 1) + ((1 << (n - 1)) - 1) * n


@pytest.mark.parametrize("n", range(2, 8))
def test_olson_exhaustive_counts(n):
    r = audit_olson_identities(n)
    assert r.instances_tested == olson_count(n) == r.params["expected_instances"]
    assert r.violation_count == 0
    c = r.params["counters"]
    nb = (1 << n) - 1
    assert c["escape_symmetry"] == nb * n and c["escape_subadditive"] == nb * n * n and c["escape_sum"] == nb * ((1 << (n - 1)) - 1)
    ys = [y for k in range(1, n) for y in combinations(range(1, n), k)]
    assert c["removal"] == sum(len(y) for y in ys)
    assert c["adjoin"] == sum(n - len(y) for y in ys)


def _lemma_eh_oracle(n):
    us = units_bf(n)
    a_sets = [
        c for k in range(3, len(us) + 1) for c in combinations(us, k)
        if not set(c) & {(-x) % n for x in c}
    ]
    count = strict_escape = weak_escape = applicable = 0
    for a in a_sets:
        size_a = len(a)
        for bsize in range(1, (n + 2) // 2 + 1):
            for b in combinations(range(n), bsize):
                count += 1
                alpha = max(escape_bf(n, b, x) for x in a)
                strict_escape += not alpha * bsize > size_a * (bsize - size_a + 3)
                if 2 * bsize >= size_a * (size_a - 3):
                    applicable += 1
                    weak_escape += not alpha >= size_a - 1
    return count, strict_escape, weak_escape, applicable


@pytest.mark.parametrize("n", [5, 7, 8, 9, 10])
def test_lemma_eh_exhaustive_against_oracle(n):
    r = audit_lemma_eh(n, max_witnesses=10**6)
    count, strict_escape, weak_escape, applicable = _lemma_eh_oracle(n)
    assert r.instances_tested == count
    assert r.violation_count == 0
    assert sum(w.claim == "strict_escape" for w in r.findings) == strict_escape
    assert sum(w.claim == "weak_escape" for w in r.findings) == weak_escape
    assert r.finding_count == strict_escape + weak_escape
    if count:
        assert r.params["counters"]["weak_escape_applicable"] == applicable
    assert all(recheck(w) and not w.holds for w in r.findings)


def test_lemma_eh_documented_finding():
    r = audit_lemma_eh(11)
    keys = {(w.claim, w.sets["A"], w.sets["B"]) for w in r.findings}
    assert ("strict_escape", (1, 2, 3), (0, 1, 2, 3, 4)) in keys
    assert ("weak_escape", (1, 2, 3), (0, 1, 2, 3, 4)) not in keys


@pytest.mark.parametrize("n", range(3, 17))
def test_mainlemma_exhaustive_against_oracle(n):
    r = audit_mainlemma(n)
    a_sets = antisymmetric_unit_sets(n, 2)
    assert r.instances_tested == len(a_sets) == count_antisymmetric_unit_sets(n, 2)
    bad = 0
    for a in a_sets:
        s0 = len(subset_sums_bf(n, a)[1])
        bad += not 2 * s0 >= min(n + 2, 6 + len(a) * (len(a) - 1))
    assert r.violation_count == bad == 0


@pytest.mark.parametrize("n", range(3, 11))
def test_final_inequality_exhaustive_against_oracle(n):
    r = audit_final_inequality(n)
    us = units_bf(n)
    count = bad = 0
    for k in range(1, len(us) + 1):
        for a in combinations(us, k):
            if complete_bf(n, a):
                continue
            # each element goes to X, Y or neither
            for labels in range(3 ** k):
                xs, ys = [], []
                for e in a:
                    labels, t = divmod(labels, 3)
                    if t == 1:
                        xs.append(e)
                    elif t == 2:
                        ys.append(e)
                if xs and ys:
                    count += 1
                    bad += len(subset_sums_bf(n, xs)[1]) + len(subset_sums_bf(n, ys)[1]) > n + 1
    assert r.instances_tested == count
    assert r.instances_tested <= r.params["instance_bound"]
    assert r.violation_count == bad == 0


def test_vacuous_audits():
    assert audit_lemma_eh(5).params["vacuous"]
    assert audit_mainlemma(3).params["vacuous"]
    assert audit_final_inequality(2).params["vacuous"]


# sampled mode


@pytest.mark.parametrize(
    "claim,n", [("chowla", 97), ("olson", 64), ("lemma-eh", 41), ("mainlemma", 61), ("final-ineq", 30)]
)
def test_sampled_determinism_across_jobs(claim, n):
    reports = [strip(run_audit(claim, n, mode="sampled", trials=2100, seed=11, jobs=j)) for j in (1, 2, 3)]
    assert reports[0] == reports[1] == reports[2]
    assert reports[0]["violation_count"] == 0
    assert reports[0]["seed"] == 11


def test_sampled_lemma_eh_findings_recheck():
    r = audit_lemma_eh(23, mode="sampled", trials=3000, seed=3)
    assert r.instances_tested == 3000
    assert r.finding_count > 0
    for w in r.findings:
        a, b = w.sets["A"], w.sets["B"]
        assert len(a) >= 3 and 2 * len(b) <= 23 + 2
        assert not set(a) & {(-x) % 23 for x in a}
        assert recheck(w) and not w.holds


def test_run_audit_rejects_unknown_claim():
    with pytest.raises(ValueError):
        run_audit("nope", 7)
    assert set(CLAIMS) == {"chowla", "olson", "lemma-eh", "mainlemma", "final-ineq"}


def test_budget_guard_on_audits():
    from zncomplete.verify import BudgetExceededError

    with pytest.raises(BudgetExceededError):
        audit_chowla(40)


# witnesses and merging


def test_report_json_round_trip():
    r = audit_lemma_eh(9, max_witnesses=20)
    back = AuditReport.from_json(r.to_json())
    assert back.to_json() == r.to_json()
    assert all(recheck(w) for w in back.findings)


def _random_tally(rng, keep):
    t = Tally(keep=keep)
    for _ in range(rng.randint(0, 30)):
        a = tuple(sorted(rng.sample(range(1, 13), 3)))
        w = Witness("complete", 13, {"A": a}, 1, 2, "==")
        if rng.random() < 0.5:
            t.add_violation(rng.randrange(100), w)
        else:
            t.add_finding(rng.randrange(100), w)
        t.instances += 1
        t.count("x")
    return t


def test_tally_merge_is_order_independent():
    rng = random.Random(5)
    for _ in range(50):
        keep = rng.randint(1, 8)
        parts = [_random_tally(rng, keep) for _ in range(5)]
        a = parts[0]
        for p in parts[1:]:
            a = a.merge(p)
        order = parts[:]
        rng.shuffle(order)
        b = order[0]
        for p in order[1:]:
            b = p.merge(b)
        left = parts[0].merge(parts[1]).merge(parts[2])
        right = parts[0].merge(parts[1].merge(parts[2]))
        for x, y in ((a, b), (left, right)):
            rx = AuditReport.from_tally("c", 13, {}, x, None)
            ry = AuditReport.from_tally("c", 13, {}, y, None)
            assert rx.to_json() == ry.to_json()


def test_weak_escape_bound_counterexample():
    # admissible: antisymmetric units, a = 5 >= 3, 2b = 12 <= n + 2, 2b >= a(a-3) = 10
    n, a, b = 11, (1, 2, 3, 4, 5), (0, 1, 2, 4, 5, 7)
    assert not set(a) & {(-x) % n for x in a}
    assert [escape_bf(n, b, x) for x in a] == [3, 3, 3, 3, 3]
    w = Witness("weak_escape", n, {"A": a, "B": b}, 3, 4, ">=")
    assert recheck(w) and not w.holds


def test_weak_escape_bound_failures_all_have_small_b():
    """Every failure of alpha >= a - 1 up to n = 16 has b < a + 2, where the
    layered construction cannot fit A* inside a set of size 2b - 2."""
    total = 0
    for n in range(7, 17):
        r = audit_lemma_eh(n, max_witnesses=10**6)
        weak_escape = [w for w in r.findings if w.claim == "weak_escape"]
        assert len(weak_escape) == r.params.get("counters", {}).get("weak_escape_findings", 0)
        assert all(len(w.sets["B"]) < len(w.sets["A"]) + 2 for w in weak_escape)
        total += len(weak_escape)
    assert total == 32320
