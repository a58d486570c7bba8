"""Witnesses, partial tallies and audit reports."""

from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass, field
from typing import Any

from .. import bounds
from ..sums import escape_count, k_fold_sums, subset_sums, sumset
from ..zn import ResidueSet, ZnSet, format_literal, parse_literal, subgroup_generated

RELATIONS = {
    "==": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
    "<=": operator.le,
    "<": operator.lt,
}


@dataclass
class Witness:
    """A concrete instance plus both sides of the claim it was checked against.

    ``sets`` maps names (A, B, C, X, Y) to ascending residue tuples and
    ``scalars`` carries any single residues or integers the claim needs.
    """

    claim: str
    n: int
    sets: dict[str, tuple[int, ...]]
    lhs: int
    rhs: int
    relation: str
    scalars: dict[str, int] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return RELATIONS[self.relation](self.lhs, self.rhs)

    def sort_key(self) -> tuple:
        return (
            self.claim,
            self.n,
            tuple(sorted(self.sets.items())),
            tuple(sorted(self.scalars.items())),
        )

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "claim": self.claim,
            "n": self.n,
            "sets": {k: format_literal(v) for k, v in sorted(self.sets.items())},
        }
        if self.scalars:
            out["scalars"] = dict(sorted(self.scalars.items()))
        out.update(lhs=self.lhs, rhs=self.rhs, relation=self.relation)
        return out

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Witness:
        return cls(
            claim=obj["claim"],
            n=obj["n"],
            sets={k: tuple(parse_literal(v)) for k, v in obj["sets"].items()},
            lhs=obj["lhs"],
            rhs=obj["rhs"],
            relation=obj["relation"],
            scalars=dict(obj.get("scalars", {})),
        )


def _closure0(n: int, elems) -> ZnSet:
    return subset_sums(ResidueSet(n, elems)).s0


def evaluate_claim(w: Witness) -> tuple[int, int]:
    """Recompute (lhs, rhs) for a witness from its stored sets alone."""
    n, s, sc = w.n, w.sets, w.scalars
    claim = w.claim
    if claim == "complete":
        a = ResidueSet(n, s["A"])
        return len(subset_sums(a).s), len(subgroup_generated(a))
    if claim == "kfold_full":
        return len(k_fold_sums(ResidueSet(n, s["A"]), sc["k"])), n
    if claim == "chowla":
        x = ZnSet.from_iterable(n, s["X"])
        y = ZnSet.from_iterable(n, s["Y"])
        return len(sumset(x, y)), bounds.chowla_bound(n, len(x), len(y))
    if claim == "removal":
        y_set = s["Y"]
        b = _closure0(n, y_set)
        rest = _closure0(n, [e for e in y_set if e != sc["y"]])
        return len(b), len(rest) + escape_count(b, sc["y"])
    if claim == "adjoin":
        b = _closure0(n, s["Y"])
        grown = _closure0(n, s["Y"] + (sc["z"],))
        return len(grown), len(b) + escape_count(b, sc["z"])
    if claim == "escape_symmetry":
        b = ZnSet.from_iterable(n, s["B"])
        return escape_count(b, sc["x"]), escape_count(b, -sc["x"] % n)
    if claim == "escape_subadditive":
        b = ZnSet.from_iterable(n, s["B"])
        x, y = sc["x"], sc["y"]
        return escape_count(b, (x + y) % n), escape_count(b, x) + escape_count(b, y)
    if claim == "escape_sum":
        b = ZnSet.from_iterable(n, s["B"])
        c = s["C"]
        return sum(escape_count(b, x) for x in c), len(b) * (len(c) - len(b) + 1)
    if claim in ("strict_escape", "weak_escape"):
        b = ZnSet.from_iterable(n, s["B"])
        a = len(s["A"])
        alpha = max(escape_count(b, x) for x in s["A"])
        if claim == "strict_escape":
            return alpha * len(b), a * (len(b) - a + 3)
        return alpha, a - 1
    if claim == "antisym_sums":
        a = len(s["A"])
        return 2 * len(_closure0(n, s["A"])), min(n + 2, 6 + a * (a - 1))
    if claim == "disjoint_closures":
        return len(_closure0(n, s["X"])) + len(_closure0(n, s["Y"])), n + 1
    raise ValueError(f"unknown claim {claim!r}")


def recheck(w: Witness) -> bool:
    """True when the stored lhs/rhs are reproduced from scratch."""
    return evaluate_claim(w) == (w.lhs, w.rhs)


@dataclass
class Tally:
    """Partial campaign result; tallies merge associatively and commutatively.

    Only the ``keep`` smallest witnesses (by ``order``) are retained per list,
    so the retained set does not depend on how the work was partitioned.
    """

    keep: int
    instances: int = 0
    violation_count: int = 0
    finding_count: int = 0
    violations: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    counters: dict[str, int] = field(default_factory=dict)

    def add_violation(self, order, witness: Witness) -> None:
        self.violation_count += 1
        self.violations = _push(self.violations, (order, witness), self.keep)

    def add_finding(self, order, witness: Witness) -> None:
        self.finding_count += 1
        self.findings = _push(self.findings, (order, witness), self.keep)

    def count(self, key: str, amount: int = 1) -> None:
        self.counters[key] = self.counters.get(key, 0) + amount

    def merge(self, other: Tally) -> Tally:
        out = Tally(
            keep=self.keep,
            instances=self.instances + other.instances,
            violation_count=self.violation_count + other.violation_count,
            finding_count=self.finding_count + other.finding_count,
            violations=_smallest(self.violations + other.violations, self.keep),
            findings=_smallest(self.findings + other.findings, self.keep),
            counters=dict(self.counters),
        )
        for k, v in other.counters.items():
            out.counters[k] = out.counters.get(k, 0) + v
        return out


def _key(entry):
    return (entry[0], entry[1].sort_key())


def _smallest(entries: list, keep: int) -> list:
    return heapq.nsmallest(keep, entries, key=_key)


def _push(entries: list, entry, keep: int) -> list:
    entries.append(entry)
    if len(entries) > 2 * keep + 16:
        entries = _smallest(entries, keep)
    return entries


@dataclass
class AuditReport:
    check: str
    n: int
    params: dict[str, Any]
    instances_tested: int
    violations: list[Witness]
    findings: list[Witness]
    violation_count: int
    finding_count: int
    seed: int | None
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    @classmethod
    def from_tally(cls, check: str, n: int, params: dict, tally: Tally, seed) -> AuditReport:
        params = dict(params)
        if tally.counters:
            params["counters"] = dict(sorted(tally.counters.items()))
        return cls(
            check=check,
            n=n,
            params=params,
            instances_tested=tally.instances,
            violations=_canonical(tally.violations, tally.keep),
            findings=_canonical(tally.findings, tally.keep),
            violation_count=tally.violation_count,
            finding_count=tally.finding_count,
            seed=seed,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "n": self.n,
            "params": self.params,
            "instances_tested": self.instances_tested,
            "violation_count": self.violation_count,
            "finding_count": self.finding_count,
            "violations": [w.to_json() for w in self.violations],
            "findings": [w.to_json() for w in self.findings],
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> AuditReport:
        return cls(
            check=obj["check"],
            n=obj["n"],
            params=obj["params"],
            instances_tested=obj["instances_tested"],
            violations=[Witness.from_json(w) for w in obj["violations"]],
            findings=[Witness.from_json(w) for w in obj["findings"]],
            violation_count=obj["violation_count"],
            finding_count=obj["finding_count"],
            seed=obj["seed"],
            elapsed_ms=obj["elapsed_ms"],
        )


def _canonical(entries: list, keep: int) -> list[Witness]:
    return sorted((w for _, w in _smallest(entries, keep)), key=Witness.sort_key)
