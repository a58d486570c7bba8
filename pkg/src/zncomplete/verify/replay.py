"""Step-by-step replays of the two constructive arguments on concrete sets.

A replay does not prove anything; it records every intermediate object and
every comparison the argument relies on, so a reader can see exactly which
step holds or breaks on a given instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..sums import escape_count, is_complete, subset_sums, sumset
from ..zn import ResidueSet, ZnSet, format_literal
from .report import RELATIONS


@dataclass
class Step:
    name: str
    lhs: int | Fraction
    rhs: int | Fraction
    relation: str

    @property
    def holds(self) -> bool:
        return RELATIONS[self.relation](self.lhs, self.rhs)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "relation": self.relation,
            "holds": self.holds,
        }


def _num(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


@dataclass
class ProofTrace:
    proof: str
    n: int
    data: dict[str, Any] = field(default_factory=dict)
    steps: list[Step] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def step(self, name, lhs, rhs, relation) -> Step:
        s = Step(name, lhs, rhs, relation)
        self.steps.append(s)
        return s

    def get(self, name: str) -> Step:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict[str, Any]:
        data = {k: (format_literal(v) if isinstance(v, (tuple, ResidueSet)) else v) for k, v in self.data.items()}
        return {
            "proof": self.proof,
            "n": self.n,
            "data": data,
            "steps": [s.to_json() for s in self.steps],
            "notes": self.notes,
        }


def antisymmetric_partition(a: ResidueSet) -> tuple[ResidueSet, ResidueSet]:
    """Split units A into halves of sizes ceil(k/2), floor(k/2), each
    disjoint from its own negative.

    Each pair {x, -x} inside A is split (smaller to the first half); the
    unpaired elements then fill the first half up to its target size in
    ascending order and the rest go to the second half.
    """
    n = a.n
    if n < 3:
        raise ValueError("needs n >= 3")
    if not a.is_units:
        raise ValueError("antisymmetric_partition needs a set of units")
    members = set(a.elements)
    first: list[int] = []
    second: list[int] = []
    unpaired: list[int] = []
    for x in a.elements:
        neg = (-x) % n
        if neg in members:
            if x < neg:
                first.append(x)
                second.append(neg)
        else:
            unpaired.append(x)
    target = (len(a) + 1) // 2
    take = target - len(first)
    first.extend(unpaired[:take])
    second.extend(unpaired[take:])
    a1, a2 = ResidueSet(n, first), ResidueSet(n, second)
    assert len(a1) == target and len(a1) + len(a2) == len(a)
    assert a1.is_antisymmetric and a2.is_antisymmetric
    return a1, a2


def _s0_size(a: ResidueSet) -> int:
    return len(subset_sums(a).s0)


def replay_main_proof(n: int, a: ResidueSet) -> ProofTrace:
    """Replay the parity-split argument for the completeness threshold on A."""
    if a.n != n:
        raise ValueError("modulus mismatch")
    if not a.is_units:
        raise ValueError("A must consist of units")
    k = len(a)
    if k < 4:
        raise ValueError("the argument needs |A| >= 4")
    tr = ProofTrace("main", n)
    incomplete = not is_complete(a)
    tr.data.update(A=a.elements, k=k, parity="even" if k % 2 == 0 else "odd", incomplete=incomplete)
    if not incomplete:
        tr.notes.append("A is complete: the premise of the disjoint-closures bound is absent")

    a1, a2 = antisymmetric_partition(a)
    s1, s2 = _s0_size(a1), _s0_size(a2)
    tr.data.update(A1=a1.elements, A2=a2.elements, s0_A1=s1, s0_A2=s2)
    tr.step("partition_closures", s1 + s2, n + 1, "<=")

    half = k // 2
    # doubled: 3 + h(h-1)/2 < (n+2)/2  <=>  6 + h(h-1) < n + 2
    halves_bound = tr.step("halves_bound", 6 + half * (half - 1), n + 2, "<")
    if not halves_bound.holds:
        tr.notes.append("halves_bound fails: the subset-sum lower bound already forces |S0_A1|+|S0_A2| >= n+2")
    # k > 1 + 2 sqrt(n - 4)  <=>  (k-1)^2 > 4n - 16
    tr.step("size_hypothesis", (k - 1) ** 2, 4 * n - 16, ">")

    if k % 2 == 0:
        tr.data["case"] = 1
        tr.step("case1_contradiction", (k - 1) ** 2 + 16, 4 * n, "<=")
        return tr

    tr.data["case"] = 2
    h = (k - 1) // 2
    tr.data["a"] = h
    b = subset_sums(a2).s0
    tr.step("case2_s0_A2", len(b), 3 + Fraction(h * (h - 1), 2), ">=")
    # ties broken by the smallest residue
    y = max(a1.elements, key=lambda e: (escape_count(b, e), -e))
    lam = escape_count(b, y)
    tr.data.update(y=y, escape_y=lam)
    tr.step("case2_escape_y", lam, h - 1, ">=")
    c1, c2 = a1.without(y), a2.with_element(y)
    sc1, sc2 = _s0_size(c1), _s0_size(c2)
    tr.data.update(C1=c1.elements, C2=c2.elements, s0_C1=sc1, s0_C2=sc2)
    tr.step("case2_adjoin", sc2, len(b) + lam, "==")
    tr.step("case2_s0_C2", sc2, 2 + Fraction(h * (h + 1), 2), ">=")
    tr.step("case2_s0_C1", sc1, 3 + Fraction(h * (h - 1), 2), ">=")
    tr.step("moved_closures", sc1 + sc2, n + 1, "<=")
    tr.step("case2_contradiction", 16 + (k - 1) ** 2, 4 * n, "<=")
    return tr


def replay_lemma_eh(n: int, a: ResidueSet, b: ZnSet) -> ProofTrace:
    """Replay the layered-sumset argument bounding the largest escape over A.

    Builds A* = A ∪ -A ∪ {0}, t = 2|B| - 3 = 2ma + r, the iterated sumsets
    C_j = jA*, a set C ⊇ A* with |C| = t + 1 taking 2a new elements from each
    C_j (j <= m) and r from C_{m+1} (lowest residues first), and evaluates
    every inequality in the chain on E = C \\ {0}.
    """
    if a.n != n or b.n != n:
        raise ValueError("modulus mismatch")
    size_a, size_b = len(a), len(b)
    if not a.is_units or not a.is_antisymmetric or size_a < 3:
        raise ValueError("A must be antisymmetric units with |A| >= 3")
    if size_b < 1 or 2 * size_b > n + 2:
        raise ValueError("B must be nonempty with 2|B| <= n + 2")
    t = 2 * size_b - 3
    if t >= n or t < 1:
        raise ValueError(f"t = 2|B| - 3 = {t} must satisfy 1 <= t < n")
    m, r = divmod(t, 2 * size_a)

    tr = ProofTrace("lemma-eh", n)
    a_star = ZnSet.from_iterable(n, set(a.elements) | {(-x) % n for x in a.elements} | {0})
    tr.data.update(A=a.elements, B=b.elements(), a=size_a, b=size_b, t=t, m=m, r=r)
    tr.data["A_star"] = a_star.elements()
    tr.step("decomposition", 2 * m * size_a + r, t, "==")
    tr.step("a_star_size", len(a_star), 2 * size_a + 1, "==")
    if t + 1 < len(a_star):
        raise ValueError(f"|C| = t + 1 = {t + 1} cannot contain A* of size {len(a_star)}")

    layers = [a_star]
    for _ in range(m):
        layers.append(sumset(layers[-1], a_star))
    tr.data["C_j_sizes"] = [len(c) for c in layers]
    for j, cj in enumerate(layers, start=1):
        tr.step(f"growth_C{j}", len(cj), min(n, 2 * j * size_a + 1), ">=")

    chosen = a_star
    level = {x: 1 for x in a_star}
    for j in range(2, m + 2):
        want = 2 * size_a if j <= m else r
        fresh = (layers[j - 1] - chosen).elements()[:want]
        if len(fresh) < want:
            raise ValueError(f"C_{j} has too few new elements ({len(fresh)} < {want})")
        chosen = chosen | ZnSet.from_iterable(n, fresh)
        level.update((x, j) for x in fresh)
    e = sorted(x for x in chosen if x != 0)
    tr.data["C"] = chosen.elements()
    tr.data["E"] = tuple(e)
    tr.step("c_size", len(chosen), t + 1, "==")

    alpha = max(escape_count(b, x) for x in a.elements)
    escapes = {x: escape_count(b, x) for x in e}
    total = sum(escapes.values())
    tr.data.update(alpha=alpha, escape_sum=total)

    tr.step("layer_bound", total, sum(level[x] * alpha for x in e), "<=")
    closed = alpha * (m + 1) * (m * size_a + r)
    tr.step("layer_sum_closed_form", sum(level[x] * alpha for x in e), closed, "<=")
    relaxed = Fraction(alpha * (t + size_a) ** 2, 4 * size_a)
    tr.step("square_relaxation", closed, relaxed, "<=")
    tr.step("escape_sum_lower_bound", total, size_b * (len(e) - size_b + 1), ">=")

    ratio = Fraction(4 * size_a * size_b * (t - size_b + 1), (t + size_a) ** 2)
    tr.step("alpha_ratio", alpha, ratio, ">=")
    simplified = Fraction(size_a * (size_b - 2), size_b) * (1 - Fraction(size_a - 3, size_b))
    tr.step("ratio_simplified", ratio, simplified, ">=")
    target = size_a - Fraction(size_a * (size_a - 3), size_b)
    tr.step("final_strict_step", simplified, target, ">")
    tr.step("strict_escape", alpha, target, ">")
    if 2 * size_b >= size_a * (size_a - 3):
        tr.step("weak_escape", alpha, size_a - 1, ">=")
    return tr
