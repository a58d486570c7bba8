"""Completeness thresholds and bound predicates in exact integer arithmetic.

Every square-root comparison is squared out; the thresholds land exactly on
perfect squares often enough (4p - 4 = 16 at p = 5) that floating point would
misclassify them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt


class ThresholdKind(str, Enum):
    MAIN_THEOREM = "main_theorem"
    OLSON = "olson"
    CONJECTURE_SIZE = "conjecture_size"
    CONJECTURE_K = "conjecture_k"


def ceil_sqrt(v: int) -> int:
    """Least m >= 0 with m*m >= v."""
    if v <= 0:
        return 0
    r = isqrt(v)
    return r if r * r == v else r + 1


def main_threshold(n: int) -> int:
    """Least m with (m - 1)^2 > 4(n - 4), i.e. m > 1 + 2*sqrt(n - 4)."""
    if n < 5:
        raise ValueError(f"main_threshold needs n >= 5, got {n}")
    return isqrt(4 * (n - 4)) + 2


def olson_threshold(p: int) -> int:
    """Least m with m^2 >= 4p - 4."""
    if p < 2:
        raise ValueError(f"olson_threshold needs p >= 2, got {p}")
    return ceil_sqrt(4 * p - 4)


def conjecture_params(n: int) -> tuple[int, int]:
    """(k, min_size): k = ceil(sqrt(n - 1)), min_size = ceil(sqrt(4n - 4))."""
    if n < 2:
        raise ValueError(f"conjecture_params needs n >= 2, got {n}")
    return ceil_sqrt(n - 1), ceil_sqrt(4 * n - 4)


def chowla_bound(n: int, sx: int, sy: int) -> int:
    if not (1 <= sx <= n and 1 <= sy <= n):
        raise ValueError(f"set sizes ({sx}, {sy}) outside [1, {n}]")
    return min(n, sx + sy - 1)


def mainlemma_bound_holds(n: int, a: int, s0_size: int) -> bool:
    """2|S^0| >= min(n + 2, 6 + a(a - 1)), the doubled form of the lower bound."""
    if a < 2:
        raise ValueError(f"the subset-sum lower bound needs |A| >= 2, got {a}")
    return 2 * s0_size >= min(n + 2, 6 + a * (a - 1))


def lamb_bound_holds(a: int, b: int, alpha: int) -> bool:
    """Strict bound alpha > a - a(a - 3)/b, multiplied through by b > 0."""
    if a < 3 or b < 1:
        raise ValueError(f"need a >= 3 and b >= 1, got a={a}, b={b}")
    return alpha * b > a * (b - a + 3)


def satisfies(kind: ThresholdKind, n: int, v: int) -> bool:
    """The defining integer inequality of each threshold kind."""
    kind = ThresholdKind(kind)
    if kind is ThresholdKind.MAIN_THEOREM:
        return v >= 1 and (v - 1) ** 2 > 4 * (n - 4)
    if kind is ThresholdKind.OLSON or kind is ThresholdKind.CONJECTURE_SIZE:
        return v >= 0 and v * v >= 4 * n - 4
    return v >= 0 and v * v >= n - 1


@dataclass(frozen=True)
class ThresholdResult:
    n: int
    kind: ThresholdKind
    value: int

    def to_json(self) -> dict:
        return {"n": self.n, "kind": self.kind.value, "value": self.value}


def threshold(n: int, kind: ThresholdKind | str) -> ThresholdResult:
    kind = ThresholdKind(kind)
    if kind is ThresholdKind.MAIN_THEOREM:
        value = main_threshold(n)
    elif kind is ThresholdKind.OLSON:
        value = olson_threshold(n)
    elif kind is ThresholdKind.CONJECTURE_SIZE:
        value = conjecture_params(n)[1]
    else:
        value = conjecture_params(n)[0]
    return ThresholdResult(n, kind, value)
