"""Residues and dense subsets of the cyclic group Z_n.

A :class:`ZnSet` stores its members as the bits of a Python integer: bit ``i``
is set exactly when residue ``i`` is a member (residue 0 is the least
significant bit).  Translation by ``x`` is a rotation of that bit vector, so
every kernel used downstream is a handful of shift/OR/ANDNOT/popcount
operations on machine-word arrays that CPython already implements in C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_MODULUS = 1 << 24


class ModulusMismatchError(ValueError):
    """Raised when two operands live in different groups Z_n."""


def check_modulus(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"modulus must be an int, got {type(n).__name__}")
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    if n > MAX_MODULUS:
        raise ValueError(f"modulus {n} exceeds the supported maximum 2^24")
    return n


def full_mask(n: int) -> int:
    return (1 << n) - 1


def rotate(bits: int, x: int, n: int) -> int:
    """Rotate an n-bit vector so that bit i moves to bit (i + x) mod n."""
    x %= n
    if x == 0:
        return bits
    return ((bits << x) | (bits >> (n - x))) & ((1 << n) - 1)


def _same_modulus(a: int, b: int) -> None:
    if a != b:
        raise ModulusMismatchError(f"modulus mismatch: {a} != {b}")


@dataclass(frozen=True)
class ZnSet:
    """Immutable subset of Z_n backed by an n-bit integer."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        check_modulus(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bit vector has members outside [0, {self.n})")

    @classmethod
    def from_iterable(cls, n: int, residues: Iterable[int]) -> ZnSet:
        check_modulus(n)
        bits = 0
        for r in residues:
            if not 0 <= r < n:
                raise ValueError(f"residue {r} outside [0, {n})")
            bits |= 1 << r
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> ZnSet:
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> ZnSet:
        return cls(n, full_mask(check_modulus(n)))

    @classmethod
    def interval(cls, n: int, start: int, length: int) -> ZnSet:
        """The arithmetic progression {start, start+1, ..., start+length-1} mod n."""
        if not 0 <= length <= n:
            raise ValueError(f"interval length {length} outside [0, {n}]")
        return cls(n, rotate((1 << length) - 1, start, n))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, r: object) -> bool:
        return isinstance(r, int) and 0 <= r < self.n and bool(self.bits >> r & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def is_full(self) -> bool:
        return self.bits == full_mask(self.n)

    def __or__(self, other: ZnSet) -> ZnSet:
        _same_modulus(self.n, other.n)
        return ZnSet(self.n, self.bits | other.bits)

    def __and__(self, other: ZnSet) -> ZnSet:
        _same_modulus(self.n, other.n)
        return ZnSet(self.n, self.bits & other.bits)

    def __sub__(self, other: ZnSet) -> ZnSet:
        _same_modulus(self.n, other.n)
        return ZnSet(self.n, self.bits & ~other.bits)

    def complement(self) -> ZnSet:
        return ZnSet(self.n, full_mask(self.n) & ~self.bits)

    def issubset(self, other: ZnSet) -> bool:
        _same_modulus(self.n, other.n)
        return self.bits & ~other.bits == 0

    def to_literal(self) -> str:
        return format_literal(self)

    def to_json(self) -> dict:
        return {"n": self.n, "elements": list(self)}

    @classmethod
    def from_json(cls, obj: dict) -> ZnSet:
        return cls.from_iterable(obj["n"], obj["elements"])

    def __repr__(self) -> str:
        return f"ZnSet(n={self.n}, {{{self.to_literal()}}})"


@dataclass(frozen=True)
class ResidueSet:
    """An explicit set of distinct residues mod n, kept sorted ascending.

    Duplicates are rejected rather than collapsed: a repeated element would
    silently turn the set into a multiset and change every restricted sum.
    """

    n: int
    elements: tuple[int, ...]

    def __init__(self, n: int, elements: Iterable[int] = ()) -> None:
        check_modulus(n)
        elems = sorted(int(e) for e in elements)
        for e in elems:
            if not 0 <= e < n:
                raise ValueError(f"residue {e} outside [0, {n})")
        for a, b in zip(elems, elems[1:]):
            if a == b:
                raise ValueError(f"duplicate residue {a} in set literal")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "elements", tuple(elems))

    @classmethod
    def parse(cls, n: int, literal: str) -> ResidueSet:
        return cls(n, parse_literal(literal))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, r: object) -> bool:
        return r in self.elements

    @property
    def is_units(self) -> bool:
        return all(math.gcd(e, self.n) == 1 for e in self.elements)

    @property
    def is_antisymmetric(self) -> bool:
        members = set(self.elements)
        return all((-e) % self.n not in members for e in self.elements)

    def to_znset(self) -> ZnSet:
        return ZnSet.from_iterable(self.n, self.elements)

    def negated(self) -> ResidueSet:
        return ResidueSet(self.n, ((-e) % self.n for e in self.elements))

    def without(self, x: int) -> ResidueSet:
        if x not in self.elements:
            raise ValueError(f"{x} is not a member")
        return ResidueSet(self.n, (e for e in self.elements if e != x))

    def with_element(self, x: int) -> ResidueSet:
        return ResidueSet(self.n, self.elements + (x,))

    def to_literal(self) -> str:
        return format_literal(self.elements)

    def __repr__(self) -> str:
        return f"ResidueSet(n={self.n}, {{{self.to_literal()}}})"


def parse_literal(text: str) -> list[int]:
    """Parse ``"x1,x2,..."`` (strictly ascending, no spaces); the empty
    string is the empty set."""
    if not text:
        return []
    out: list[int] = []
    for tok in text.split(","):
        if not (tok.isascii() and tok.isdigit()):
            raise ValueError(f"malformed set literal {text!r}")
        v = int(tok)
        if out and v <= out[-1]:
            raise ValueError(f"set literal {text!r} is not strictly ascending")
        out.append(v)
    return out


def format_literal(elements: Iterable[int]) -> str:
    return ",".join(str(e) for e in sorted(elements))


def units(n: int) -> ResidueSet:
    check_modulus(n)
    return ResidueSet(n, (x for x in range(1, n) if math.gcd(x, n) == 1))


def shift(s: ZnSet, x: int) -> ZnSet:
    """The translate s + x."""
    return ZnSet(s.n, rotate(s.bits, x, s.n))


def negate(s: ZnSet) -> ZnSet:
    # -s maps 0 to 0 and i to n - i: reverse bits 1..n-1, keep bit 0
    n = s.n
    body = s.bits >> 1
    rev = int(format(body, f"0{n - 1}b")[::-1], 2) if body else 0
    return ZnSet(n, (rev << 1) | (s.bits & 1))


def subgroup_generated(a: ResidueSet) -> ZnSet:
    """The subgroup <A> = dZ_n with d = gcd(n, elements of A)."""
    if not len(a):
        raise ValueError("subgroup_generated needs a nonempty set")
    d = a.n
    for e in a:
        d = math.gcd(d, e)
    return ZnSet.from_iterable(a.n, range(0, a.n, d))
