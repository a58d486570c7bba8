from __future__ import annotations

import math
import random
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import complete_bf, escape_bf, k_fold_bf, subset_sums_bf, sumset_bf
from zncomplete.sums import (
    escape_count,
    escape_profile,
    is_complete,
    k_fold_layers,
    k_fold_sums,
    subset_sums,
    sumset,
)
from zncomplete.zn import ResidueSet, ZnSet, units


def Z(n, elems):
    return ZnSet.from_iterable(n, elems)


@st.composite
def residue_sets(draw, max_n=40, max_size=12):
    n = draw(st.integers(2, max_n))
    elems = draw(st.sets(st.integers(0, n - 1), max_size=min(max_size, n)))
    return ResidueSet(n, elems)


@pytest.mark.parametrize(
    "n,x,y,expected",
    [(5, {0, 1}, {0, 2}, {0, 1, 2, 3}), (6, {0}, {1, 4, 5}, {1, 4, 5}), (4, {1, 2}, {3}, {0, 1})],
)
def test_sumset_examples(n, x, y, expected):
    assert set(sumset(Z(n, x), Z(n, y))) == expected


def test_sumset_with_empty():
    assert len(sumset(Z(5, []), Z(5, [1, 2]))) == 0


@pytest.mark.parametrize(
    "n,a,s,s0",
    [
        (3, (1, 2), {0, 1, 2}, {0, 1, 2}),
        (5, (1,), {1}, {0, 1}),
        (4, (1, 3), {0, 1, 3}, {0, 1, 3}),
        (7, (), set(), {0}),
    ],
)
def test_subset_sums_examples(n, a, s, s0):
    pair = subset_sums(ResidueSet(n, a))
    assert set(pair.s) == s and set(pair.s0) == s0


@pytest.mark.parametrize(
    "n,a,k,expected",
    [(7, (1, 2, 3), 2, {3, 4, 5}), (7, (1, 2, 3), 0, {0}), (7, (1, 2, 3), 3, {6}), (5, (), 0, {0})],
)
def test_k_fold_examples(n, a, k, expected):
    assert set(k_fold_sums(ResidueSet(n, a), k)) == expected


def test_k_fold_rejects_k_out_of_range():
    with pytest.raises(ValueError):
        k_fold_sums(ResidueSet(7, (1, 2)), 3)
    with pytest.raises(ValueError):
        k_fold_sums(ResidueSet(7, (1, 2)), -1)


@pytest.mark.parametrize(
    "n,b,x,expected", [(11, range(5), 3, 3), (9, {1, 4}, 0, 0), (5, {0, 1}, 2, 2)]
)
def test_escape_examples(n, b, x, expected):
    assert escape_count(Z(n, b), x) == expected


@pytest.mark.parametrize(
    "n,a,expected", [(5, (1, 2, 3, 4), True), (4, (1, 3), False), (8, (2, 4, 6), True)]
)
def test_is_complete_examples(n, a, expected):
    assert is_complete(ResidueSet(n, a)) is expected


@settings(max_examples=300)
@given(residue_sets())
def test_closure_pair_invariants(a):
    pair = subset_sums(a)
    assert 0 in pair.s0
    assert pair.s0 == pair.s | Z(a.n, [0])
    assert len(pair.s0) - len(pair.s) in (0, 1)
    assert all(x in pair.s for x in a.elements)
    s, s0 = subset_sums_bf(a.n, a.elements)
    assert set(pair.s) == s and set(pair.s0) == s0


@settings(max_examples=300)
@given(residue_sets())
def test_decomposition_and_order_invariance(a):
    n = a.n
    pieces = [Z(n, {0, x}) for x in a.elements]
    forward = reduce(sumset, pieces, Z(n, [0]))
    backward = reduce(sumset, reversed(pieces), Z(n, [0]))
    assert forward == backward == subset_sums(a).s0


@settings(max_examples=300)
@given(residue_sets())
def test_layer_consistency(a):
    layers = k_fold_layers(a, len(a))
    assert len(layers) == len(a) + 1
    assert layers[0] == Z(a.n, [0])
    union = reduce(lambda u, v: u | v, layers[1:], Z(a.n, []))
    assert union == subset_sums(a).s
    for k, row in enumerate(layers):
        assert row == k_fold_sums(a, k)
        assert set(row) == k_fold_bf(a.n, a.elements, k)


@settings(max_examples=300)
@given(residue_sets(), st.data())
def test_chowla_inequality(x_set, data):
    n = x_set.n
    if not len(x_set):
        return
    us = list(units(n).elements)
    y = {0} | set(data.draw(st.lists(st.sampled_from(us), max_size=6))) if us else {0}
    got = sumset(x_set.to_znset(), Z(n, y))
    assert len(got) >= min(n, len(x_set) + len(y) - 1)
    assert set(got) == sumset_bf(n, x_set.elements, y)


@settings(max_examples=300)
@given(residue_sets(max_size=40), st.integers(0, 200), st.integers(0, 200))
def test_escape_identities(bset, x, y):
    n = bset.n
    b = bset.to_znset()
    x, y = x % n, y % n
    assert escape_count(b, x) == escape_bf(n, b, x)
    assert escape_count(b, x) == escape_count(b, -x % n)
    assert escape_count(b, (x + y) % n) <= escape_count(b, x) + escape_count(b, y)
    prof = escape_profile(b)
    assert prof[0] == 0 and len(prof) == n


@settings(max_examples=200)
@given(residue_sets(max_n=14, max_size=14), st.data())
def test_escape_sum_lower_bound(bset, data):
    n = bset.n
    b = bset.to_znset()
    if not len(b):
        return
    c = data.draw(st.sets(st.integers(1, n - 1)))
    assert sum(escape_count(b, x) for x in c) >= len(b) * (len(c) - len(b) + 1)


@settings(max_examples=200)
@given(residue_sets(max_n=30, max_size=10), st.data())
def test_completeness_monotone(a, data):
    n = a.n
    if not len(a) or not is_complete(a):
        return
    gen_step = math.gcd(n, *a.elements)
    extra = data.draw(st.sets(st.sampled_from(range(0, n, gen_step)), max_size=4))
    bigger = ResidueSet(n, set(a.elements) | extra)
    assert is_complete(bigger)


@pytest.mark.parametrize("n", range(2, 11))
def test_is_complete_matches_oracle_small(n):
    rng = random.Random(n)
    for _ in range(60):
        a = rng.sample(range(n), rng.randint(1, n))
        assert is_complete(ResidueSet(n, a)) == complete_bf(n, a)


def test_is_complete_rejects_empty():
    with pytest.raises(ValueError):
        is_complete(ResidueSet(5, ()))
