from itertools import combinations

import pytest

from poolgame.enumeration import (
    disjoint_pairs,
    lex_subsets,
    restricted_growth_strings,
    set_partitions,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


@pytest.mark.parametrize("n", range(9))
def test_rgs_count_is_bell(n):
    strings = list(restricted_growth_strings(n))
    assert len(strings) == BELL[n]
    assert strings == sorted(strings)
    assert len(set(strings)) == len(strings)
    for s in strings:
        for i, a in enumerate(s):
            assert a <= 1 + max(s[:i], default=-1)


@pytest.mark.parametrize("n", range(1, 7))
def test_set_partitions_are_partitions(n):
    items = list(range(10, 10 + n))
    seen = set()
    for blocks in set_partitions(items):
        flat = [x for b in blocks for x in b]
        assert sorted(flat) == items
        assert all(blocks)
        seen.add(frozenset(frozenset(b) for b in blocks))
    assert len(seen) == BELL[n]


def test_lex_subsets_order():
    subsets = list(lex_subsets([2, 0, 1]))
    assert subsets == [(0,), (0, 1), (0, 1, 2), (0, 2), (1,), (1, 2), (2,)]
    brute = sorted(c for k in range(1, 4) for c in combinations(range(3), k))
    assert subsets == brute


@pytest.mark.parametrize("n", range(1, 8))
def test_disjoint_pairs_count(n):
    pairs = list(disjoint_pairs(n))
    # ordered pairs of disjoint nonempty sets = 3^n - 2*2^n + 1; each unordered once
    assert len(pairs) == (3**n - 2 * 2**n + 1) // 2
    assert len(set(frozenset(p) for p in pairs)) == len(pairs)
    assert all(a & b == 0 and a and b for a, b in pairs)
