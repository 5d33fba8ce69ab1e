"""Subset, disjoint-pair and set-partition enumeration over owner indices.

Subsets are handled as bitmasks over a member list; ``members[b]`` is the
owner behind bit ``b``.
"""

from __future__ import annotations

from typing import Iterator, Sequence


def mask_to_set(mask: int, members: Sequence[int]) -> frozenset[int]:
    return frozenset(members[b] for b in range(len(members)) if mask >> b & 1)


def mask_to_tuple(mask: int, members: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(members[b] for b in range(len(members)) if mask >> b & 1))


def submasks(mask: int) -> Iterator[int]:
    """Nonempty submasks of ``mask`` in decreasing order."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def disjoint_pairs(n: int) -> Iterator[tuple[int, int]]:
    """Unordered pairs of disjoint nonempty masks over ``n`` bits.

    Each pair is yielded once, with the lowest set bit of the union in the
    first mask.
    """
    full = (1 << n) - 1
    for first in range(1, full + 1):
        low = first & -first
        rest = full & ~first & ~(low - 1)
        for second in submasks(rest):
            yield first, second


def lex_subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Nonempty subsets of sorted ``items`` in lexicographic order of sorted tuples."""
    items = sorted(items)

    def extend(prefix: tuple[int, ...], start: int) -> Iterator[tuple[int, ...]]:
        for j in range(start, len(items)):
            chosen = prefix + (items[j],)
            yield chosen
            yield from extend(chosen, j + 1)

    yield from extend((), 0)


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``n`` in lexicographic order.

    ``a[0] == 0`` and ``a[i] <= 1 + max(a[:i])``. Each string encodes one set
    partition of ``n`` labelled items; their count is the Bell number B(n).
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[:i])
    while True:
        yield tuple(a)
        # rightmost position that can still be incremented
        j = n - 1
        while j > 0 and a[j] == b[j]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        for i in range(j + 1, n):
            a[i] = 0
            b[i] = max(b[j], a[j] + 1)


def set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Set partitions of ``items`` in canonical restricted-growth order."""
    items = list(items)
    for rgs in restricted_growth_strings(len(items)):
        blocks: list[list[int]] = [[] for _ in range(max(rgs, default=-1) + 1)]
        for item, label in zip(items, rgs):
            blocks[label].append(item)
        yield [tuple(block) for block in blocks]
