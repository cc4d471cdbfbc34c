"""Bitmask helpers shared by both kernel backends and the higher-level modules.

A set of attribute (or object) indices is packed into a Python int: bit j is
set iff index j is in the set.  The lectic order used everywhere ties to the
input order of the attribute list, with the *first* attribute most
significant: A < B iff the smallest index where they differ belongs to B.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lectic_key(mask: int, width: int) -> int:
    """Integer key whose natural order is the lectic order over ``width`` slots.

    Index 0 (first in input order) gets the most significant bit.
    """
    key = 0
    for i in iter_bits(mask):
        key |= 1 << (width - 1 - i)
    return key


def lectic_cmp(a: int, b: int, width: int) -> int:
    ka, kb = lectic_key(a, width), lectic_key(b, width)
    return (ka > kb) - (ka < kb)


def close_under_implications(implications, x: int, *, proper: bool = False) -> int:
    """Least superset of ``x`` closed under firing every ``premise -> conclusion``.

    ``implications`` is a sequence of ``(premise_mask, conclusion_mask)`` pairs.
    With ``proper=True`` an implication only fires when its premise is a
    *proper* subset of the working set (needed when enumerating pseudo-closed
    sets, which must not absorb their own conclusion).
    """
    changed = True
    while changed:
        changed = False
        for premise, conclusion in implications:
            if premise & x == premise and conclusion | x != x:
                if proper and premise == x:
                    continue
                x |= conclusion
                changed = True
    return x
