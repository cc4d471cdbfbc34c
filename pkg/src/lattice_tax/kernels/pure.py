"""Pure-Python kernel backend.

The hot loops of the workbench live here (and, compiled, in ``_fast``):
derivation/closure of bitmask sets, lectic enumeration of closed intents,
cover (upper-neighbour) computation, and pseudo-intent enumeration for the
implication base.  A context enters the kernel as ``rows``: one int bitmask
per object, bit j set iff the object has attribute j.

Both backends expose the same functions with identical semantics; parity is
enforced by tests.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from lattice_tax.kernels.bitops import close_under_implications, iter_bits

PROGRESS_EVERY = 10_000


def extent_of(rows: Sequence[int], b: int) -> int:
    """Object mask of B' = objects whose row contains every attribute of b."""
    e = 0
    bit = 1
    for r in rows:
        if r & b == b:
            e |= bit
        bit <<= 1
    return e


def intent_of(rows: Sequence[int], n_attrs: int, a: int) -> int:
    """Attribute mask of A' = attributes shared by all objects of a (all, if a empty)."""
    m = (1 << n_attrs) - 1
    for g in iter_bits(a):
        m &= rows[g]
    return m


def close_intent(rows: Sequence[int], n_attrs: int, b: int) -> int:
    """B'' in one sweep: AND of all rows that contain b."""
    m = (1 << n_attrs) - 1
    for r in rows:
        if r & b == b:
            m &= r
    return m


def close_extent(rows: Sequence[int], n_attrs: int, a: int) -> int:
    """A'' as an object mask."""
    return extent_of(rows, intent_of(rows, n_attrs, a))


def closed_intents(
    rows: Sequence[int],
    n_attrs: int,
    cap: Optional[int] = None,
    progress: Optional[Callable[[int], None]] = None,
) -> tuple[list[int], bool]:
    """All closed attribute sets in strictly increasing lectic order.

    Returns ``(intents, done)``; ``done`` is False when ``cap`` intents were
    produced with more remaining (the last list element is the resume point).
    ``progress`` is invoked with the running closure count every
    ``PROGRESS_EVERY`` closures.
    """
    full = (1 << n_attrs) - 1
    a = close_intent(rows, n_attrs, 0)
    out = [a]
    closures = 1
    while a != full:
        if cap is not None and len(out) >= cap:
            return out, False
        for i in range(n_attrs - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                continue
            prefix = bit - 1
            b = close_intent(rows, n_attrs, (a & prefix) | bit)
            closures += 1
            if progress is not None and closures % PROGRESS_EVERY == 0:
                progress(closures)
            if b & prefix == a & prefix:
                a = b
                break
        out.append(a)
    return out, True


def cover_edges(extents: Sequence[int], rows: Sequence[int], n_attrs: int) -> list[tuple[int, int]]:
    """Covering pairs (child index, parent index) of the concept order.

    ``extents`` are the concepts' object masks, in the same order the lattice
    stores them.  Upper neighbours of extent A are found by closing A+{g} for
    each outside object g; a candidate E is a neighbour iff every g in E\\A
    regenerates E (Lindig's counting criterion).
    """
    n_objs = len(rows)
    index = {e: k for k, e in enumerate(extents)}
    edges: list[tuple[int, int]] = []
    for k, a in enumerate(extents):
        counts: dict[int, int] = {}
        g_bit = 1
        for _ in range(n_objs):
            if not a & g_bit:
                e = close_extent(rows, n_attrs, a | g_bit)
                counts[e] = counts.get(e, 0) + 1
            g_bit <<= 1
        for e, c in counts.items():
            if c == (e & ~a).bit_count():
                edges.append((k, index[e]))
    return edges


def dg_base(rows: Sequence[int], n_attrs: int) -> list[tuple[int, int]]:
    """Pseudo-intents with their closures, in lectic premise order.

    Ganter's enumeration: walk, in lectic order, the sets closed under
    proper-premise firing of the implications found so far; every visited set
    that is not context-closed is a pseudo-intent and contributes
    ``premise -> premise''``.
    """
    full = (1 << n_attrs) - 1
    base: list[tuple[int, int]] = []
    a = 0
    while True:
        c = close_intent(rows, n_attrs, a)
        if c != a:
            base.append((a, c))
        if a == full:
            return base
        for i in range(n_attrs - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                continue
            prefix = bit - 1
            b = close_under_implications(base, (a & prefix) | bit, proper=True)
            if b & prefix == a & prefix:
                a = b
                break
