"""Independent brute-force oracles.

Everything here works on plain Python sets, frozensets and explicit loops --
deliberately nothing shared with the package's bitmask kernels -- so that
expected values frozen into the tests come from a second, independent path.

A context is represented as ``(n_objs, n_attrs, inc)`` with ``inc`` a set of
``(g, m)`` pairs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from lattice_tax.context import FormalContext


def from_context(ctx: FormalContext) -> tuple[int, int, set[tuple[int, int]]]:
    inc = {(g, m)
           for g in range(ctx.n_objects)
           for m in range(ctx.n_attributes)
           if ctx.incidence(g, m)}
    return ctx.n_objects, ctx.n_attributes, inc


def to_context(n_objs: int, n_attrs: int, inc, name: str = "oracle") -> FormalContext:
    rows = ["".join("X" if (g, m) in inc else "." for m in range(n_attrs))
            for g in range(n_objs)]
    return FormalContext(name, [f"g{i}" for i in range(n_objs)],
                         [f"m{j}" for j in range(n_attrs)], rows)


def derive_objects(n_objs, n_attrs, inc, A) -> frozenset[int]:
    return frozenset(m for m in range(n_attrs) if all((g, m) in inc for g in A))


def derive_attributes(n_objs, n_attrs, inc, B) -> frozenset[int]:
    return frozenset(g for g in range(n_objs) if all((g, m) in inc for m in B))


def close_attributes(n_objs, n_attrs, inc, B) -> frozenset[int]:
    return derive_objects(n_objs, n_attrs, inc, derive_attributes(n_objs, n_attrs, inc, B))


def close_objects(n_objs, n_attrs, inc, A) -> frozenset[int]:
    return derive_attributes(n_objs, n_attrs, inc, derive_objects(n_objs, n_attrs, inc, A))


def all_subsets(n: int):
    universe = range(n)
    for r in range(n + 1):
        yield from (frozenset(c) for c in combinations(universe, r))


def concepts(n_objs, n_attrs, inc) -> set[tuple[frozenset[int], frozenset[int]]]:
    """All (extent, intent) pairs, by sweeping every attribute subset."""
    out = set()
    for B in all_subsets(n_attrs):
        if close_attributes(n_objs, n_attrs, inc, B) == B:
            out.add((derive_attributes(n_objs, n_attrs, inc, B), B))
    return out


def lectic_sorted(sets, n: int) -> list[frozenset[int]]:
    """Sort subsets lectically: the smallest index where two sets differ wins."""
    def key(s: frozenset[int]):
        return tuple(1 if j in s else 0 for j in range(n))

    return sorted(sets, key=key)


def pseudo_intents(n_objs, n_attrs, inc) -> list[frozenset[int]]:
    """By the recursive definition, visiting subsets in size order."""
    found: list[frozenset[int]] = []
    for P in all_subsets(n_attrs):
        if close_attributes(n_objs, n_attrs, inc, P) != P and all(
                close_attributes(n_objs, n_attrs, inc, Q) <= P
                for Q in found if Q < P):
            found.append(P)
    return found


def density(inc, rows, cols) -> Fraction:
    hits = sum(1 for g in rows for m in cols if (g, m) in inc)
    return Fraction(hits, len(rows) * len(cols))


def covers(concept_list) -> set[tuple[int, int]]:
    """Transitive reduction of extent inclusion over an indexed concept list."""
    n = len(concept_list)
    less = [[False] * n for _ in range(n)]
    for i, (ei, _) in enumerate(concept_list):
        for j, (ej, _) in enumerate(concept_list):
            less[i][j] = ei < ej
    out = set()
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                out.add((i, j))
    return out


def implication_holds(n_objs, n_attrs, inc, premise, conclusion) -> bool:
    return derive_attributes(n_objs, n_attrs, inc, premise) <= \
        derive_attributes(n_objs, n_attrs, inc, conclusion)


def random_context(rng: random.Random, max_objs: int, max_attrs: int,
                   density_p: float | None = None,
                   min_objs: int = 0, min_attrs: int = 0) -> FormalContext:
    n = rng.randint(min_objs, max_objs)
    m = rng.randint(min_attrs, max_attrs)
    p = density_p if density_p is not None else rng.uniform(0.1, 0.9)
    rows = ["".join("X" if rng.random() < p else "." for _ in range(m))
            for _ in range(n)]
    return FormalContext(f"rnd-{n}x{m}", [f"g{i}" for i in range(n)],
                         [f"m{j}" for j in range(m)], rows)


def random_subset(rng: random.Random, n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if rng.random() < 0.5)
