"""OA-biclusters, exact block density, dense mining, and rule mapping.

Densities are exact rationals throughout; float rendering is presentation
only, so the density-1 <=> formal-concept equivalence never depends on an
epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from lattice_tax import kernels
from lattice_tax.context import FormalContext, SetLike
from lattice_tax.kernels.bitops import indices_of, iter_bits, lectic_key, mask_of

Ratio = Union[int, float, str, Fraction]


@dataclass(frozen=True)
class OABicluster:
    """The block (m', g') generated by an incidence pair (g, m).

    ``num``/``den`` keep the incidence count and block area exactly as
    counted (12/12 is not reduced to 1/1).
    """

    context: FormalContext
    generator: tuple[int, int]  # (object index, attribute index), lectically least
    extent: frozenset[int]
    intent: frozenset[int]
    num: int
    den: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.num, self.den)

    def to_dict(self) -> dict:
        g, m = self.generator
        return {
            "generator": {"object": self.context.objects[g], "attribute": self.context.attributes[m]},
            "extent": self.context.object_names(self.extent),
            "intent": self.context.attribute_names(self.intent),
            "density": {"num": self.num, "den": self.den},
        }


@dataclass(frozen=True)
class GeneralBicluster:
    """A plain (rows, columns) block; emptiness is the caller's business."""

    rows: frozenset[int]
    columns: frozenset[int]


def as_ratio(value: Ratio) -> Fraction:
    """Normalize a density threshold to an exact Fraction in [0, 1].

    Floats are read through their decimal representation, so 0.8 means 4/5,
    not the nearest binary double.
    """
    if isinstance(value, Fraction):
        ratio = value
    elif isinstance(value, bool):
        raise TypeError("density threshold must be a number, not bool")
    elif isinstance(value, int):
        ratio = Fraction(value)
    elif isinstance(value, float):
        ratio = Fraction(str(value))
    elif isinstance(value, str):
        ratio = Fraction(value)
    else:
        raise TypeError(f"cannot interpret {value!r} as a density threshold")
    if not 0 <= ratio <= 1:
        raise ValueError(f"density threshold {ratio} outside [0, 1]")
    return ratio


def _block_count(ctx: FormalContext, rows_mask: int, cols_mask: int) -> int:
    return sum((ctx.row_masks[g] & cols_mask).bit_count() for g in iter_bits(rows_mask))


def density(ctx: FormalContext, rows: SetLike, columns: SetLike) -> Fraction:
    """|I intersected with rows x columns| / (|rows| * |columns|), exact."""
    r = ctx.object_set(rows)
    c = ctx.attribute_set(columns)
    if not r or not c:
        raise ValueError("density undefined on an empty block (denominator zero)")
    num = _block_count(ctx, mask_of(r), mask_of(c))
    return Fraction(num, len(r) * len(c))


def oa_bicluster(ctx: FormalContext, g: Union[int, str], m: Union[int, str]) -> OABicluster:
    """Build the OA-bicluster of the incidence pair (g, m); errors if (g, m) not in I."""
    gi = ctx.object_index(g) if isinstance(g, str) else g
    mi = ctx.attribute_index(m) if isinstance(m, str) else m
    if not 0 <= gi < ctx.n_objects:
        raise IndexError(f"object index {gi} out of range")
    if not 0 <= mi < ctx.n_attributes:
        raise IndexError(f"attribute index {mi} out of range")
    if not ctx.incidence(gi, mi):
        raise ValueError(
            f"({ctx.objects[gi]!r}, {ctx.attributes[mi]!r}) is not an incidence pair")
    extent_mask = ctx.column_masks[mi]  # m'
    intent_mask = ctx.row_masks[gi]  # g'
    num = _block_count(ctx, extent_mask, intent_mask)
    den = extent_mask.bit_count() * intent_mask.bit_count()
    return OABicluster(ctx, (gi, mi), frozenset(indices_of(extent_mask)),
                       frozenset(indices_of(intent_mask)), num, den)


def mine_dense(ctx: FormalContext, rho_min: Ratio) -> list[OABicluster]:
    """All distinct OA-biclusters with density >= rho_min.

    One pass over the incidence pairs; duplicates (same extent and intent)
    are collapsed onto the lectically least generating pair.  The result is
    ordered lectically by extent, then intent.
    """
    threshold = as_ratio(rho_min)
    found: dict[tuple[int, int], tuple[int, int]] = {}
    for g in range(ctx.n_objects):
        for m in iter_bits(ctx.row_masks[g]):
            key = (ctx.column_masks[m], ctx.row_masks[g])
            if key not in found:
                found[key] = (g, m)
    out = []
    for (extent_mask, intent_mask), (g, m) in found.items():
        num = _block_count(ctx, extent_mask, intent_mask)
        den = extent_mask.bit_count() * intent_mask.bit_count()
        if Fraction(num, den) >= threshold:
            out.append(OABicluster(ctx, (g, m), frozenset(indices_of(extent_mask)),
                                   frozenset(indices_of(intent_mask)), num, den))
    out.sort(key=lambda b: (lectic_key(mask_of(b.extent), ctx.n_objects),
                            lectic_key(mask_of(b.intent), ctx.n_attributes)))
    return out


def is_formal_concept(ctx: FormalContext, rows: SetLike, columns: SetLike) -> bool:
    """True iff rows' = columns and columns' = rows."""
    r = mask_of(ctx.object_set(rows))
    c = mask_of(ctx.attribute_set(columns))
    return (kernels.intent_of(ctx.row_masks, ctx.n_attributes, r) == c
            and kernels.extent_of(ctx.row_masks, c) == r)


def rule_to_bicluster(ctx: FormalContext, premise: SetLike, conclusion: SetLike,
                      variant: str = "union") -> GeneralBicluster:
    """Map a rule A -> B to the block (A' u B', A u B) or (A' n B', A u B)."""
    if variant not in ("union", "intersection"):
        raise ValueError(f"variant must be 'union' or 'intersection', not {variant!r}")
    a = mask_of(ctx.attribute_set(premise))
    b = mask_of(ctx.attribute_set(conclusion))
    ea = kernels.extent_of(ctx.row_masks, a)
    eb = kernels.extent_of(ctx.row_masks, b)
    rows_mask = ea | eb if variant == "union" else ea & eb
    return GeneralBicluster(frozenset(indices_of(rows_mask)), frozenset(indices_of(a | b)))
