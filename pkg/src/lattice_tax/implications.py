"""Attribute implications, their support, closure and the Duquenne-Guigues base."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence, Union

from lattice_tax import kernels
from lattice_tax.context import FormalContext, SetLike
from lattice_tax.kernels.bitops import close_under_implications, indices_of, mask_of


class Provenance(enum.Enum):
    COMPUTED_DG = "computed-DG"
    EXPLORATION_ACCEPTED = "exploration-accepted"
    USER_LOADED = "user-loaded"


@dataclass(frozen=True)
class Implication:
    """premise -> conclusion over attribute indices.

    The stored conclusion is canonical (disjoint from the premise, as the
    printed form); ``full_conclusion`` restores premise | conclusion.
    """

    premise: frozenset[int]
    conclusion: frozenset[int]
    support: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "premise", frozenset(self.premise))
        object.__setattr__(self, "conclusion", frozenset(self.conclusion) - self.premise)

    @property
    def full_conclusion(self) -> frozenset[int]:
        return self.premise | self.conclusion


@dataclass
class ImplicationBase:
    """An ordered list of implications over a fixed attribute universe."""

    attributes: tuple[str, ...]
    implications: tuple[Implication, ...]
    provenance: Provenance
    note: Optional[str] = None
    source_context_available: bool = True

    def __len__(self) -> int:
        return len(self.implications)

    def __iter__(self):
        return iter(self.implications)


def holds(ctx: FormalContext, premise: SetLike, conclusion: SetLike) -> bool:
    """True iff premise' is a subset of conclusion' (every object with A has B)."""
    a = mask_of(ctx.attribute_set(premise))
    b = mask_of(ctx.attribute_set(conclusion))
    ea = kernels.extent_of(ctx.row_masks, a)
    eb = kernels.extent_of(ctx.row_masks, b)
    return ea & eb == ea


def support(ctx: FormalContext, implication: Implication) -> int:
    """Number of objects carrying premise and conclusion: |(premise u conclusion)'|."""
    both = mask_of(implication.full_conclusion)
    return kernels.extent_of(ctx.row_masks, both).bit_count()


def with_supports(ctx: FormalContext, base: ImplicationBase) -> ImplicationBase:
    filled = tuple(replace(imp, support=support(ctx, imp)) for imp in base.implications)
    return replace(base, implications=filled)


def implication_closure(base: Union[ImplicationBase, Iterable[Implication]],
                        attributes: Iterable[int]) -> frozenset[int]:
    """Least superset of ``attributes`` closed under every implication of the base.

    Forward chaining to a fixpoint; the result does not depend on firing order.
    """
    imps = base.implications if isinstance(base, ImplicationBase) else tuple(base)
    masks = [(mask_of(i.premise), mask_of(i.conclusion)) for i in imps]
    return frozenset(indices_of(close_under_implications(masks, mask_of(attributes))))


def duquenne_guigues_base(ctx: FormalContext) -> ImplicationBase:
    """The canonical base: P -> P'' for exactly the pseudo-intents P, lectic order."""
    pairs = kernels.dg_base(ctx.row_masks, ctx.n_attributes)
    imps = tuple(
        Implication(frozenset(indices_of(p)), frozenset(indices_of(c & ~p)))
        for p, c in pairs
    )
    return ImplicationBase(ctx.attributes, imps, Provenance.COMPUTED_DG)


@dataclass(frozen=True)
class BaseReport:
    sound: bool
    complete: bool
    minimal: bool
    unsound: tuple[int, ...] = ()          # indices of non-holding implications
    incompleteness_witness: Optional[frozenset[int]] = None
    redundant: tuple[int, ...] = ()        # removable implication indices


def verify_base(ctx: FormalContext, base: ImplicationBase, *,
                max_attributes: int = 20) -> BaseReport:
    """Exhaustively check soundness, completeness, and minimality of a base.

    The completeness sweep closes every X under the base and compares with
    X''; cost 2^|M|, guarded by ``max_attributes``.  Minimality re-runs the
    sweep per removed implication (with the removed premise tried first,
    which is almost always an immediate witness).
    """
    if base.attributes != ctx.attributes:
        raise ValueError("implication base and context have different attribute universes")
    n = ctx.n_attributes
    if n > max_attributes:
        raise ValueError(f"completeness sweep over 2^{n} subsets exceeds "
                         f"max_attributes={max_attributes}")
    rows = ctx.row_masks
    masks = [(mask_of(i.premise), mask_of(i.full_conclusion)) for i in base.implications]

    unsound = tuple(
        i for i, (p, c) in enumerate(masks)
        if kernels.close_intent(rows, n, p) & c != c
    )

    def sweep(pairs, first: Optional[int] = None) -> Optional[int]:
        """Return a witness X with base-closure(X) != X'', or None."""
        candidates = range(1 << n)
        if first is not None:
            if close_under_implications(pairs, first) != kernels.close_intent(rows, n, first):
                return first
        for x in candidates:
            if close_under_implications(pairs, x) != kernels.close_intent(rows, n, x):
                return x
        return None

    witness = sweep(masks)
    redundant = []
    for i in range(len(masks)):
        reduced = masks[:i] + masks[i + 1:]
        if sweep(reduced, first=masks[i][0]) is None:
            redundant.append(i)

    return BaseReport(
        sound=not unsound,
        complete=witness is None,
        minimal=not redundant,
        unsound=unsound,
        incompleteness_witness=None if witness is None else frozenset(indices_of(witness)),
        redundant=tuple(redundant),
    )


# -- text and JSON forms -----------------------------------------------------

def render_implication(imp: Implication, attributes: Sequence[str]) -> str:
    """`{a, b} -> {c}  sup=n`; the conclusion is printed without the premise."""
    prem = ", ".join(attributes[i] for i in sorted(imp.premise))
    concl = ", ".join(attributes[i] for i in sorted(imp.conclusion))
    text = f"{{{prem}}} -> {{{concl}}}"
    if imp.support is not None:
        text += f"  sup={imp.support}"
    return text


_SUP_RE = re.compile(r"[,\s]*sup\s*=\s*(\d+)\s*$")
_BRACED_RE = re.compile(r"^\s*\{(.*)\}\s*$", re.DOTALL)


def _parse_side(text: str, attributes: Sequence[str]) -> frozenset[int]:
    m = _BRACED_RE.match(text)
    inner = m.group(1) if m else text
    index = {name: i for i, name in enumerate(attributes)}
    out = set()
    for part in inner.split(","):
        name = part.strip()
        if not name:
            continue
        if name not in index:
            raise ValueError(f"unknown attribute {name!r} in implication text")
        out.add(index[name])
    return frozenset(out)


def parse_implication(text: str, attributes: Sequence[str]) -> Implication:
    """Parse `{a, b} -> {c}  sup=n` (also accepts `→` and `sup= n`)."""
    arrow = "->" if "->" in text else "→"
    if arrow not in text:
        raise ValueError(f"no implication arrow in {text!r}")
    left, right = text.split(arrow, 1)
    support_val = None
    sup = _SUP_RE.search(right)
    if sup:
        support_val = int(sup.group(1))
        right = right[:sup.start()]
    return Implication(_parse_side(left, attributes), _parse_side(right, attributes),
                       support_val)


def implication_to_dict(imp: Implication, attributes: Sequence[str]) -> dict:
    return {
        "premise": [attributes[i] for i in sorted(imp.premise)],
        "conclusion": [attributes[i] for i in sorted(imp.conclusion)],
        "support": imp.support,
    }


def implication_from_dict(payload: dict, attributes: Sequence[str]) -> Implication:
    index = {name: i for i, name in enumerate(attributes)}
    try:
        premise = frozenset(index[a] for a in payload["premise"])
        conclusion = frozenset(index[a] for a in payload["conclusion"])
    except KeyError as exc:
        raise ValueError(f"unknown attribute {exc.args[0]!r} in implication payload") from None
    return Implication(premise, conclusion, payload.get("support"))
