"""Formal contexts: the Boolean object/attribute incidence model.

A context is immutable after construction; every operation here is a pure
read, so contexts can be shared freely across threads.  Attribute and object
sets are exchanged as ``frozenset`` of indices into a specific context;
name-based lookups are a convenience layer that resolves to indices before
any computation.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from lattice_tax import kernels
from lattice_tax.kernels.bitops import indices_of, mask_of

SetLike = Iterable[Union[int, str]]


class ContextError(ValueError):
    """Base class for context construction and composition failures."""


class ContextParseError(ContextError):
    """Raised on malformed .cxt or CSV input; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ApposeError(ContextError):
    pass


@dataclass(frozen=True)
class ParseReport:
    """Tolerated deviations found while parsing; empty iff input was strictly well-formed."""

    warnings: tuple[tuple[int, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.warnings


def _check_names(kind: str, names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    seen: dict[str, int] = {}
    for i, n in enumerate(names):
        if not isinstance(n, str):
            raise ContextError(f"{kind} name {n!r} is not a string")
        if "\n" in n or "\r" in n:
            raise ContextError(f"{kind} name {n!r} contains a newline")
        if n in seen:
            raise ContextError(f"duplicate {kind} name {n!r} (positions {seen[n]} and {i})")
        seen[n] = i
    return names


class FormalContext:
    """A named Boolean object/attribute table.

    ``incidence`` rows may be given as strings over ``X``/``.`` or as
    sequences of booleans; internally each row is a bitmask (bit j =
    attribute j).  Row and column order is significant and preserved.
    """

    __slots__ = ("name", "objects", "attributes", "_rows", "_cols", "_obj_idx", "_attr_idx")

    def __init__(self, name: str, objects: Sequence[str], attributes: Sequence[str],
                 incidence: Sequence[Union[str, Sequence[bool]]]):
        if "\n" in name or "\r" in name:
            raise ContextError("context name contains a newline")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "objects", _check_names("object", objects))
        object.__setattr__(self, "attributes", _check_names("attribute", attributes))
        n, m = len(self.objects), len(self.attributes)
        if len(incidence) != n:
            raise ContextError(f"incidence has {len(incidence)} rows, expected {n}")
        rows = []
        for g, row in enumerate(incidence):
            if isinstance(row, int):
                if row < 0 or row >> m:
                    raise ContextError(f"row {g}: mask out of range for {m} attributes")
                rows.append(row)
                continue
            if len(row) != m:
                raise ContextError(f"row {g} has {len(row)} cells, expected {m}")
            if isinstance(row, str):
                bad = set(row) - {"X", "."}
                if bad:
                    raise ContextError(f"row {g}: illegal cell character {sorted(bad)[0]!r}")
                rows.append(mask_of(j for j, ch in enumerate(row) if ch == "X"))
            else:
                rows.append(mask_of(j for j, v in enumerate(row) if v))
        object.__setattr__(self, "_rows", tuple(rows))
        object.__setattr__(self, "_cols", None)
        object.__setattr__(self, "_obj_idx", {o: i for i, o in enumerate(self.objects)})
        object.__setattr__(self, "_attr_idx", {a: i for i, a in enumerate(self.attributes)})

    def __setattr__(self, *_):
        raise AttributeError("FormalContext is immutable")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def row_masks(self) -> tuple[int, ...]:
        return self._rows

    @property
    def column_masks(self) -> tuple[int, ...]:
        """Per-attribute object masks (bit g = object g); computed once, cached."""
        if self._cols is None:
            cols = [0] * self.n_attributes
            for g, r in enumerate(self._rows):
                for j in indices_of(r):
                    cols[j] |= 1 << g
            object.__setattr__(self, "_cols", tuple(cols))
        return self._cols

    def incidence(self, g: int, m: int) -> bool:
        return bool(self._rows[g] >> m & 1)

    def row_string(self, g: int) -> str:
        r = self._rows[g]
        return "".join("X" if r >> j & 1 else "." for j in range(self.n_attributes))

    def object_index(self, name: str) -> int:
        try:
            return self._obj_idx[name]
        except KeyError:
            raise KeyError(f"unknown object {name!r} in context {self.name!r}") from None

    def attribute_index(self, name: str) -> int:
        try:
            return self._attr_idx[name]
        except KeyError:
            raise KeyError(f"unknown attribute {name!r} in context {self.name!r}") from None

    def attribute_set(self, items: SetLike) -> frozenset[int]:
        """Resolve names/indices to a validated attribute index set."""
        out = set()
        for it in items:
            if isinstance(it, str):
                out.add(self.attribute_index(it))
            else:
                if not 0 <= it < self.n_attributes:
                    raise IndexError(f"attribute index {it} out of range for |M|={self.n_attributes}")
                out.add(it)
        return frozenset(out)

    def object_set(self, items: SetLike) -> frozenset[int]:
        out = set()
        for it in items:
            if isinstance(it, str):
                out.add(self.object_index(it))
            else:
                if not 0 <= it < self.n_objects:
                    raise IndexError(f"object index {it} out of range for |G|={self.n_objects}")
                out.add(it)
        return frozenset(out)

    def attribute_names(self, indices: Iterable[int]) -> list[str]:
        return [self.attributes[i] for i in sorted(indices)]

    def object_names(self, indices: Iterable[int]) -> list[str]:
        return [self.objects[i] for i in sorted(indices)]

    def incidence_count(self) -> int:
        return sum(r.bit_count() for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.name == other.name and self.objects == other.objects
                and self.attributes == other.attributes and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.name, self.objects, self.attributes, self._rows))

    def __repr__(self) -> str:
        return f"FormalContext({self.name!r}, {self.n_objects}x{self.n_attributes})"


# -- derivation and closure ------------------------------------------------

def derive_objects(ctx: FormalContext, objects: SetLike) -> frozenset[int]:
    """A' : attributes shared by all objects of A (all attributes for A = empty)."""
    a = mask_of(ctx.object_set(objects))
    return frozenset(indices_of(kernels.intent_of(ctx.row_masks, ctx.n_attributes, a)))


def derive_attributes(ctx: FormalContext, attributes: SetLike) -> frozenset[int]:
    """B' : objects having all attributes of B (all objects for B = empty)."""
    b = mask_of(ctx.attribute_set(attributes))
    return frozenset(indices_of(kernels.extent_of(ctx.row_masks, b)))


def closure_attributes(ctx: FormalContext, attributes: SetLike) -> frozenset[int]:
    """B'' on the attribute side."""
    b = mask_of(ctx.attribute_set(attributes))
    return frozenset(indices_of(kernels.close_intent(ctx.row_masks, ctx.n_attributes, b)))


def closure_objects(ctx: FormalContext, objects: SetLike) -> frozenset[int]:
    """A'' on the object side."""
    a = mask_of(ctx.object_set(objects))
    return frozenset(indices_of(kernels.close_extent(ctx.row_masks, ctx.n_attributes, a)))


def transpose(ctx: FormalContext) -> FormalContext:
    """Swap objects and attributes; the name is kept so transpose is an involution."""
    return FormalContext(ctx.name, ctx.attributes, ctx.objects, list(ctx.column_masks))


def appose(ctx1: FormalContext, ctx2: FormalContext) -> FormalContext:
    """Horizontal merge over an identical ordered object list.

    Attributes are namespaced ``<context name>:<attribute>`` to keep the
    merge collision-safe.  Merging over shared attributes (subposition) is
    ``transpose(appose(transpose(a), transpose(b)))``.
    """
    if ctx1.objects != ctx2.objects:
        diff = sorted(set(ctx1.objects) ^ set(ctx2.objects))
        if diff:
            raise ApposeError(f"object lists differ; symmetric difference: {diff}")
        raise ApposeError("object lists contain the same names in different order")
    attrs = [f"{ctx1.name}:{a}" for a in ctx1.attributes] + [f"{ctx2.name}:{a}" for a in ctx2.attributes]
    seen = set()
    for a in attrs:
        if a in seen:
            raise ApposeError(f"attribute name collision after namespacing: {a!r}")
        seen.add(a)
    n1 = ctx1.n_attributes
    rows = [r1 | (r2 << n1) for r1, r2 in zip(ctx1.row_masks, ctx2.row_masks)]
    return FormalContext(f"{ctx1.name}+{ctx2.name}", ctx1.objects, attrs, rows)


# -- Burmeister .cxt format --------------------------------------------------

def parse_cxt(text: str) -> tuple[FormalContext, ParseReport]:
    """Parse Burmeister format.

    Canonical layout: ``B`` / name / |G| / |M| / blank / object names /
    attribute names / incidence rows over ``X`` and ``.``.  Lowercase ``x``
    cells, trailing whitespace on structural and row lines, CR line endings
    and trailing blank lines are tolerated with a warning; anything else
    malformed is an error.
    """
    warnings: list[tuple[int, str]] = []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    else:
        warnings.append((len(lines), "missing trailing newline"))

    def structural(idx: int, what: str) -> str:
        if idx >= len(lines):
            raise ContextParseError(len(lines) + 1, f"unexpected end of input, expected {what}")
        raw = lines[idx]
        line = raw.rstrip()
        if line != raw:
            warnings.append((idx + 1, f"trailing whitespace on {what} line"))
        return line

    def name_line(idx: int, what: str) -> str:
        if idx >= len(lines):
            raise ContextParseError(len(lines) + 1, f"unexpected end of input, expected {what}")
        raw = lines[idx]
        if raw.endswith("\r"):
            warnings.append((idx + 1, "carriage-return line ending"))
            raw = raw[:-1]
        return raw

    if structural(0, "format marker") != "B":
        raise ContextParseError(1, f"expected Burmeister marker 'B', got {lines[0]!r}")
    name = name_line(1, "context name")
    counts = []
    for idx, what in ((2, "object count"), (3, "attribute count")):
        val = structural(idx, what)
        if not val.isdigit():
            raise ContextParseError(idx + 1, f"expected decimal {what}, got {val!r}")
        counts.append(int(val))
    n_objs, n_attrs = counts
    if structural(4, "separator") != "":
        raise ContextParseError(5, "expected blank separator line")

    at = 5
    objects = [name_line(at + i, "object name") for i in range(n_objs)]
    at += n_objs
    attributes = [name_line(at + i, "attribute name") for i in range(n_attrs)]
    at += n_attrs

    rows = []
    for g in range(n_objs):
        raw = structural(at + g, f"incidence row {g + 1}")
        if "x" in raw:
            warnings.append((at + g + 1, "lowercase 'x' treated as 'X'"))
            raw = raw.replace("x", "X")
        if len(raw) != n_attrs:
            raise ContextParseError(
                at + g + 1, f"incidence row has {len(raw)} cells, expected {n_attrs}")
        for j, ch in enumerate(raw):
            if ch not in "X.":
                raise ContextParseError(at + g + 1, f"illegal cell character {ch!r} at column {j + 1}")
        rows.append(raw)
    at += n_objs
    for extra in range(at, len(lines)):
        if lines[extra].strip():
            raise ContextParseError(extra + 1, f"unexpected content after incidence rows: {lines[extra]!r}")
        warnings.append((extra + 1, "trailing blank line ignored"))

    try:
        ctx = FormalContext(name, objects, attributes, rows)
    except ContextError as exc:
        raise ContextParseError(1, str(exc)) from None
    return ctx, ParseReport(tuple(warnings))


def serialize_cxt(ctx: FormalContext) -> str:
    """Canonical, bit-exact Burmeister serialization (LF endings, trailing newline)."""
    parts = ["B", ctx.name, str(ctx.n_objects), str(ctx.n_attributes), ""]
    parts.extend(ctx.objects)
    parts.extend(ctx.attributes)
    parts.extend(ctx.row_string(g) for g in range(ctx.n_objects))
    return "\n".join(parts) + "\n"


# -- CSV format --------------------------------------------------------------

_CSV_TRUE = {"1", "X", "x"}
_CSV_FALSE = {"0", ".", ""}


def parse_csv(text: str, header_mode: str = "names") -> tuple[FormalContext, ParseReport]:
    """Parse a CSV incidence table.

    The first column holds object names.  With ``header_mode='names'`` the
    first row is a header: its first cell is the context name, the remaining
    cells are attribute names.  With ``'none'`` every row is data and
    attributes are auto-named ``m1..mM``.  Cells: 1/X/x are incident,
    0/./empty are not; anything else is an error.
    """
    if header_mode not in ("names", "none"):
        raise ValueError(f"header_mode must be 'names' or 'none', not {header_mode!r}")
    warnings: list[tuple[int, str]] = []
    records: list[tuple[int, list[str]]] = []
    for lineno, rec in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not rec:
            warnings.append((lineno, "blank line ignored"))
            continue
        records.append((lineno, rec))
    if not records:
        raise ContextParseError(1, "no CSV content")

    if header_mode == "names":
        header_line, header = records[0]
        name = header[0]
        attributes = header[1:]
        data = records[1:]
    else:
        name = ""
        width = len(records[0][1]) - 1
        attributes = [f"m{j + 1}" for j in range(width)]
        data = records

    objects: list[str] = []
    rows: list[list[bool]] = []
    for lineno, rec in data:
        if len(rec) != len(attributes) + 1:
            raise ContextParseError(
                lineno, f"row has {len(rec)} cells, expected {len(attributes) + 1}")
        objects.append(rec[0])
        row = []
        for j, cell in enumerate(rec[1:], start=2):
            stripped = cell.strip()
            if stripped != cell:
                warnings.append((lineno, f"whitespace-padded cell at column {j}"))
            if stripped in _CSV_TRUE:
                row.append(True)
            elif stripped in _CSV_FALSE:
                row.append(False)
            else:
                raise ContextParseError(lineno, f"illegal cell {cell!r} at column {j}")
        rows.append(row)

    try:
        ctx = FormalContext(name, objects, attributes, rows)
    except ContextError as exc:
        raise ContextParseError(1, str(exc)) from None
    return ctx, ParseReport(tuple(warnings))


def serialize_csv(ctx: FormalContext) -> str:
    buf = io.StringIO()
    # QUOTE_ALL keeps degenerate headers (empty name, no attributes) parseable
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_ALL)
    writer.writerow([ctx.name, *ctx.attributes])
    for g, obj in enumerate(ctx.objects):
        r = ctx.row_masks[g]
        writer.writerow([obj, *("1" if r >> j & 1 else "0" for j in range(ctx.n_attributes))])
    return buf.getvalue()
