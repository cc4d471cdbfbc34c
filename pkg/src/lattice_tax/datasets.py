"""Bundled datasets and fixtures.

Two contexts ship with the workbench: the seven-method taxonomy of
FCA-related biclustering techniques (full incidence table) and an
attribute-only template of ten algorithmic traits used to classify
concept-lattice construction algorithms.

A third fixture is a list of ten published implications from a 47-method
biclustering survey taxonomy.  Its incidence table is not public, so the
implications are parsing/rendering fixtures only: supports are shipped as
published and cannot be recomputed or verified here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from lattice_tax.context import FormalContext, parse_cxt
from lattice_tax.implications import Implication, ImplicationBase, Provenance

TAXONOMY_NAME = "fca-related-biclustering"
TEMPLATE_NAME = "fca-algorithm-attributes-template"

TAXONOMY_CXT = """B
FCA-related biclustering
7
7

BiMax
Box biclustering
FCA
Freq. Closed Itemsets
Association rules
Fault-tolerant concepts
OA-biclusters
Type:const
Type:const with exceptions
Struct:Arbitr. overl.
Value type:binary
Closure:explicit
Closure:implicit
Val.type:numeric
X.XX.X.
X.XX.XX
X.XXX..
X.XXX..
X.XXX..
XXXX.X.
XXXXX..
"""

#: Trait legend for the algorithm-classification template.
ALGORITHM_TRAITS = {
    "m1": "incremental approach",
    "m2": "canonicity based on the lexical order",
    "m3": "divides the set of concepts into several parts",
    "m4": "uses hashing",
    "m5": "maintains an auxiliary tree structure",
    "m6": "uses an attribute cache",
    "m7": "computes intents as intersections of object intents",
    "m8": "computes intersections of already generated intents",
    "m9": "computes intersections of non-object intents and object intents",
    "m10": "uses supports of attribute sets",
}


@dataclass(frozen=True)
class DatasetEntry:
    context: FormalContext
    provenance: str
    attribute_legend: Optional[dict[str, str]] = None


class DatasetRegistry:
    def __init__(self, entries: dict[str, DatasetEntry]):
        self._entries = dict(entries)

    def names(self) -> list[str]:
        return sorted(self._entries)

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def entry(self, name: str) -> DatasetEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise KeyError(f"unknown builtin dataset {name!r}; "
                           f"available: {', '.join(self.names())}") from None

    def get(self, name: str) -> FormalContext:
        return self.entry(name).context


@lru_cache(maxsize=1)
def builtin_registry() -> DatasetRegistry:
    taxonomy, report = parse_cxt(TAXONOMY_CXT)
    assert report.ok
    template = FormalContext(
        "FCA algorithm attributes (template)", [], list(ALGORITHM_TRAITS), [])
    return DatasetRegistry({
        TAXONOMY_NAME: DatasetEntry(
            taxonomy,
            "Seven FCA-related biclustering methods classified by seven Boolean "
            "criteria; the incidence table is bundled in full.",
        ),
        TEMPLATE_NAME: DatasetEntry(
            template,
            "Ten algorithmic traits (m1..m10) for classifying concept-lattice "
            "construction algorithms; attribute schema only, no incidence rows "
            "are bundled.",
            attribute_legend=dict(ALGORITHM_TRAITS),
        ),
    })


# -- survey implication fixture ----------------------------------------------

SURVEY_NOTE = (
    "source context unavailable: top-10 implications (by support) of a "
    "47-method biclustering survey taxonomy; the incidence table is not "
    "bundled, so supports are reproduced as published and are not verifiable "
    "against any context here."
)

#: Published size of that taxonomy's full implication base; unverifiable here.
SURVEY_CLAIMED_BASE_SIZE = 105

_SURVEY_RAW: list[tuple[list[str], list[str], int]] = [
    (["Metric-based", "Struct:Non-exclusive"], ["Struct:Non-Exhaustive"], 26),
    (["Type:Additive coherent val."], ["Struct:Non-Exhaustive"], 20),
    (["Measure:MSR"], ["Metric-based", "Struct:Non-Exhaustive"], 18),
    (["Type:Additive coherent val.", "Struct:Non-Exhaustive", "Struct:Non-exclusive"],
     ["Metric-based"], 18),
    (["Strategy:One"], ["Struct:Non-Exhaustive", "Struct:Non-exclusive"], 17),
    (["Type:Coherent values", "Struct:Non-Exhaustive"], ["Struct:Non-exclusive"], 15),
    (["Strategy:One set"], ["Struct:Non-Exhaustive"], 13),
    (["Measure:Var"], ["Metric-based", "Struct:Non-Exhaustive", "Struct:Non-exclusive"], 8),
    (["Type:Negative correlations"], ["Struct:Non-Exhaustive", "Struct:Non-exclusive"], 7),
    (["Metric-based", "Struct:Non-Exhaustive", "Strategy:Simult"],
     ["Type:Additive coherent val.", "Struct:Non-exclusive"], 7),
]


@lru_cache(maxsize=1)
def survey_implications() -> ImplicationBase:
    """The ten survey implications as a user-loaded base flagged as unverifiable."""
    universe: list[str] = []
    for prem, concl, _ in _SURVEY_RAW:
        for name in (*prem, *concl):
            if name not in universe:
                universe.append(name)
    index = {name: i for i, name in enumerate(universe)}
    imps = tuple(
        Implication(frozenset(index[a] for a in prem),
                    frozenset(index[a] for a in concl), sup)
        for prem, concl, sup in _SURVEY_RAW
    )
    return ImplicationBase(tuple(universe), imps, Provenance.USER_LOADED,
                           note=SURVEY_NOTE, source_context_available=False)
