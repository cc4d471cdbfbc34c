"""lattice-tax: a workbench for lattice-based taxonomies.

Formal contexts with derivation/closure operators, concept lattices with
line-diagram export, OA-biclusters with exact rational densities,
Duquenne-Guigues implication bases, and interactive attribute exploration,
behind a CLI and an HTTP/JSON service.
"""

__version__ = "0.1.0"

from lattice_tax.context import (  # noqa: F401
    ApposeError,
    ContextError,
    ContextParseError,
    FormalContext,
    ParseReport,
    appose,
    closure_attributes,
    closure_objects,
    derive_attributes,
    derive_objects,
    parse_csv,
    parse_cxt,
    serialize_csv,
    serialize_cxt,
    transpose,
)

__all__ = [
    "ApposeError",
    "ContextError",
    "ContextParseError",
    "FormalContext",
    "ParseReport",
    "appose",
    "closure_attributes",
    "closure_objects",
    "derive_attributes",
    "derive_objects",
    "parse_csv",
    "parse_cxt",
    "serialize_csv",
    "serialize_cxt",
    "transpose",
    "__version__",
]
