"""Kernel backend selection.

The compiled extension (``_fast``, Cython) is preferred when importable; the
pure-Python backend is the fallback.  Set ``LATTICE_TAX_KERNELS=pure`` to
force the fallback, or ``=compiled`` to make a missing extension an error.
"""

from __future__ import annotations

import os

from lattice_tax.kernels import pure
from lattice_tax.kernels.bitops import (  # noqa: F401  (re-exported)
    close_under_implications,
    indices_of,
    iter_bits,
    lectic_key,
    mask_of,
)

_requested = os.environ.get("LATTICE_TAX_KERNELS", "auto").lower()
if _requested not in {"auto", "pure", "compiled"}:
    raise ValueError(
        f"LATTICE_TAX_KERNELS must be 'auto', 'pure' or 'compiled', not {_requested!r}"
    )

if _requested == "pure":
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from lattice_tax.kernels import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = pure
        BACKEND = "pure"

extent_of = _impl.extent_of
intent_of = _impl.intent_of
close_intent = _impl.close_intent
close_extent = _impl.close_extent
closed_intents = _impl.closed_intents
cover_edges = _impl.cover_edges
dg_base = _impl.dg_base
