import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lattice_tax.context import FormalContext
from lattice_tax.datasets import TAXONOMY_NAME, builtin_registry


@pytest.fixture(scope="session")
def taxonomy() -> FormalContext:
    """The bundled 7x7 biclustering-methods context."""
    return builtin_registry().get(TAXONOMY_NAME)


@pytest.fixture(scope="session")
def diag3() -> FormalContext:
    """3x3 complement-of-equality context; its concepts form the Boolean cube."""
    return FormalContext("ne3", ["g0", "g1", "g2"], ["m0", "m1", "m2"],
                         [".XX", "X.X", "XX."])


@pytest.fixture(scope="session")
def full3() -> FormalContext:
    return FormalContext("full3", ["a", "b", "c"], ["p", "q", "r"],
                         ["XXX", "XXX", "XXX"])


@pytest.fixture(scope="session")
def empty_ctx() -> FormalContext:
    return FormalContext("", [], [], [])
