"""Shared fixtures: a persistent group cache and memoized system builders."""
import os
from pathlib import Path

import pytest

os.environ.setdefault(
    "FISCHER_LAB_CACHE_DIR", str(Path.home() / ".cache" / "fischerlab")
)
Path(os.environ["FISCHER_LAB_CACHE_DIR"]).mkdir(parents=True, exist_ok=True)

from fischerlab import catalog, fischer  # noqa: E402


@pytest.fixture(scope="session")
def system_factory():
    """Build (and memoize) a TranspositionSystem from a descriptor string."""
    cache = {}

    def build(descriptor):
        if descriptor not in cache:
            entry = catalog.from_descriptor(descriptor)
            cache[descriptor] = fischer.build_system(entry.generators, entry.seed)
        return cache[descriptor]

    return build
