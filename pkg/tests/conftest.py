from __future__ import annotations

import pytest

from wmub.bases import build_wmub
from wmub.geometry import maximal_line_catalog
from wmub.zring import crt_context

PRIME_PAIRS = {15: (3, 5), 21: (3, 7), 33: (3, 11)}


@pytest.fixture(scope="session")
def ctx15():
    return crt_context(3, 5)


@pytest.fixture(scope="session")
def contexts():
    return {d: crt_context(*pair) for d, pair in PRIME_PAIRS.items()}


@pytest.fixture(scope="session")
def catalog15(ctx15):
    return maximal_line_catalog(ctx15)


@pytest.fixture(scope="session")
def catalogs(contexts):
    return {d: maximal_line_catalog(ctx) for d, ctx in contexts.items()}


@pytest.fixture(scope="session")
def wmub15(ctx15):
    return build_wmub(ctx15)


@pytest.fixture(scope="session")
def wmub_sets(contexts):
    return {d: build_wmub(ctx) for d, ctx in contexts.items()}
