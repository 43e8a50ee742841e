import pytest

import util

# known counts of graphs up to isomorphism (all / connected)
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


@pytest.fixture(scope="session")
def atlas():
    """All graphs up to isomorphism, keyed by vertex count, for n <= 6."""
    out = {n: util.graphs_up_to_iso(n) for n in range(1, 7)}
    for n, gs in out.items():
        assert len(gs) == ALL_COUNTS[n]
    return out


@pytest.fixture(scope="session")
def connected_atlas(atlas):
    out = {n: [g for g in gs if util.is_connected(g)] for n, gs in atlas.items()}
    for n, gs in out.items():
        assert len(gs) == CONNECTED_COUNTS[n]
    return out
