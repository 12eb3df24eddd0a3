import numpy as np
import pytest

from chaincell.ring import RingSpec

ALL_RINGS = [
    RingSpec("zpsq", 2),
    RingSpec("zpsq", 3),
    RingSpec("dual", 2),
    RingSpec("dual", 3),
]
P2_RINGS = [RingSpec("zpsq", 2), RingSpec("dual", 2)]


@pytest.fixture(params=ALL_RINGS, ids=str)
def ring(request):
    return request.param


@pytest.fixture(params=P2_RINGS, ids=str)
def p2_ring(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def bounded_random_complex(ring, rng, max_len=5, max_rank=4):
    """Seeded random complex with unit entries, ranks capped degreewise."""
    from chaincell.randgen import random_complex_with_disks

    while True:
        X = random_complex_with_disks(
            ring, rng, max_degree=max_len - 1, max_rank=max_rank - 1, max_disks=2
        )
        if len(X.ranks) <= max_len and all(r <= max_rank for r in X.ranks):
            return X
