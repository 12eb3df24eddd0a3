import itertools

import numpy as np
import pytest

from chaincell import linalg
from chaincell.complexes import disk, empty, interval, make_complex, sphere, validate
from chaincell.errors import DomainError, GuardExceeded, UsageError
from chaincell.ops import direct_sum, is_chain_map, shift
from chaincell.oracle import (
    SizeGuard,
    cross_check,
    enumerate_chain_maps,
    exists_h0_epi,
    extension,
    random_extension,
)
from chaincell.ring import RingSpec

from conftest import bounded_random_complex

Z4 = RingSpec("zpsq", 2)


def test_enumerate_sphere_endomorphisms(ring):
    maps = enumerate_chain_maps(sphere(ring, 0), sphere(ring, 0))
    assert len(maps) == ring.size
    assert all(is_chain_map(f) is None for f in maps)


def test_enumerate_interval_to_sphere(ring):
    # every map kills H0: the degree-0 component must land in m
    maps = enumerate_chain_maps(interval(ring, 0, 1), interval(ring, 0, 0))
    assert len(maps) == ring.p
    for f in maps:
        assert not f.mat(0).entry(0, 0).is_unit()


def test_enumerate_from_empty(ring, rng):
    X = bounded_random_complex(ring, rng)
    maps = enumerate_chain_maps(empty(ring), X)
    assert len(maps) == 1


def test_enumerate_sphere_counts_cycles(ring, rng):
    # maps S^0 -> Y correspond to elements of Y_0 (no relations to satisfy)
    for _ in range(5):
        Y = bounded_random_complex(ring, rng, max_len=3, max_rank=2)
        if ring.size ** Y.rank(0) > 4096:
            continue
        maps = enumerate_chain_maps(sphere(ring, 0), Y, SizeGuard(1 << 14))
        assert len(maps) == ring.size ** Y.rank(0)


def test_enumeration_matches_naive_filter(ring, rng):
    # oracle for the oracle: full Cartesian product plus commutation filter
    for _ in range(4):
        X = bounded_random_complex(ring, rng, max_len=3, max_rank=1)
        Y = bounded_random_complex(ring, rng, max_len=3, max_rank=1)
        degrees = max(len(X.ranks), len(Y.ranks))
        exponent = sum(X.rank(n) * Y.rank(n) for n in range(degrees))
        if ring.size**exponent > 2048:
            continue
        fast = enumerate_chain_maps(X, Y, SizeGuard(2048))
        spaces = []
        for n in range(degrees):
            shape = (Y.rank(n), X.rank(n))
            count = ring.size ** (shape[0] * shape[1])
            from chaincell.oracle import _candidate_matrices

            spaces.append(list(_candidate_matrices(ring, *shape)))
        slow = 0
        for mats in itertools.product(*spaces):
            f = make_naive(X, Y, mats)
            if is_chain_map(f) is None:
                slow += 1
        assert len(fast) == slow


def make_naive(X, Y, mats):
    from chaincell.ops import ChainMap

    return ChainMap(X, Y, tuple(linalg.MatrixR(X.ring, m) for m in mats))


def test_guard_refusal_reports_budget():
    big = make_complex(Z4, [4], [])
    with pytest.raises(GuardExceeded) as info:
        enumerate_chain_maps(big, big, SizeGuard(100))
    assert info.value.required == 4**16


def test_exists_h0_epi_examples(ring):
    assert exists_h0_epi(interval(ring, 0, 0), interval(ring, 0, 1))
    assert not exists_h0_epi(interval(ring, 0, 1), interval(ring, 0, 0))
    assert exists_h0_epi(interval(ring, 0, 0), disk(ring, 1))


def test_exists_h0_epi_hypothesis_check(ring):
    with pytest.raises(DomainError):
        exists_h0_epi(disk(ring, 1), sphere(ring, 0))
    with pytest.raises(DomainError):
        exists_h0_epi(shift(sphere(ring, 0), 1), sphere(ring, 0))


def test_cross_check_examples(p2_ring):
    r1 = cross_check(interval(p2_ring, 0, 2), interval(p2_ring, 0, 1))
    assert (r1.lattice_verdict, r1.oracle_verdict, r1.agree) == (True, True, True)
    r2 = cross_check(interval(p2_ring, 0, 0), interval(p2_ring, 0, 1))
    assert (r2.lattice_verdict, r2.oracle_verdict, r2.agree) == (False, False, True)
    r3 = cross_check(disk(p2_ring, 1), interval(p2_ring, 0, 0))
    assert (r3.lattice_verdict, r3.oracle_verdict, r3.agree) == (True, True, True)


def test_cross_check_desuspension_routes(p2_ring):
    r = cross_check(interval(p2_ring, 1, 2), interval(p2_ring, 1, 1))
    assert r.agree and r.route.startswith("h0-epi-desuspended")
    r2 = cross_check(interval(p2_ring, 1, 0), interval(p2_ring, 2, 0))
    assert r2.agree and r2.route == "support"
    r3 = cross_check(disk(p2_ring, 2), disk(p2_ring, 1))
    assert r3.agree and r3.route == "acyclic-generator"


def test_extension_of_spheres_gives_interval(ring):
    h = np.array([[ring.p]], dtype=np.int64)  # encoded r
    ext = extension(sphere(ring, 0), sphere(ring, 1), {1: h})
    assert ext.total == interval(ring, 0, 1)
    assert is_chain_map(ext.inclusion) is None
    assert is_chain_map(ext.projection) is None


def test_extension_rejects_bad_connecting_block(ring):
    one = np.array([[1]], dtype=np.int64)
    with pytest.raises(UsageError):
        extension(interval(ring, 0, 1), sphere(ring, 2), {2: one})


def test_extension_zero_blocks_give_direct_sum(ring):
    X, Z = interval(ring, 0, 1), interval(ring, 1, 1)
    assert extension(X, Z, {}).total == direct_sum(X, Z)


def test_random_extension_always_valid(ring, rng):
    for seed in range(15):
        X = bounded_random_complex(ring, rng, max_len=3, max_rank=2)
        Z = bounded_random_complex(ring, rng, max_len=3, max_rank=2)
        ext = random_extension(X, Z, seed=seed)
        assert validate(ext.total) is None
        assert is_chain_map(ext.inclusion) is None
        assert is_chain_map(ext.projection) is None
        assert ext.total.ranks == tuple(
            X.rank(n) + Z.rank(n)
            for n in range(max(len(X.ranks), len(Z.ranks)))
        )


def test_h0_epi_consistency_with_lattice_on_sums(p2_ring, rng):
    # mirrors the frozen-family agreement on randomly drawn sums
    from chaincell.randgen import random_interval_sum

    done = 0
    while done < 25:
        A = random_interval_sum(
            p2_ring, rng, max_summands=2, max_shift=1, max_length=2, force_bottom_zero=True
        )
        X = random_interval_sum(p2_ring, rng, max_summands=2, max_shift=2, max_length=2)
        exponent = sum(A.rank(n) * X.rank(n) for n in range(5))
        if p2_ring.size**exponent > (1 << 18):
            continue
        assert cross_check(X, A, SizeGuard(1 << 18)).agree
        done += 1
