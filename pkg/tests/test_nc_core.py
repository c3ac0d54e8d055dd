"""
Tests for non-crossing partitions.
"""
import random
from fractions import Fraction

import pytest

from tlfree_core.algebra import fatten, rotate
from tlfree_core.combinatorics import (
    NCPartition,
    catalan,
    enumerate_nc,
    hat_embed,
    is_noncrossing,
    join,
    kreweras,
    leq,
    meet,
    mobius,
    mobius_to_top,
)
from tlfree_core.combinatorics.nc_core import MOBIUS_CACHE_SIZE, _mobius_interval
from tlfree_core.exceptions import ArgumentError, ResourceLimitError


def P(n, *blocks):
    return NCPartition.from_blocks(n, blocks)


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_counts(n):
    parts = enumerate_nc(n)
    assert len(parts) == catalan(n)
    assert len(set(parts)) == len(parts)


def test_small_enumerations():
    assert enumerate_nc(1) == [NCPartition.bottom(1)]
    assert len(enumerate_nc(3)) == 5
    assert len(enumerate_nc(4)) == 14


def test_enumeration_errors():
    with pytest.raises(ArgumentError):
        enumerate_nc(0)
    with pytest.raises(ResourceLimitError):
        enumerate_nc(5, cap=4)


def test_from_blocks_validation():
    with pytest.raises(ArgumentError):
        P(4, (1, 3), (2, 4))
    with pytest.raises(ArgumentError):
        P(3, (1, 2))
    assert is_noncrossing([(1, 4), (2, 3)])
    assert not is_noncrossing([(1, 3), (2, 4)])


def test_lattice_examples():
    assert join(P(3, (1, 2), (3,)), P(3, (1,), (2, 3))) == NCPartition.top(3)
    assert meet(NCPartition.top(3), P(3, (1, 2), (3,))) == P(3, (1, 2), (3,))
    for pi in enumerate_nc(4):
        assert leq(NCPartition.bottom(4), pi)
        assert leq(pi, NCPartition.top(4))


def test_join_closes_crossings():
    # {1,3} and {2,4} cross, so the join must merge everything
    assert join(P(4, (1, 3), (2,), (4,)), P(4, (1,), (2, 4), (3,))) == NCPartition.top(4)


def test_mismatched_sizes():
    with pytest.raises(ArgumentError):
        leq(NCPartition.top(2), NCPartition.top(3))


@pytest.mark.parametrize("pi, expected", [
    (P(3, (1, 2, 3)), NCPartition.bottom(3)),
    (P(2, (1,), (2,)), NCPartition.top(2)),
    (P(3, (1, 2), (3,)), P(3, (1,), (2, 3))),
])
def test_kreweras_examples(pi, expected):
    assert kreweras(pi) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_kreweras_properties(n):
    parts = enumerate_nc(n)
    images = [kreweras(pi) for pi in parts]
    assert len(set(images)) == len(parts)
    for pi, kr in zip(parts, images):
        # |pi| + |Kr(pi)| = n + 1
        assert len(pi) + len(kr) == n + 1


@pytest.mark.parametrize("n", range(1, 7))
def test_kreweras_is_a_rotation_click(n):
    for pi in enumerate_nc(n):
        assert fatten(kreweras(pi)) == rotate(fatten(pi), -1)


def test_mobius_examples():
    pi = P(3, (1, 2), (3,))
    assert mobius(pi, pi) == 1
    assert mobius(NCPartition.bottom(2), NCPartition.top(2)) == -1
    assert mobius(NCPartition.bottom(3), NCPartition.top(3)) == 2
    with pytest.raises(ArgumentError):
        mobius(NCPartition.top(3), NCPartition.bottom(3))


@pytest.mark.parametrize("n", range(1, 6))
def test_mobius_to_top_matches_recursion(n):
    top = NCPartition.top(n)
    for sigma in enumerate_nc(n):
        assert mobius_to_top(sigma) == mobius(sigma, top)
    assert mobius_to_top(NCPartition.bottom(n)) == Fraction((-1) ** (n - 1) * catalan(n - 1))


def test_mobius_cache_is_bounded():
    assert _mobius_interval.cache_info().maxsize == MOBIUS_CACHE_SIZE
    _mobius_interval.cache_clear()
    top = NCPartition.top(5)
    for sigma in enumerate_nc(5):
        mobius(sigma, top)
    assert _mobius_interval.cache_info().currsize == catalan(5)
    mobius(NCPartition.bottom(5), top)
    assert _mobius_interval.cache_info().hits >= 1


def test_hat_embed():
    assert hat_embed(P(2, (1, 2)), (2, 1)) == NCPartition.top(3)
    assert hat_embed(NCPartition.bottom(2), (1, 1)) == NCPartition.bottom(2)
    assert hat_embed(P(3, (1,), (2, 3)), (1, 1, 2)) == P(4, (1,), (2, 3, 4))
    with pytest.raises(ArgumentError):
        hat_embed(NCPartition.top(2), (1, 0))


def test_json_roundtrip():
    rng = random.Random(3)
    for pi in rng.sample(enumerate_nc(6), 10):
        assert NCPartition.from_dict(pi.to_dict()) == pi
    with pytest.raises(ArgumentError):
        NCPartition.from_dict({"blocks": [[1]]})


def test_interval_blocks():
    pi = P(5, (1, 5), (2, 3), (4,))
    assert pi.interval_blocks() == [(2, 3), (4,)]
