import random

import pytest

from colexwidth import (
    Alphabet,
    ChainPartition,
    Dfa,
    InputError,
    StateOrder,
    existential_leq,
    hasse_cover_edges,
    is_chain_partition,
    state_order,
    width_dfa,
)
from colexwidth.oracle import brute_width

A1_STRICT_PAIRS = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
    (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5),
]


def _order_from_pairs(n, pairs):
    below = [[False] * n for _ in range(n)]
    for u, v in pairs:
        below[u][v] = True
    return StateOrder(n, tuple(tuple(row) for row in below))


def test_existential_leq_seeds_and_incomparability(a1):
    rel = existential_leq(a1)
    # The initial row is all true: the empty word is below everything.
    assert all(rel.holds(0, v) for v in range(6))
    assert all(rel.holds(u, u) for u in range(6))
    # Both directions hold between the two loop states, so they are incomparable.
    assert rel.holds(1, 2) and rel.holds(2, 1)


def test_state_order_on_fixture(a1):
    order = state_order(a1)
    order.check_valid()
    assert order.pairs() == A1_STRICT_PAIRS


def test_state_order_one_state():
    one = Dfa(Alphabet(("a",)), 1, 0, frozenset({0}), {(0, "a"): 0})
    assert state_order(one).pairs() == []


def test_state_order_acstar_chain(acstar):
    order = state_order(acstar)
    assert order.pairs() == [(0, 1), (0, 2), (1, 2)]


def test_width_dfa_fixture(a1):
    res = width_dfa(state_order(a1))
    assert res.width == 3
    assert res.antichain.states == (3, 4, 5)
    assert res.chains.blocks() == [[0, 1, 3], [2, 4], [5]]
    res.antichain.check(state_order(a1))


def test_width_dfa_degenerate_orders():
    empty = _order_from_pairs(4, [])
    res = width_dfa(empty)
    assert res.width == 4
    assert res.antichain.states == (0, 1, 2, 3)
    assert res.chains.chain_count == 4

    total = _order_from_pairs(3, [(0, 1), (0, 2), (1, 2)])
    res = width_dfa(total)
    assert res.width == 1
    assert len(res.antichain) == 1
    assert res.chains.blocks() == [[0, 1, 2]]


def test_is_chain_partition(a1, a2):
    order1 = state_order(a1)
    good = ChainPartition.from_blocks([[0, 1, 3], [2, 4], [5]], 6)
    assert is_chain_partition(order1, good)
    bad = ChainPartition.from_blocks([[0, 1, 2], [3, 4], [5]], 6)
    assert not is_chain_partition(order1, bad)  # 1 and 2 are incomparable

    order2 = state_order(a2)
    two_chains = ChainPartition.from_blocks([[0, 1, 4], [2, 3, 5, 6]], 7)
    assert is_chain_partition(order2, two_chains)


def test_chain_partition_validation():
    with pytest.raises(InputError):
        ChainPartition.from_blocks([[0, 1], [1, 2]], 3)  # 1 twice
    with pytest.raises(InputError):
        ChainPartition.from_blocks([[0]], 2)  # 1 missing


def test_hasse_cover_edges(a1):
    order = state_order(a1)
    assert set(hasse_cover_edges(order)) == {
        (0, 1), (0, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5),
    }
    total = _order_from_pairs(3, [(0, 1), (0, 2), (1, 2)])
    assert hasse_cover_edges(total) == [(0, 1), (1, 2)]
    assert hasse_cover_edges(_order_from_pairs(3, [])) == []


def _random_strict_order(rng, n, p=0.3):
    perm = list(range(n))
    rng.shuffle(perm)
    below = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                below[perm[i]][perm[j]] = True
    # transitive closure
    for w in range(n):
        for u in range(n):
            if below[u][w]:
                for v in range(n):
                    if below[w][v]:
                        below[u][v] = True
    return StateOrder(n, tuple(tuple(row) for row in below))


def test_width_dfa_matches_brute_on_random_orders():
    rng = random.Random(202)
    for _ in range(120):
        n = rng.randrange(1, 11)
        order = _random_strict_order(rng, n)
        res = width_dfa(order)
        assert res.width == brute_width(order)
        # Dilworth duality and witness consistency on every input.
        assert len(res.antichain) == res.width == res.chains.chain_count
        res.antichain.check(order)
        assert is_chain_partition(order, res.chains)


def test_wheeler_detection_is_single_chain(acstar, a1):
    res = width_dfa(state_order(acstar))
    assert res.width == 1 and res.chains.chain_count == 1
    assert width_dfa(state_order(a1)).width > 1
