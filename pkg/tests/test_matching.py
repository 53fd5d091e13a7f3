import random

import pytest

from conftest import example_graphs, make, random_digraph
from controlmode.errors import InvalidMatching, NotMaximum
from controlmode.matching import (
    UNMATCHED,
    Matching,
    extract_unmatched,
    find_augmenting_path,
    maximum_matching,
    verify_maximum_matching,
)
from controlmode.oracle import enumerate_maximum_matchings


def test_chain_unique_matching(chain):
    m = maximum_matching(chain)
    assert m.size == 2
    assert m.pairs() == [(0, 1), (1, 2)]


def test_fork_size_one(fork):
    assert maximum_matching(fork).size == 1


def test_two_cycle_perfect():
    m = maximum_matching(make(2, [(0, 1), (1, 0)]))
    assert m.size == 2
    assert UNMATCHED not in m.in_partner


def test_partner_arrays_inverse(corpus):
    for g in corpus[:200]:
        m = maximum_matching(g)
        for u, v in m.pairs():
            assert m.in_partner[v] == u
            assert g.has_edge(u, v)


def test_size_matches_oracle(corpus):
    for g in corpus:
        assert maximum_matching(g).size == enumerate_maximum_matchings(g, cap=1).max_size


def test_verify_own_output(corpus):
    for g in corpus:
        diag = verify_maximum_matching(g, maximum_matching(g))
        assert diag.valid and diag.maximum


def test_verify_chain_pairs(chain):
    assert verify_maximum_matching(chain, [(0, 1), (1, 2)]).size == 2


def test_empty_matching_is_not_maximum(fork):
    with pytest.raises(NotMaximum) as info:
        verify_maximum_matching(fork, [])
    assert info.value.path == [("out", 0), ("in", 1)]


def test_reused_out_copy_is_invalid(fork):
    with pytest.raises(InvalidMatching) as info:
        verify_maximum_matching(fork, [(0, 1), (0, 2)])
    assert info.value.pair == (0, 2)


def test_pair_must_be_edge(chain):
    with pytest.raises(InvalidMatching):
        verify_maximum_matching(chain, [(2, 0)])


def test_witness_path_augments():
    rng = random.Random(3)
    for _ in range(300):
        g = random_digraph(rng, 2, 8, 0.3)
        best = maximum_matching(g)
        # drop one matched pair, the verifier must find a path that restores the size
        if best.size == 0:
            continue
        pairs = best.pairs()[1:]
        m = Matching.from_pairs(g.node_count, pairs)
        path = find_augmenting_path(g, m)
        assert path is not None
        assert path[0][0] == "out" and path[-1][0] == "in"
        assert m.out_partner[path[0][1]] == UNMATCHED
        assert m.in_partner[path[-1][1]] == UNMATCHED
        new = set(pairs)
        for i in range(0, len(path) - 1):
            (s1, a), (s2, b) = path[i], path[i + 1]
            edge = (a, b) if s1 == "out" else (b, a)
            assert g.has_edge(*edge)
            if s1 == "out":
                new.add(edge)
            else:
                new.discard(edge)
        assert len(new) == best.size
        verify_maximum_matching(g, new)


def test_extract_unmatched_chain(chain):
    sets = extract_unmatched(chain, maximum_matching(chain))
    assert sets.drivers == {0}
    assert sets.unsaturated == {2}
    assert sets.n_d == 1


def test_extract_unmatched_perfect():
    g = make(2, [(0, 1), (1, 0)])
    sets = extract_unmatched(g, maximum_matching(g))
    assert sets.drivers == set() and sets.unsaturated == set()
    assert sets.n_d == 1


def test_extract_unmatched_fork(fork):
    sets = extract_unmatched(fork, Matching.from_pairs(3, [(0, 1)]))
    assert sets.drivers == {0, 2}
    assert sets.unsaturated == {1, 2}
    assert sets.n_d == 2


def test_unmatched_counts_equal(corpus):
    for g in corpus[:300]:
        m = maximum_matching(g)
        sets = extract_unmatched(g, m)
        assert len(sets.drivers) == len(sets.unsaturated) == g.node_count - m.size


def test_deterministic(corpus):
    for g in corpus[:100]:
        assert maximum_matching(g) == maximum_matching(g.copy())


def test_seeded_matchings_are_maximum_and_vary():
    g = example_graphs()["fork"]
    seen = {tuple(maximum_matching(g, seed=s).pairs()) for s in range(20)}
    assert seen == {((0, 1),), ((0, 2),)}


def test_extract_rejects_foreign_matching(chain):
    with pytest.raises(InvalidMatching):
        extract_unmatched(chain, Matching.from_pairs(3, [(2, 0)]))
