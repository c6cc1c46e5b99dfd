"""Oracle-based property suite over randomly generated small programs.

Each case pairs a ground normal program with one of its answer sets
(found by exhaustive search) and a member atom; the fast algorithms are
checked against the brute-force explanation enumerator.
"""
import random

import pytest

from aspexplain.engine import (
    create_tree,
    distance,
    enumerate_explanations,
    k_different,
    shortest_explanation,
)
from aspexplain.trees import validate_andor_tree

from conftest import answer_sets, random_program

N_PROGRAMS = 500


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(20260823)
    cases = []
    n = 0
    while n < N_PROGRAMS:
        P = random_program(rng)
        n += 1
        for X in answer_sets(P):
            for p in sorted(X):
                cases.append((P, X, p))
    assert cases
    return cases


@pytest.fixture(scope="module")
def enumerated(corpus):
    out = []
    for P, X, p in corpus:
        out.append((P, X, p, enumerate_explanations(P, X, p)))
    return out


def test_andor_tree_nonempty_and_wellformed(corpus):
    for P, X, p in corpus:
        T = create_tree(P, X, p)
        assert not T.is_empty
        validate_andor_tree(T, P, X, p)


def test_shortest_matches_oracle_minimum(enumerated):
    for P, X, p, oracle in enumerated:
        e = shortest_explanation(P, X, p)
        assert e.size == min(o.size for o in oracle)


def test_k_different_greedy_maximality(enumerated):
    for P, X, p, oracle in enumerated:
        ks = k_different(P, X, p, 3)
        R = frozenset()
        for e in ks:
            best = max(distance(R, o) for o in oracle)
            assert distance(R, e) == best
            R = R | e.rule_vertex_ids
        ids = [e.rule_vertex_ids for e in ks]
        assert len(set(ids)) == len(ids)


def test_eager_and_ondemand_agree(corpus):
    for P, X, p in corpus:
        eager = create_tree(P, X, p, on_demand=False)
        ondemand = create_tree(P, X, p, on_demand=True)
        assert eager == ondemand
        s1 = shortest_explanation(P, X, p, on_demand=False)
        s2 = shortest_explanation(P, X, p, on_demand=True)
        assert s1 == s2
