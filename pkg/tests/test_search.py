import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from oneshot.channel import NetworkCode, check_unambiguous
from oneshot.constructions import family_e_construct
from oneshot.netmodel import (
    NetworkError,
    TwoLevelSpec,
    build_two_level,
    diamond,
    family_e,
    figure1_network,
    s_family,
)
from oneshot.search import (
    ConflictGraph,
    conflict_graph,
    graph_from_pairs,
    hamming_conflict_graph,
    independence_at_least,
    joint_search,
    max_independent_set,
    table_space_size,
)


def brute_mis(graph):
    for k in range(graph.n, 0, -1):
        for sub in itertools.combinations(range(graph.n), k):
            if graph.is_independent(sub):
                return k
    return 0


def test_trivial_graphs():
    empty = graph_from_pairs(list(range(5)), [])
    assert len(max_independent_set(empty)) == 5
    k4 = graph_from_pairs(list(range(4)), itertools.combinations(range(4), 2))
    assert len(max_independent_set(k4)) == 1


def test_hamming_graph_n5_q2():
    g = hamming_conflict_graph(5, 2)
    res = max_independent_set(g)
    assert len(res) == 4 and res.optimal and g.is_independent(res.vertices)
    assert len(res) == oracles.hamming_max_code(5, 2)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 11).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=30))))
def test_mis_matches_brute_force(inst):
    n, pairs = inst
    g = graph_from_pairs(list(range(n)), pairs)
    res = max_independent_set(g)
    assert res.optimal and g.is_independent(res.vertices)
    assert len(res) == brute_mis(g)
    assert independence_at_least(g, len(res)) is True
    assert independence_at_least(g, len(res) + 1) is False


def test_mis_is_lexicographically_least():
    # a path 0-1-2-3: optimum sets of size 2 include {0,2}, {0,3}, {1,3}
    g = graph_from_pairs(list(range(4)), [(0, 1), (1, 2), (2, 3)])
    assert max_independent_set(g).vertices == [0, 2]


def test_conflict_graph_examples():
    net = diamond(2)
    fwd = NetworkCode.from_functions(net, 2, {"V2": lambda a, b: a})
    assert len(max_independent_set(conflict_graph(net, fwd))) == 1
    plan = family_e_construct(1, 3)
    g = conflict_graph(diamond(3), plan.code)
    assert len(max_independent_set(g)) == 2
    quiet = build_two_level(TwoLevelSpec(1, 2, 1, 2), power=0, q=2)
    assert conflict_graph(quiet, NetworkCode.identity(quiet, 2)).n_edges() == 0
    # without an adversary, words only clash when the code merges them
    assert conflict_graph(diamond(2).with_adversary(power=0), fwd).n_edges() == 4


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9))
def test_conflict_graph_matches_oracle(flat):
    net = diamond(3)
    code = NetworkCode(net, 3, {"V2": np.array(flat).reshape(9, 1)})
    g = conflict_graph(net, code)
    for i, j in itertools.combinations(range(g.n), 2):
        clash = not oracles.unambiguous(net, code.tables, 3, [g.words[i], g.words[j]])
        assert g.has_edge(i, j) == clash


@pytest.mark.parametrize("net,M,want", [
    (s_family(3, 1, 1, 2), 2, "feasible"),
    (s_family(3, 1, 1, 2), 3, "infeasible"),
    (diamond(2), 1, "feasible"),
    (diamond(2), 2, "infeasible"),
    (family_e(2, 3), 1, "feasible"),
    (family_e(2, 3), 2, "infeasible"),
])
def test_joint_search_examples(net, M, want):
    # auto picks table enumeration for small spaces, the CNF model otherwise
    res = joint_search(net, M, net.q)
    assert res.status == want
    if res.feasible:
        assert len(res.outer) == M and check_unambiguous(net, res.code, res.outer) is True


@pytest.mark.parametrize("spec,q", [
    (TwoLevelSpec(1, 1, 1, 1), 3),
    (TwoLevelSpec(1, 2, 1, 1), 2),
    (TwoLevelSpec(2, 1, 1, 1), 2),
    (TwoLevelSpec(0, 3, 0, 2), 2),
])
@pytest.mark.parametrize("reductions", [(), ("identity", "zero", "relabel")])
def test_joint_search_matches_oracle(spec, q, reductions):
    net = build_two_level(spec, q=q)
    best = oracles.max_code_size(net, q)
    assert joint_search(net, best, q, method="dfs", reductions=reductions).feasible
    assert joint_search(net, best + 1, q, method="dfs", reductions=reductions).status == "infeasible"


def test_search_methods_agree():
    for net, M in [(diamond(3), 2), (diamond(3), 3), (s_family(1, 2, 1, 2), 2), (s_family(1, 2, 1, 2), 3)]:
        a = joint_search(net, M, net.q, method="dfs").status
        b = joint_search(net, M, net.q, method="cnf").status
        assert a == b


def test_joint_search_is_deterministic():
    a = joint_search(diamond(3), 2, 3, method="dfs")
    b = joint_search(diamond(3), 2, 3, method="dfs")
    assert a.outer == b.outer and a.code == b.code


def test_joint_search_guards():
    with pytest.raises(NetworkError):
        joint_search(figure1_network(3), 2, 3)
    with pytest.raises(ValueError):
        joint_search(diamond(2), 0, 2)
    assert joint_search(diamond(2), 9, 2).status == "infeasible"
    assert table_space_size(diamond(3), 3, ()) == 3**3 * 3**9
    assert table_space_size(diamond(3), 3, ("identity",)) == 3**9


def test_conflict_graph_type():
    g = hamming_conflict_graph(3, 2)
    assert isinstance(g, ConflictGraph) and g.n == 8
    assert g.has_edge(0, 1) and not g.has_edge(0, 7)
