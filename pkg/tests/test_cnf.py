import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from oneshot.channel import NetworkCode, OuterCode, check_unambiguous
from oneshot.cnf import (
    ATTACK_MODES,
    attack_sets,
    census,
    cnf_search,
    encode_cnf,
    reductions_satisfied,
    solve_cnf,
)
from oneshot.netmodel import TwoLevelSpec, build_two_level, diamond, family_e, figure1_network
from oneshot.sat import SAT, UNSAT, parse_dimacs

TINY = [
    (TwoLevelSpec(1, 1, 1, 1), 2),
    (TwoLevelSpec(1, 1, 1, 1), 3),
    (TwoLevelSpec(1, 2, 1, 1), 2),
    (TwoLevelSpec(2, 1, 1, 1), 2),
    (TwoLevelSpec(0, 3, 0, 1), 2),
    (TwoLevelSpec(0, 3, 0, 2), 2),
]


def test_diamond_census():
    c = census(diamond(2), 1, 2)
    assert (c["x"], c["f"]) == (6, 8)
    inst = encode_cnf(diamond(2), 1, 2)
    assert inst.var_census() == c
    assert inst.n_vars == c["total"]


@pytest.mark.parametrize("mode", ATTACK_MODES)
@pytest.mark.parametrize("reductions", [(), ("identity",), ("identity", "zero", "relabel")])
def test_census_matches_encoder(mode, reductions):
    for net, M, q in [(diamond(3), 2, 3), (family_e(2, 2), 2, 2), (build_two_level(TwoLevelSpec(2, 2, 1, 2)), 3, 2)]:
        inst = encode_cnf(net, M, q, attacks=mode, reductions=reductions)
        c = census(net, M, q, mode, reductions)
        assert inst.n_vars == c["total"]
        assert inst.var_census() == c


def test_attack_sets():
    assert attack_sets(["a", "b", "c"], 1) == [("a",), ("b",), ("c",)]
    assert attack_sets(["a", "b"], 1, "all") == [(), ("a",), ("b",)]
    assert attack_sets(["a"], 3) == [("a",)]


def test_diamond_solver_results():
    res, _ = solve_cnf(encode_cnf(diamond(2), 2, 2))
    assert res.status == UNSAT
    res, pair = solve_cnf(encode_cnf(diamond(3), 2, 3))
    assert res.status == SAT and check_unambiguous(diamond(3), pair[1], pair[0]) is True
    res, _ = solve_cnf(encode_cnf(diamond(3), 3, 3))
    assert res.status == UNSAT


@pytest.mark.parametrize("spec,q", TINY)
@pytest.mark.parametrize("mode", ATTACK_MODES)
def test_sat_iff_oracle_capacity(spec, q, mode):
    net = build_two_level(spec, q=q)
    best = oracles.max_code_size(net, q)
    for M in range(1, best + 2):
        res = cnf_search(net, M, q, attacks=mode)
        assert res.status == ("feasible" if M <= best else "infeasible"), (M, best)


@pytest.mark.parametrize("reductions", [(), ("identity",), ("zero",), ("relabel",)])
def test_each_reduction_preserves_feasibility(reductions):
    net = diamond(3)
    for M, want in ((2, "feasible"), (3, "infeasible")):
        assert cnf_search(net, M, 3, reductions=reductions).status == want


@st.composite
def diamond_pairs(draw):
    q = draw(st.sampled_from([2, 3]))
    net = diamond(q)
    flat = draw(st.lists(st.integers(0, q - 1), min_size=q * q, max_size=q * q))
    code = NetworkCode(net, q, {"V2": np.array(flat).reshape(q * q, 1)})
    words = list(itertools.product(range(q), repeat=3))
    outer = draw(st.lists(st.sampled_from(words), min_size=1, max_size=3, unique=True))
    return net, OuterCode(tuple(outer), q), code


@settings(max_examples=80, deadline=None)
@given(diamond_pairs())
def test_assignment_satisfies_exactly_when_unambiguous(pair):
    net, outer, code = pair
    red = reductions_satisfied(net, outer, code)
    inst = encode_cnf(net, len(outer), code.q, reductions=red)
    ok = check_unambiguous(net, code, outer) is True
    assert (inst.check(inst.assignment(outer, code)) is None) == ok
    if ok:
        got_outer, got_code = inst.decode(inst.assignment(outer, code))
        assert got_outer.words == outer.words and got_code == code


def test_dimacs_export_parses_back():
    inst = encode_cnf(diamond(2), 1, 2)
    text = inst.to_dimacs()
    assert "x[" in text or "x " in text
    n, clauses = parse_dimacs(text)
    assert n == inst.n_vars and clauses == inst.clauses


def test_rejects_networks_outside_the_model():
    with pytest.raises(ValueError):
        encode_cnf(figure1_network(3), 2)
    with pytest.raises(ValueError):
        encode_cnf(diamond(2), 0)
    with pytest.raises(ValueError):
        encode_cnf(diamond(2), 1, reductions=("bogus",))
