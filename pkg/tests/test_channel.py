import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from oneshot.channel import (
    Attack,
    CollisionWitness,
    NetworkCode,
    OuterCode,
    attack_count,
    check_unambiguous,
    enumerate_attacks,
    fanout,
    find_collision,
    transmit,
)
from oneshot.constructions import embedded_code, family_e_construct
from oneshot.netmodel import NetworkError, diamond, family_b, family_e, figure1_network, s_family


def figure1_code(q=3):
    net = figure1_network(q)
    code = NetworkCode.from_functions(net, q, {
        "V1": lambda a: (a, a),
        "V2": lambda a: ((2 * a) % q, a),
        "V3": lambda a, b: (a + b) % q,
        "V4": lambda a: (a, (2 * a) % q),
    })
    return net, code


def forward_first(q):
    """Diamond code where V2 forwards its first input."""
    net = diamond(q)
    return net, NetworkCode.from_functions(net, q, {"V2": lambda a, b: a})


def test_attack_counts():
    assert list(enumerate_attacks(["e1", "e2"], 0, 3)) == [Attack()]
    assert len(list(enumerate_attacks(["e1", "e2", "e3"], 1, 2))) == 7 == attack_count(3, 1, 2)
    assert len(list(enumerate_attacks(["e1", "e2", "e3", "e4"], 1, 4))) == 17
    assert attack_count(4, 2, 3) == 1 + 4 * 3 + 6 * 9


def test_figure1_transmit():
    net, code = figure1_code()
    got = transmit(net, code, (1, 0))
    assert got == {"T1": (1, 1), "T2": (0, 2)}
    assert got == oracles.evaluate(net, code.tables, 3, (1, 0))
    assert transmit(net, code, (1, 0)) == got


def test_diamond_attack_on_e1():
    net = diamond(2)
    code = NetworkCode.from_functions(net, 2, {"V2": lambda a, b: a})
    assert transmit(net, code, (0, 0, 0), {"e1": 1})["T"] == (1, 0)


def test_diamond_forwarding_fanout():
    # e1 flips the first received symbol, e2 the second; e3 is not forwarded
    net, code = forward_first(2)
    got = fanout(net, code, (0, 0, 0), "T")
    assert got == {(0, 0), (1, 0), (0, 1)}
    assert got == oracles.received_sets(net, code.tables, 2, (0, 0, 0))["T"]


def test_fanout_without_adversary_is_single_word():
    net, code = figure1_code()
    for x in itertools.product(range(3), repeat=2):
        assert fanout(net, code, x, "T1", power=0) == {transmit(net, code, x)["T1"]}


def test_fanout_monotone_on_e2():
    plan = family_e_construct(2, 5)
    net = family_e(2, 5)
    for x in [(0,) * 5, (1, 2, 3, 4, 0), (4, 4, 4, 1, 1)]:
        assert fanout(net, plan.code, x, "T", power=1) <= fanout(net, plan.code, x, "T", power=2)


def test_forwarding_repetition_code_is_ambiguous():
    net, code = forward_first(2)
    w = check_unambiguous(net, code, OuterCode(((0, 0, 0), (1, 1, 1)), 2))
    assert isinstance(w, CollisionWitness) and not w
    assert w.replay(net, code)
    assert not oracles.unambiguous(net, code.tables, 2, [(0, 0, 0), (1, 1, 1)])


def test_singleton_code_is_unambiguous():
    net, code = figure1_code()
    assert check_unambiguous(net, code, [(2, 1)]) is True


def test_embedded_b1_unambiguous():
    net, outer, code = embedded_code("B2-q4-10")
    assert check_unambiguous(net, code, outer) is True
    assert oracles.unambiguous(net, code.tables, 4, outer.words)


def test_outer_code_validation():
    with pytest.raises(ValueError):
        OuterCode(((0, 1), (0, 1)), 2)
    with pytest.raises(ValueError):
        OuterCode(((0, 2),), 2)
    with pytest.raises(ValueError):
        OuterCode(((0, 1), (0,)), 2)


def test_attack_check():
    net = diamond(2)
    Attack.from_dict(net, {"e1": 1}).check(net, 2)
    with pytest.raises(ValueError):
        Attack.from_dict(net, {"e4": 1}).check(net, 2)
    with pytest.raises(ValueError):
        Attack.from_dict(net, {"e1": 1, "e2": 0}).check(net, 2)


def test_network_code_requires_tables():
    with pytest.raises(NetworkError):
        NetworkCode(diamond(2), 2, {})
    with pytest.raises(ValueError):
        NetworkCode(diamond(2), 2, {"V2": np.full((4, 1), 2)})


def _random_code(draw, net, q):
    tables = {}
    for v in net.intermediates:
        din, dout = net.in_degree(v), net.out_degree(v)
        flat = draw(st.lists(st.integers(0, q - 1), min_size=q**din * dout, max_size=q**din * dout))
        tables[v] = np.array(flat).reshape(q**din, dout)
    return NetworkCode(net, q, tables)


@st.composite
def instances(draw):
    net = draw(st.sampled_from([diamond(2), diamond(3), family_b(1, 2), s_family(1, 1, 1, 2), figure1_network(2)]))
    q = net.q
    code = _random_code(draw, net, q)
    words = list(itertools.product(range(q), repeat=net.n_source_edges))
    outer = draw(st.lists(st.sampled_from(words), min_size=1, max_size=4, unique=True))
    return net, code, outer


@settings(max_examples=120, deadline=None)
@given(instances())
def test_unambiguity_matches_oracle(inst):
    net, code, outer = inst
    got = check_unambiguous(net, code, outer)
    assert (got is True) == oracles.unambiguous(net, code.tables, code.q, outer)
    if got is not True:
        assert got.replay(net, code)
        got.attack.check(net, code.q)
        got.attack2.check(net, code.q)


@settings(max_examples=60, deadline=None)
@given(instances(), st.data())
def test_transmit_matches_oracle(inst, data):
    net, code, outer = inst
    atk = data.draw(st.sampled_from(oracles.attacks(net.vulnerable, net.power, code.q)))
    for x in outer:
        assert transmit(net, code, x, atk) == oracles.evaluate(net, code.tables, code.q, x, atk)


@settings(max_examples=40, deadline=None)
@given(instances())
def test_witness_is_smallest_pair(inst):
    net, code, outer = inst
    w = find_collision(net, code, outer)
    words = sorted(outer)
    bad = [(x, y) for x, y in itertools.combinations(words, 2)
           if not oracles.unambiguous(net, code.tables, code.q, [x, y])]
    if not bad:
        assert w is None
    else:
        assert (w.x, w.x2) == bad[0]


@settings(max_examples=40, deadline=None)
@given(instances())
def test_fanout_monotone_in_vulnerable_set(inst):
    net, code, outer = inst
    U = sorted(net.vulnerable)
    for x in outer:
        for term in net.terminals:
            assert fanout(net, code, x, term, vulnerable=U[:-1]) <= fanout(net, code, x, term, vulnerable=U)
