from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oneshot.channel import NetworkCode, OuterCode, check_unambiguous
from oneshot.constructions import embedded_code
from oneshot.io import (
    ParseError,
    format_inner,
    format_network,
    format_outer,
    parse_inner,
    parse_network,
    parse_outer,
    read_network,
)
from oneshot.netmodel import NetworkError, diamond, family_e, figure1_network, figure5_network, mu


def bundled(name):
    return resources.files("oneshot") / "data" / name


def same_network(a, b, name=True):
    return (a.vertices == b.vertices and a.edges == b.edges and a.source == b.source
            and a.terminals == b.terminals and a.vulnerable == b.vulnerable
            and a.power == b.power and a.q == b.q and (a.name == b.name or not name))


def test_bundled_diamond():
    net = read_network(bundled("diamond.net"))
    assert net.q == 3 and net.power == 1
    assert same_network(net, diamond(3), name=False)


def test_bundled_fig1():
    net = read_network(bundled("fig1.net"))
    assert mu(net) == 2
    assert net.edge_order == figure1_network(3).edge_order


@pytest.mark.parametrize("net", [diamond(3), family_e(3, 4), figure1_network(3), figure5_network(2)])
def test_network_round_trip(net):
    assert same_network(parse_network(format_network(net)), net)


def test_terminal_with_outgoing_edge_is_rejected():
    text = "alphabet 2\nsource S\nvertex V\nterminal T\nedge e0 S V\nedge e2 V T\nedge e1 T S\n"
    with pytest.raises(NetworkError):
        parse_network(text)


@pytest.mark.parametrize("text,line", [
    ("alphabet x\nsource S\n", 1),
    ("source S\nsource R\n", 2),
    ("source S\nedge e1 S T bogus\n", 2),
    ("source S\nfrobnicate\n", 2),
    ("alphabet 1\nsource S\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_network(text, "x.net")
    assert exc.value.line == line and f"x.net:{line}" in str(exc.value)


def test_missing_source():
    with pytest.raises(ParseError):
        parse_network("alphabet 2\n")


def test_outer_round_trip_and_errors():
    outer = OuterCode(((0, 1, 2), (2, 2, 0)), 3)
    assert parse_outer(format_outer(outer), 3).words == outer.words
    assert parse_outer("(0, 1)\n# c\n1,0\n", 2).words == ((0, 1), (1, 0))
    with pytest.raises(ParseError):
        parse_outer("", 2)
    with pytest.raises(ParseError):
        parse_outer("0,a\n", 2)
    with pytest.raises(ParseError):
        parse_outer("0,2\n", 2)


@pytest.mark.parametrize("cid", ["B2-q4-10", "S312-q2-6"])
def test_inner_round_trip_embedded(cid):
    net, outer, code = embedded_code(cid)
    for skip in (False, True):
        back = parse_inner(format_inner(net, code, skip_identity=skip), net, code.q)
        for v in net.intermediates:
            assert np.array_equal(back.tables[v], code.tables[v])
    back_outer = parse_outer(format_outer(outer), code.q)
    assert check_unambiguous(net, back, back_outer) == check_unambiguous(net, code, outer)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9))
def test_inner_round_trip_random(flat):
    net = diamond(3)
    code = NetworkCode(net, 3, {"V2": np.array(flat).reshape(9, 1)})
    back = parse_inner(format_inner(net, code, skip_identity=True), net, 3)
    assert np.array_equal(back.tables["V2"], code.tables["V2"])
    assert np.array_equal(back.tables["V1"], code.tables["V1"])


def test_skip_identity_omits_blocks():
    net = diamond(3)
    fwd = NetworkCode.from_functions(net, 3, {"V2": lambda a, b: a})
    text = format_inner(net, fwd, skip_identity=True)
    assert "function V1" not in text and "function V2" in text


@pytest.mark.parametrize("text", [
    "function V9\n",
    "0 -> 0\n",
    "function V2\n0,0 -> 0,1\n",
    "function V2\n0,0 -> 0\n0,0 -> 1\n",
    "function V2\n0,0 -> 3\n",
    "function V2\n0,0 -> 0\n",
    "function V2\n" + "".join(f"{a},{b} -> 0\n" for a in range(3) for b in range(3)) + "function V2\n",
])
def test_inner_parse_errors(text):
    with pytest.raises(ParseError):
        parse_inner(text, diamond(3), 3)
