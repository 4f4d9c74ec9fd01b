import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from oneshot.channel import OuterCode, check_unambiguous
from oneshot.gf import field
from oneshot.netmodel import Edge, Network, bottleneck_network, figure5_network
from oneshot.separability import (
    Metric,
    check_separable,
    corrects_t_errors,
    distance,
    linear_codes,
    max_t_correcting_codes,
    min_distance,
    obstruction_certificate,
)

H2, H3, R8 = Metric.hamming(2), Metric.hamming(3), Metric.rank(8)
F8 = field(8)
ALPHA = 2  # a root of x^3 + x + 1 in the polynomial-basis encoding


def rank_oracle(x, y):
    # bits of each coordinate difference form a column of a 3 x n binary matrix
    diff = [a ^ b for a, b in zip(x, y)]
    rows = [[(d >> k) & 1 for d in diff] for k in range(3)]
    return oracles.gf2_rank(rows)


def line(g):
    return [tuple(F8.mul(c, s) for s in g) for c in range(8)]


def test_hamming_distance():
    assert distance(H3, (0, 1, 2), (0, 2, 2)) == 1
    with pytest.raises(ValueError):
        distance(H3, (0, 1), (0, 1, 2))
    with pytest.raises(ValueError):
        distance(H2, (0, 2), (0, 1))


def test_rank_distance_example():
    a2 = F8.mul(ALPHA, ALPHA)
    assert distance(R8, (1, ALPHA, a2), (0, 0, 0)) == 3
    assert rank_oracle((1, ALPHA, a2), (0, 0, 0)) == 3


def test_unsupported_rank_field():
    with pytest.raises(ValueError):
        Metric.rank(6)
    with pytest.raises(ValueError):
        Metric("taxicab", 2)


words8 = st.lists(st.integers(0, 7), min_size=3, max_size=3).map(tuple)


@settings(max_examples=300, deadline=None)
@given(words8, words8, words8)
def test_metric_axioms(x, y, z):
    for m in (R8, Metric.hamming(8)):
        assert distance(m, x, y) == distance(m, y, x) >= 0
        assert (distance(m, x, y) == 0) == (x == y)
        assert distance(m, x, z) <= distance(m, x, y) + distance(m, y, z)
    assert distance(R8, x, y) == rank_oracle(x, y)
    assert distance(R8, x, y) <= distance(Metric.hamming(8), x, y)


def test_corrects_examples():
    assert corrects_t_errors([(0, 0, 0), (1, 1, 1)], 1, H2)
    assert not corrects_t_errors([(0, 0, 0), (0, 1, 1)], 1, H2)
    a2 = F8.mul(ALPHA, ALPHA)
    assert corrects_t_errors(line((1, ALPHA, a2)), 1, R8)
    with pytest.raises(ValueError):
        corrects_t_errors([], 1, H2)


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3)])
def test_corrects_matches_min_distance(n, q):
    m = Metric.hamming(q)
    for code in itertools.combinations(itertools.product(range(q), repeat=n), 2):
        assert corrects_t_errors(code, 1, m) == (min_distance(code, m) >= 3)


def test_max_codes_examples():
    codes = max_t_correcting_codes(3, 2, 1, H2, 2)
    assert sorted(codes) == sorted([((0, 0, 0), (1, 1, 1)), ((0, 0, 1), (1, 1, 0)),
                                    ((0, 1, 0), (1, 0, 1)), ((0, 1, 1), (1, 0, 0))])
    assert max_t_correcting_codes(3, 2, 1, H2, 3) == []
    assert ((0, 0, 0), (1, 1, 1), (2, 2, 2)) in max_t_correcting_codes(3, 3, 1, H3, 3)


@pytest.mark.parametrize("n,q,M", [(3, 2, 2), (4, 2, 2), (3, 3, 3), (3, 3, 2)])
def test_max_codes_match_brute_force(n, q, M):
    m = Metric.hamming(q)
    words = list(itertools.product(range(q), repeat=n))
    want = [c for c in itertools.combinations(words, M) if oracles.brute_min_distance(c) >= 3]
    assert sorted(max_t_correcting_codes(n, q, 1, m, M)) == sorted(want)


def test_linear_codes():
    lines = linear_codes(3, 8, 3, R8)
    assert len(lines) == 24
    assert all(corrects_t_errors(L, 1, R8) for L in lines[:3])
    assert len(linear_codes(3, 3, 3, H3)) == 4


def test_certificate_q3():
    codes = max_t_correcting_codes(3, 3, 1, H3, 3)
    cert = obstruction_certificate(codes, 1, 3)
    assert cert is not None and cert.verify()
    # independent ball-membership replay
    within = lambda u, c: sum(a != b for a, b in zip(u, c)) <= 1
    assert cert.i != cert.k
    assert within(cert.w, cert.code_a[cert.i]) and within(cert.w, cert.code_b[cert.j])
    assert within(cert.w2, cert.code_a[cert.k]) and within(cert.w2, cert.code_b[cert.j])


def test_certificate_rank_lines():
    a2 = F8.mul(ALPHA, ALPHA)
    a4 = F8.mul(a2, a2)
    cert = obstruction_certificate([line((1, ALPHA, a2)), line((1, ALPHA, a4))], 1, 8)
    assert cert is not None and cert.verify()


def test_single_code_has_no_certificate():
    assert obstruction_certificate([((0, 0, 0), (1, 1, 1), (2, 2, 2))], 1, 3) is None


def test_tampered_certificate_fails():
    codes = max_t_correcting_codes(3, 3, 1, H3, 3)
    cert = obstruction_certificate(codes, 1, 3)
    from dataclasses import replace

    assert not replace(cert, k=cert.i).verify()


def test_bottleneck_q2_not_separable():
    res = check_separable(bottleneck_network(2), 2, 2, H2)
    assert res.verdict == "not_separable" and res.enumerated == 256
    assert len(res.codes) == 4
    for tab in range(256):
        ci, wit = res.failure(0, 0, tab)
        code = res.network_code(0, [tab])
        assert wit.replay(res.network, code)
        assert not oracles.unambiguous(res.network, code.tables, 2, list(res.codes[ci]))


def test_bottleneck_q2_matches_oracle():
    # every one of the 256 tables at V fails some code under slow simulation
    net = bottleneck_network(2)
    codes = max_t_correcting_codes(3, 2, 1, H2, 2)
    for tab in oracles.all_tables(3, 1, 2):
        assert any(not oracles.unambiguous(net, {"V": tab}, 2, list(c)) for c in codes)


def test_bottleneck_q3_certified():
    res = check_separable(bottleneck_network(3), 3, 3, H3)
    assert res.verdict == "not_separable" and res.certificate.verify()
    assert any("certified" in n for n in res.notes)


def test_single_path_is_separable():
    net = Network(("S", "V", "T"), (Edge("e1", "S", "V"), Edge("e2", "V", "T")), "S", ("T",), frozenset(), 0, 2)
    res = check_separable(net, 2, 2, H2)
    assert res.verdict == "separable"
    assert np.array_equal(res.witness.tables["V"], np.array([[0], [1]]))
    res = check_separable(net, 2, 2, H2, fix_unary=False)
    assert res.verdict == "separable"


def test_figure5_lemma_and_witness():
    net = figure5_network(2)
    res = check_separable(net, 2, 2, H2)
    ctx = res.contexts[0]
    # tables repeating a value on 000, 011, 101, 110 always admit a collision
    for ti in range(2):
        tabs = ctx.tables_by_terminal[ti]
        repeat = np.array([len(set(v)) < 4 for v in tabs[:, [0, 3, 5, 6]].tolist()])
        assert np.all(ctx.fails[ti][repeat] >= 0)
    # the checker finds a universal code; confirm it by slow simulation
    assert res.verdict == "separable"
    for code in res.codes:
        assert check_unambiguous(net, res.witness, OuterCode(code, 2)) is True
        assert oracles.unambiguous(net, res.witness.tables, 2, list(code))


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        check_separable(bottleneck_network(2), 2, 2, H2, codes=[((0, 0, 0),)])
    with pytest.raises(ValueError):
        check_separable(bottleneck_network(2), 2, 2, H3)
