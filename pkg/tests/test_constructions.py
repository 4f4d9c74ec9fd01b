import itertools

import pytest

import oracles
from oneshot.channel import check_unambiguous
from oneshot.constructions import (
    EMBEDDED_IDS,
    OpenCase,
    embedded_code,
    family_e_capacity,
    family_e_construct,
    family_e_formula,
    family_e_literal_even_code,
    max_code_hamming3,
    mds_parity_code,
    min_distance,
    repetition_code,
    s_family_bounds,
    s_family_construct,
    s_family_upper_exponent,
)
from oneshot.netmodel import diamond, family_e, s_family, singleton_bound
from oneshot.search import joint_search


def brute_min_distance(words):
    return min(sum(a != b for a, b in zip(x, y)) for x, y in itertools.combinations(words, 2))


def test_family_e_capacity_values():
    assert [family_e_capacity(1, q) for q in range(2, 8)] == [q - 1 for q in range(2, 8)]
    assert family_e_capacity(4, 9) == 3
    assert family_e_capacity(2, 2) == 1
    # the formula reaches 0 when q is too small; one codeword still works
    assert family_e_formula(3, 2) == 0 and family_e_capacity(3, 2) == 1


@pytest.mark.parametrize("t,q", [(1, 3), (3, 7), (2, 2), (2, 5), (4, 9), (1, 2)])
def test_family_e_construct_examples(t, q):
    plan = family_e_construct(t, q)
    net = family_e(t, q)
    assert len(plan.outer) == family_e_capacity(t, q)
    assert check_unambiguous(net, plan.code, plan.outer) is True
    assert all(len(set(w)) == 1 for w in plan.outer)


def test_family_e_t1_matches_diamond_capacity():
    for q in (2, 3):
        plan = family_e_construct(1, q)
        assert len(plan.outer) == q - 1
        assert joint_search(diamond(q), q, q).status == "infeasible"


def test_family_e_decoder_recovers_codeword():
    plan = family_e_construct(2, 5)
    net = family_e(2, 5)
    from oneshot.channel import fanout

    for w in plan.outer:
        for r in fanout(net, plan.code, w, "T"):
            assert plan.decode_word(r) == w


def test_family_e_small_oracle_capacity():
    # E_1 over 2 symbols is the binary Diamond network; brute force agrees
    assert oracles.max_code_size(family_e(1, 2), 2) == family_e_capacity(1, 2)


def test_literal_even_counts_scheme_is_ambiguous():
    code, outer = family_e_literal_even_code(2, 4)
    w = check_unambiguous(family_e(2, 4), code, outer)
    assert w is not True and w.replay(family_e(2, 4), code)


@pytest.mark.parametrize("n,q", [(3, 2), (3, 5), (4, 3), (4, 4), (4, 5), (4, 7), (5, 4), (5, 5), (5, 7)])
def test_mds_parity_code(n, q):
    code = mds_parity_code(n, q)
    assert len(code) == q ** (n - 2)
    assert brute_min_distance(code.words) == 3 == min_distance(code.words)


def test_mds_needs_long_enough_alphabet():
    assert mds_parity_code(5, 2) is None
    assert mds_parity_code(4, 2) is None


@pytest.mark.parametrize("n,q,want", [(4, 2, 2), (5, 2, 4), (4, 3, 9), (2, 3, 1), (2, 5, 1), (3, 2, 2), (3, 3, 3)])
def test_max_code_hamming3(n, q, want):
    res = max_code_hamming3(n, q)
    assert res.exact and res.value == want
    if res.code is not None and len(res.code) > 1:
        assert brute_min_distance(res.code.words) >= 3
    if q**n <= 32:
        assert oracles.hamming_max_code(n, q) == want


def test_hamming3_matches_mds_size():
    assert max_code_hamming3(4, 3).value == len(mds_parity_code(4, 3))


@pytest.mark.parametrize("a,b,s", list(itertools.product(range(1, 4), range(0, 3), range(1, 4))))
def test_upper_exponent_is_the_cut_bound(a, b, s):
    assert singleton_bound(s_family(a, b, s)).value == s_family_upper_exponent(a, b, s)


def test_s_family_bounds_examples():
    rep = s_family_bounds(1, 1, 2, 4)
    assert (rep.lower, rep.upper) == (10, 11)
    rep = s_family_bounds(3, 1, 2, 2)
    assert rep.exact and rep.lower == 6
    rep = s_family_bounds(2, 1, 1, 5)
    assert rep.exact and rep.lower == 5
    rep = s_family_bounds(3, 1, 1, 2)
    assert rep.exact and rep.lower == 2


@pytest.mark.parametrize("a,b,s,q", [(a, b, s, q) for a in range(1, 5) for b in range(0, 4)
                                     for s in range(1, 5) for q in range(2, 6)])
def test_bracket_is_consistent(a, b, s, q):
    rep = s_family_bounds(a, b, s, q, budget=2000)
    assert rep.lower <= (rep.upper if rep.upper is not None else rep.lower)
    assert rep.upper is None or rep.upper <= q ** s_family_upper_exponent(a, b, s)


@pytest.mark.parametrize("a,b,s,q,size", [(2, 1, 1, 3, 3), (3, 1, 2, 4, 64), (1, 3, 1, 2, 2), (1, 2, 1, 2, 2)])
def test_s_family_construct(a, b, s, q, size):
    outer, code = s_family_construct(a, b, s, q)
    assert len(outer) == size
    assert check_unambiguous(s_family(a, b, s, q), code, outer) is True


def test_s_family_construct_repetition_shape():
    outer, _ = s_family_construct(2, 1, 1, 3)
    assert set(outer.words) == {(x,) * 4 for x in range(3)}


def test_s_family_construct_open_case():
    with pytest.raises(OpenCase):
        s_family_construct(1, 1, 2, 5)
    outer, code = s_family_construct(1, 1, 2, 5, allow_open=True)
    assert check_unambiguous(s_family(1, 1, 2, 5), code, outer) is True


@pytest.mark.parametrize("cid,size,first", [("B2-q4-10", 10, (0, 1, 2, 2)), ("B2-q5-16", 16, (0, 0, 0, 0)),
                                            ("S312-q2-6", 6, (0, 0, 0, 1, 1, 0))])
def test_embedded_shapes(cid, size, first):
    net, outer, code = embedded_code(cid)
    assert len(outer) == size and outer.words[0] == first


def test_embedded_s312_q3_contains_word():
    _, outer, _ = embedded_code("S312-q3-15")
    assert len(outer) == 15 and (2, 2, 1, 0, 1, 0) in outer


@pytest.mark.parametrize("cid", EMBEDDED_IDS)
def test_embedded_tables_are_total(cid):
    net, outer, code = embedded_code(cid)
    pre = code.preimages("V2")
    n_in = net.in_degree("V2")
    assert sum(len(v) for v in pre.values()) == code.q**n_in
    assert len({u for v in pre.values() for u in v}) == code.q**n_in


@pytest.mark.parametrize("cid", ["B2-q4-10", "S312-q2-6", "S312-q3-15"])
def test_embedded_pairs_verify(cid):
    net, outer, code = embedded_code(cid)
    assert check_unambiguous(net, code, outer) is True
    assert oracles.unambiguous(net, code.tables, code.q, outer.words)


def test_embedded_b2_q5_collision_is_real():
    # the embedded pair is ambiguous; confirm with the slow simulator
    net, outer, code = embedded_code("B2-q5-16")
    w = check_unambiguous(net, code, outer)
    assert w is not True and w.replay(net, code)
    assert not oracles.unambiguous(net, code.tables, 5, [w.x, w.x2])


def test_unknown_embedded_id():
    with pytest.raises(KeyError):
        embedded_code("nope")


def test_repetition_code():
    assert repetition_code(3, 2).words == ((0, 0, 0), (1, 1, 1))
