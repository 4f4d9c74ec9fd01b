import random

from hypothesis import given, settings, strategies as st

import oracles
from oneshot.sat import SAT, UNKNOWN, UNSAT, Solver, check_model, parse_dimacs, solve, to_dimacs


def test_tiny_cases():
    r = solve(2, [[1, 2], [-1]])
    assert r.status == SAT and r.value(2) and not r.value(1)
    assert solve(1, [[1], [-1]]).status == UNSAT
    assert solve(0, []).status == SAT
    assert solve(1, [[]]).status == UNSAT


def pigeonhole(n):
    """n+1 pigeons in n holes."""
    var = lambda p, h: p * n + h + 1
    cls = [[var(p, h) for h in range(n)] for p in range(n + 1)]
    for h in range(n):
        for p1 in range(n + 1):
            for p2 in range(p1 + 1, n + 1):
                cls.append([-var(p1, h), -var(p2, h)])
    return (n + 1) * n, cls


def test_pigeonhole_unsat():
    n_vars, cls = pigeonhole(5)
    assert solve(n_vars, cls).status == UNSAT


def test_budget_gives_unknown():
    n_vars, cls = pigeonhole(8)
    assert solve(n_vars, cls, max_conflicts=10).status == UNKNOWN


@st.composite
def cnfs(draw):
    n = draw(st.integers(1, 8))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(lit, min_size=1, max_size=3), min_size=0, max_size=30))
    return n, clauses


@settings(max_examples=300, deadline=None)
@given(cnfs())
def test_agrees_with_brute_force(inst):
    n, clauses = inst
    r = solve(n, clauses)
    assert (r.status == SAT) == oracles.brute_sat(n, clauses)
    if r.status == SAT:
        assert check_model(clauses, r.true_vars() | {-v for v in range(1, n + 1) if not r.value(v)}) is None


@settings(max_examples=150, deadline=None)
@given(cnfs(), st.data())
def test_assumptions(inst, data):
    n, clauses = inst
    assume = data.draw(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])),
                                max_size=3, unique_by=abs))
    r = Solver(n, clauses).solve(assumptions=assume)
    expected = oracles.brute_sat(n, clauses + [[a] for a in assume])
    assert (r.status == SAT) == expected
    if r.status == SAT:
        assert all(r.value(abs(a)) == (a > 0) for a in assume)


def test_dimacs_round_trip():
    rng = random.Random(3)
    clauses = [[rng.choice([1, -1]) * rng.randint(1, 9) for _ in range(3)] for _ in range(20)]
    text = to_dimacs(9, clauses, ["hello"])
    assert text.startswith("c hello")
    assert parse_dimacs(text) == (9, clauses)
