"""Closed-form capacities and explicit unambiguous (outer, inner) pairs.

Every construction here is checked with :func:`channel.check_unambiguous`
before it is returned.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .embedded_data import EMBEDDED
from .channel import NetworkCode, OuterCode, all_tuples, check_unambiguous
from .gf import field as gf_field
from .gf import is_supported
from .netmodel import (
    CapacityReport,
    Evidence,
    Network,
    family_b,
    family_e,
    s_family,
)
from .search import hamming_conflict_graph, max_independent_set

__all__ = [
    "EMBEDDED_IDS",
    "FamilyEPlan",
    "HammingCodeResult",
    "OpenCase",
    "embedded_code",
    "family_e_capacity",
    "family_e_construct",
    "family_e_formula",
    "family_e_literal_even_code",
    "max_code_hamming3",
    "mds_parity_code",
    "min_distance",
    "repetition_code",
    "s_family_bounds",
    "s_family_construct",
    "s_family_upper_exponent",
]


class OpenCase(Exception):
    """No construction is known for these parameters."""


def hamming(x, y) -> int:
    return sum(a != b for a, b in zip(x, y))


def min_distance(words) -> int | None:
    """Minimum pairwise Hamming distance, None for fewer than two words."""
    W = np.asarray(list(words), dtype=np.int64)
    if len(W) < 2:
        return None
    best = W.shape[1]
    for i in range(len(W) - 1):
        d = (W[i + 1 :] != W[i]).sum(axis=1).min()
        best = min(best, int(d))
    return best


def repetition_code(n: int, q: int, symbols=None) -> OuterCode:
    symbols = range(q) if symbols is None else symbols
    return OuterCode(tuple((s,) * n for s in symbols), q)


# ---------------------------------------------------------------------------
# distance-3 codes


def mds_parity_code(n: int, q: int) -> OuterCode | None:
    """[n, n-2, 3] code with parity checks sum(c) = 0 and sum(h_i c_i) = 0.

    The check matrix has columns (1, h_i) for distinct field elements h_i,
    plus the column (0, 1) when n = q + 1.  Any two columns are independent,
    so the minimum distance is 3.  Returns None when n > q + 1.
    """
    if n < 3:
        raise ValueError("length must be at least 3")
    if not is_supported(q):
        raise ValueError(f"q={q} is not a supported prime power")
    if n > q + 1:
        return None
    if q ** (n - 2) > 1 << 20:
        raise ValueError(f"{q}^{n - 2} codewords is too many to list")
    F = gf_field(q)
    cols = [(1, h) for h in range(min(n, q))]
    if n == q + 1:
        cols.append((0, 1))
    k = n - 2
    # info coordinates are the first k; the last two are solved for.
    (a1, b1), (a2, b2) = cols[k], cols[k + 1]
    det = F.sub(F.mul(a1, b2), F.mul(a2, b1))
    inv = F.inv(det)
    words = []
    for info in itertools.product(range(q), repeat=k):
        s0 = s1 = 0
        for c, (a, b) in zip(info, cols):
            s0 = F.add(s0, F.mul(a, c))
            s1 = F.add(s1, F.mul(b, c))
        # solve a1 u + a2 v = -s0, b1 u + b2 v = -s1
        r0, r1 = F.neg(s0), F.neg(s1)
        u = F.mul(inv, F.sub(F.mul(r0, b2), F.mul(a2, r1)))
        v = F.mul(inv, F.sub(F.mul(a1, r1), F.mul(r0, b1)))
        words.append(info + (u, v))
    return OuterCode(tuple(words), q)


def shortened_hamming_size(n: int, q: int) -> int:
    """Size of a q-ary Hamming code shortened to length n (q a prime power)."""
    r = 1
    while (q**r - 1) // (q - 1) < n:
        r += 1
    return q ** max(n - r, 0)


def sphere_packing_bound(n: int, q: int) -> int:
    return q**n // (1 + n * (q - 1))


@dataclass
class HammingCodeResult:
    """A_q(n,3) as an exact value or a bracket, with a witness code."""

    n: int
    q: int
    lower: int
    upper: int
    # a code attaining ``lower``; None when it is too large to list
    code: OuterCode | None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"A_{self.q}({self.n},3) only bracketed: {self.lower}..{self.upper}")
        return self.lower


# above this many words the exact search is not attempted
HAMMING_SEARCH_WORDS = 512


def max_code_hamming3(n: int, q: int, budget: int | None = 20_000) -> HammingCodeResult:
    """Largest length-n code over q symbols with minimum distance >= 3.

    Exact via maximum independent set on the distance-<=2 graph (the graph is
    vertex transitive, so the all-zero word is forced in).  When the budget
    runs out, or the space is too large to search, returns a bracket between
    the best code found or constructed and the Singleton/sphere-packing bounds.
    """
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    if n < 3:
        return HammingCodeResult(n, q, 1, 1, OuterCode(((0,) * n,), q))
    upper = min(q ** (n - 2), sphere_packing_bound(n, q))
    best_code = OuterCode(((0,) * n,), q)
    if is_supported(q) and n <= q + 1:
        # an MDS code meets the Singleton bound; list it only when small
        size = q ** (n - 2)
        mds = mds_parity_code(n, q) if size <= 1 << 16 else None
        return HammingCodeResult(n, q, size, size, mds)
    if q**n > 1 << 20:
        return HammingCodeResult(n, q, len(best_code), upper, best_code)
    if q**n <= HAMMING_SEARCH_WORDS:
        g = hamming_conflict_graph(n, q, 3)
        res = max_independent_set(g, budget=budget, forced=[0])
        code = OuterCode(tuple(g.words[i] for i in res.vertices), q)
        if res.optimal:
            return HammingCodeResult(n, q, len(code), len(code), code)
        best_code = code
        upper = min(upper, res.upper)
    lower = len(best_code)
    if is_supported(q) and shortened_hamming_size(n, q) <= 1 << 16:
        lower = max(lower, shortened_hamming_size(n, q))
    if lower > len(best_code):
        best_code = _shortened_hamming(n, q)
    return HammingCodeResult(n, q, len(best_code), upper, best_code)


def _shortened_hamming(n: int, q: int) -> OuterCode:
    """Null space of a check matrix with pairwise independent columns."""
    F = gf_field(q)
    r = 1
    while (q**r - 1) // (q - 1) < n:
        r += 1
    # projective points: first nonzero coordinate equal to 1
    cols = []
    for v in itertools.product(range(q), repeat=r):
        nz = [x for x in v if x]
        if nz and next(x for x in v if x) == 1:
            cols.append(v)
    # put unit vectors last so the last r coordinates can be solved directly
    units = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    others = [c for c in cols if c not in units]
    cols = others[: n - r] + units
    k = n - r
    words = []
    for info in itertools.product(range(q), repeat=k):
        syn = [0] * r
        for c, col in zip(info, cols):
            for i in range(r):
                syn[i] = F.add(syn[i], F.mul(col[i], c))
        words.append(info + tuple(F.neg(s) for s in syn))
    return OuterCode(tuple(words), q)


# ---------------------------------------------------------------------------
# Family E


def _split_power(t: int) -> tuple[int, int]:
    if t < 1:
        raise ValueError("adversarial power must be >= 1")
    return t // 2, t % 2


def family_e_formula(t: int, q: int) -> int:
    """floor((q - alpha)/(m + 1)) with t = 2m + alpha."""
    m, alpha = _split_power(t)
    return (q - alpha) // (m + 1)


def family_e_capacity(t: int, q: int) -> int:
    """Largest unambiguous code size on E_t over q symbols.

    Equals :func:`family_e_formula` whenever that is positive.  When the
    formula gives 0 (q too small for the power) a single codeword is still
    trivially unambiguous, so the answer is 1.
    """
    if q < 2:
        raise ValueError("alphabet needs at least 2 symbols")
    return max(1, family_e_formula(t, q))


@dataclass
class FamilyEPlan:
    """Output-state scheme for E_t: vertex tables plus the terminal's decoder.

    V1 and V2 each summarise their inputs as a state (symbol, slack) where
    slack counts how far the leading symbol is from filling every input,
    or as "!" when no symbol clears the vertex's threshold.  States are
    packed into single alphabet symbols.
    """

    t: int
    q: int
    m: int
    alpha: int
    sub_alphabet: tuple[int, ...]
    code: NetworkCode
    outer: OuterCode
    decode: dict[tuple[int, int], int] = field(default_factory=dict)

    def decode_word(self, received) -> tuple[int, ...]:
        sym = self.decode[tuple(received)]
        return (sym,) * (2 * self.t + 1)


def _state_symbol(state, m: int, odd: bool) -> int:
    if state == "!":
        return 0
    sym, slack = state
    return (1 if odd else 0) + sym * (m + 1) + slack


def _symbol_state(x: int, m: int, odd: bool, a: int):
    if odd:
        if x == 0:
            return "!"
        x -= 1
    sym, slack = divmod(x, m + 1)
    if sym >= a:
        return None
    return sym, slack


def _e_state(inputs, n_in: int, threshold: int, a: int, fallback):
    """(symbol, n_in - count) for the sub-alphabet symbol seen >= threshold times."""
    counts = Counter(s for s in inputs if s < a)
    for sym, c in counts.items():
        if c >= threshold:
            return sym, n_in - c
    return fallback(counts)


def family_e_construct(t: int, q: int) -> FamilyEPlan:
    """Repetition code over a sub-alphabet with state-summarising vertices.

    Odd t = 2m+1: V1 (2m+1 inputs) reports (i, 2m+1-count) if some symbol i
    occurs at least m+1 times, else "!"; V2 (2m+2 inputs) does the same with
    threshold m+2.  Even t = 2m: V1 (2m inputs) uses threshold m+1 and
    otherwise reports (smallest most frequent symbol, m); V2 (2m+1 inputs)
    uses threshold m+1 and otherwise reports (0, m).  In both cases slacks
    lie in 0..m, and the terminal decodes to V1's symbol iff V2's slack
    exceeds V1's (a "!" defers to the other side).

    Counting the distance to a full agreement, rather than the raw count,
    is what lets one comparison rule serve both vertices even though they
    have different numbers of inputs.
    """
    m, alpha = _split_power(t)
    odd = alpha == 1
    a = family_e_formula(t, q)
    net = family_e(t)
    if a < 1:
        # one codeword, constant tables
        outer = OuterCode(((0,) * (2 * t + 1),), q)
        code = NetworkCode(net, q, {v: np.zeros((q ** net.in_degree(v), 1), dtype=np.int64) for v in net.intermediates})
        plan = FamilyEPlan(t, q, m, alpha, (0,), code, outer, {r: 0 for r in itertools.product(range(q), repeat=2)})
        _verify(net, plan.code, plan.outer)
        return plan
    n1, n2 = net.in_degree("V1"), net.in_degree("V2")
    if odd:
        th1, th2 = m + 1, m + 2
        fb1 = fb2 = lambda counts: "!"
    else:
        th1, th2 = m + 1, m + 1

        def fb1(counts):
            if not counts:
                return 0, m
            top = max(counts.values())
            return min(s for s, c in counts.items() if c == top), m

        def fb2(counts):
            return 0, m

    def table(n_in, th, fb):
        rows = [
            (_state_symbol(_e_state(u, n_in, th, a, fb), m, odd),)
            for u in itertools.product(range(q), repeat=n_in)
        ]
        return np.array(rows, dtype=np.int64)

    code = NetworkCode(net, q, {"V1": table(n1, th1, fb1), "V2": table(n2, th2, fb2)})
    outer = repetition_code(2 * t + 1, q, range(a))
    decode = {}
    for r1, r2 in itertools.product(range(q), repeat=2):
        s1 = _symbol_state(r1, m, odd, a)
        s2 = _symbol_state(r2, m, odd, a)
        if s1 is None or s2 is None or (s1 == "!" and s2 == "!"):
            decode[(r1, r2)] = 0  # never received
        elif s1 == "!":
            decode[(r1, r2)] = s2[0]
        elif s2 == "!":
            decode[(r1, r2)] = s1[0]
        else:
            decode[(r1, r2)] = s1[0] if s2[1] >= s1[1] + 1 else s2[0]
    plan = FamilyEPlan(t, q, m, alpha, tuple(range(a)), code, outer, decode)
    _verify(net, code, outer)
    return plan


def family_e_literal_even_code(t: int, q: int) -> tuple[NetworkCode, OuterCode]:
    """Even-t scheme that reports raw occurrence counts instead of slacks.

    V2 reports (j, count) for count in m+1..2m (2m+1 is reported as 2m) and
    (0, m) without a majority; V1 reports (i, count) for count in m+1..2m and
    otherwise (smallest most frequent symbol, m).  Kept to show that with raw
    counts the two vertices' states are not comparable: at t=2 it is
    ambiguous (see the tests).
    """
    m, alpha = _split_power(t)
    if alpha:
        raise ValueError("even power only")
    a = q // (m + 1)
    net = family_e(t)

    def enc(sym, r):
        return sym * (m + 1) + (r - m)

    def v1(*u):
        counts = Counter(s for s in u if s < a)
        for s, c in counts.items():
            if c >= m + 1:
                return enc(s, min(c, 2 * m))
        if not counts:
            return enc(0, m)
        top = max(counts.values())
        return enc(min(s for s, c in counts.items() if c == top), m)

    def v2(*u):
        counts = Counter(s for s in u if s < a)
        for s, c in counts.items():
            if c >= m + 1:
                return enc(s, min(c, 2 * m))
        return enc(0, m)

    code = NetworkCode.from_functions(net, q, {"V1": v1, "V2": v2})
    return code, repetition_code(2 * t + 1, q, range(a))


def _verify(net: Network, code: NetworkCode, outer: OuterCode):
    verdict = check_unambiguous(net, code, outer)
    if verdict is not True:
        raise AssertionError(f"construction on {net.name} is ambiguous: {verdict}")


# ---------------------------------------------------------------------------
# S_{a,b,s}

# Bounds on Family B quoted from earlier work, (s, q) -> (lower, upper).
CITED_FAMILY_B = {
    (4, 3): (35, 38),
    (2, 4): (9, 11),
    (3, 4): (31, 37),
    (2, 5): (15, 17),
}


def s_family_upper_exponent(a: int, b: int, s: int) -> int:
    """Cut-set exponent for S_{a,b,s} with the source edges vulnerable, t = 1."""
    if b == 0:
        return a + s - 2
    return s + max(0, a - 2)


def _forwarding_pair(net: Network, q: int, words, positions, first=False) -> tuple[OuterCode, NetworkCode]:
    """Place ``words`` on the given source coordinates (others 0); V1 identity, V2 forwards.

    V2 forwards its last s inputs, or its first s with ``first``.
    """
    n = net.n_source_edges
    out = []
    for w in words:
        x = [0] * n
        for p, s in zip(positions, w):
            x[p] = s
        out.append(tuple(x))
    tables = {}
    v2_in = net.in_degree("V2")
    v2_out = net.out_degree("V2")
    inputs = all_tuples(v2_in, q)
    tables["V2"] = inputs[:, :v2_out] if first else inputs[:, v2_in - v2_out :]
    return OuterCode(tuple(out), q), NetworkCode(net, q, tables)


def _decode_at_v2_pair(net: Network, q: int, inner: OuterCode) -> tuple[OuterCode, NetworkCode]:
    """V2 corrects one error in a distance-3 code on its first inputs and emits the word's index."""
    a = net.in_degree("V1")
    n2 = net.in_degree("V2")
    s = net.out_degree("V2")
    L = inner.length
    words = list(inner.words)
    W = np.asarray(words, dtype=np.int64)
    inputs = all_tuples(n2, q)
    tab = np.zeros((inputs.shape[0], s), dtype=np.int64)
    digits = [tuple(int(d) for d in np.base_repr(i, q).zfill(s)) for i in range(len(words))]
    for r, u in enumerate(inputs):
        d = (W != u[:L]).sum(axis=1)
        i = int(np.argmin(d))
        if d[i] <= 1:
            tab[r] = digits[i]
    outer = []
    for w in words:
        x = [0] * a + list(w) + [0] * (n2 - L)
        outer.append(tuple(x))
    return OuterCode(tuple(outer), q), NetworkCode(net, q, {"V2": tab})


def _best_s_family_pair(a: int, b: int, s: int, q: int) -> tuple[OuterCode, NetworkCode]:
    net = s_family(a, b, s)
    if (a, b, s) == (1, 1, 1):
        plan = family_e_construct(1, q)
        # E_1 and S_{1,1,1} are the same network
        return plan.outer, NetworkCode(net, q, plan.code.tables)
    if (a, b, s) == (3, 1, 2) and q in (2, 3):
        _, outer, code = embedded_code(f"S312-q{q}-{6 if q == 2 else 15}")
        return outer, code
    if (a, b, s, q) == (1, 1, 2, 4):
        _, outer, code = embedded_code("B2-q4-10")
        return outer, code
    if b == 0 or (a == 1 and b == 1):
        # identity at V1, forwarding at V2, distance-3 code on what T sees
        n = a + s
        res = max_code_hamming3(n, q)
        if res.code is None:
            raise OpenCase(f"A_{q}({n},3) code too large to list")
        positions = list(range(a)) + list(range(a + b, a + b + s))
        return _forwarding_pair(net, q, res.code.words, positions)
    if a == 1:
        # a distance-3 code on V2's inputs, decoded at V2
        if s == 1:
            inner = repetition_code(3, q)
        elif is_supported(q) and q >= s + 1:
            inner = mds_parity_code(s + 2, q)
        else:
            res = max_code_hamming3(b + s, q)
            if res.code is None:
                raise OpenCase(f"A_{q}({b + s},3) code too large to list")
            inner = OuterCode(res.code.words[: q**s], q)
        return _decode_at_v2_pair(net, q, inner)
    if a == 3 and s == 1 and q == 2 and b >= 2:
        # repetition on V1's edges; repetition on 3 of V2's inputs, majority at V2
        words = [(x,) * 3 + (y,) * 3 + (0,) * (b - 2) for x, y in itertools.product(range(2), repeat=2)]
        tab = np.array([[int(sum(u[:3]) >= 2)] for u in all_tuples(b + 1, 2)], dtype=np.int64)
        return OuterCode(tuple(words), 2), NetworkCode(net, 2, {"V2": tab})
    if a + s == 3:
        # a = 2, s = 1: repetition everywhere, V2 forwards its first input
        words = [(c,) * net.n_source_edges for c in range(q)]
        return _forwarding_pair(net, q, words, range(net.n_source_edges), first=True)
    n = a + s if a > 2 else s + 2
    positions = list(range(a)) + list(range(a + b, a + b + s))
    if is_supported(q) and n <= q + 1 and q ** (n - 2) <= 1 << 16:
        return _forwarding_pair(net, q, mds_parity_code(n, q).words, positions)
    res = max_code_hamming3(a + s, q)
    if res.code is None:
        raise OpenCase(f"A_{q}({a + s},3) code too large to list")
    return _forwarding_pair(net, q, res.code.words, positions)


def s_family_construct(a: int, b: int, s: int, q: int, allow_open: bool = False) -> tuple[OuterCode, NetworkCode]:
    """Explicit unambiguous pair for S_{a,b,s} over q symbols.

    Uses repetition/majority, MDS forwarding, decoding at V2, or an embedded
    pair, whichever applies.  Raises :class:`OpenCase` when the result does not
    reach the best known upper bound (Family B, small alphabets with b > 0,
    bracketed A_q(n,3)), unless ``allow_open`` is set, in which case the best
    available pair is returned anyway.
    """
    outer, code = _best_s_family_pair(a, b, s, q)
    _verify(s_family(a, b, s), code, outer)
    if not allow_open:
        rep = s_family_bounds(a, b, s, q)
        if rep.upper is None or len(outer) < rep.upper:
            raise OpenCase(
                f"S_{a},{b},{s} over {q} symbols: best construction has {len(outer)} words, "
                f"capacity bracket {rep.lower}..{rep.upper}"
            )
    return outer, code


def s_family_bounds(a: int, b: int, s: int, q: int, budget: int | None = 20_000) -> CapacityReport:
    """Best known bracket on the largest unambiguous code size of S_{a,b,s}."""
    if a < 1 or s < 1 or b < 0 or q < 2:
        raise ValueError("need a, s >= 1, b >= 0, q >= 2")
    exp = s_family_upper_exponent(a, b, s)
    ev = [Evidence("upper", q**exp, "bound", f"cut-set bound, exponent {exp}")]
    lo, hi = 1, q**exp

    def lower(size, source, note):
        nonlocal lo
        ev.append(Evidence("lower", size, source, note))
        lo = max(lo, size)

    def upper(size, source, note):
        nonlocal hi
        ev.append(Evidence("upper", size, source, note))
        hi = min(hi, size)

    if b == 0:
        res = max_code_hamming3(a + s, q, budget)
        if res.exact:
            lower(res.lower, "search", f"A_{q}({a + s},3) with forwarding")
            upper(res.upper, "search", f"A_{q}({a + s},3): identity vertices are optimal")
        else:
            lower(res.lower, "construction", f"distance-3 code of length {a + s}")
            upper(res.upper, "bound", f"bracket on A_{q}({a + s},3)")
    elif a == 1 and b == 1:
        if s == 1:
            lower(q - 1, "construction", "Diamond network scheme")
            upper(q - 1, "cited", "Diamond network theorem")
        else:
            res = max_code_hamming3(s + 1, q, budget)
            lower(res.lower, "construction", f"forwarding a length-{s + 1} distance-3 code")
            if (s, q) in CITED_FAMILY_B:
                clo, chi = CITED_FAMILY_B[(s, q)]
                lower(clo, "cited", "earlier Family B bounds")
                upper(chi, "cited", "earlier Family B bounds")
            if (s, q) == (2, 4):
                lower(10, "construction", "embedded pair B2-q4-10, machine verified")
    elif a == 1:
        res_v2 = max_code_hamming3(b + s, q, budget)
        size = min(q**s, res_v2.lower)
        lower(size, "construction", "distance-3 code on V2's inputs, decoded at V2")
        if q >= s + 1:
            lower(q**s, "construction", f"[{s + 2},{s},3] MDS code decoded at V2")
    elif (a, b, s) == (2, 1, 1) or (a == 3 and s == 1):
        if (a, s) == (3, 1) and (b, q) == (1, 2):
            lower(2, "construction", "repetition code, identity at V1")
            upper(2, "cited", "exhaustive 16 x 120 enumeration; re-checked by joint search")
        else:
            lower(q**exp, "construction", "repetition / [4,2,3] forwarding")
    elif (a, b, s) == (3, 1, 2) and q in (2, 3):
        if q == 2:
            lower(6, "construction", "embedded pair S312-q2-6, machine verified")
            upper(6, "cited", "solver proof that no code of size 7 exists")
        else:
            lower(15, "construction", "embedded pair S312-q3-15, machine verified")
    if b != 0 and not (a == 1 and b == 1) and lo < hi:
        n = a + s if a > 2 else s + 2
        if a >= 2 and q >= n - 1 and is_supported(q):
            lower(q ** (n - 2), "construction", f"[{n},{n - 2},3] MDS code, forwarding")
        elif a >= 2:
            res = max_code_hamming3(a + s, q, budget)
            lower(res.lower, "construction", f"forwarding a length-{a + s} distance-3 code")
    return CapacityReport(q, lo, hi, tuple(ev))


# ---------------------------------------------------------------------------
# embedded pairs

EMBEDDED_IDS = tuple(EMBEDDED)
_EMBEDDED_NETWORKS = {
    "B2-q4-10": (lambda: family_b(2, 4), 4),
    "B2-q5-16": (lambda: family_b(2, 5), 5),
    "S312-q2-6": (lambda: s_family(3, 1, 2, 2), 2),
    "S312-q3-15": (lambda: s_family(3, 1, 2, 3), 3),
}


def preimage_table(pre: dict, q: int, n_in: int, n_out: int) -> np.ndarray:
    """Dense table from an output -> inputs listing; every input exactly once."""
    tab = np.full((q**n_in, n_out), -1, dtype=np.int64)
    for out, ins in pre.items():
        for u in ins:
            idx = 0
            for s in u:
                idx = idx * q + s
            if tab[idx, 0] >= 0:
                raise ValueError(f"input {u} listed twice")
            tab[idx] = out
    if (tab < 0).any():
        missing = [tuple(int(s) for s in u) for u, row in zip(all_tuples(n_in, q), tab) if row[0] < 0]
        raise ValueError(f"inputs without an output: {missing[:5]}")
    return tab


def embedded_code(code_id: str) -> tuple[Network, OuterCode, NetworkCode]:
    """One of the embedded pairs, unmodified (V1 is the identity)."""
    if code_id not in EMBEDDED:
        raise KeyError(f"unknown code {code_id!r}; known: {', '.join(EMBEDDED_IDS)}")
    words, pre = EMBEDDED[code_id]
    make, q = _EMBEDDED_NETWORKS[code_id]
    net = make()
    tab = preimage_table(pre, q, net.in_degree("V2"), net.out_degree("V2"))
    return net, OuterCode(tuple(words), q), NetworkCode(net, q, {"V2": tab})
