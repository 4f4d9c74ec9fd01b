"""Metrics, error-correcting outer codes and separability checks.

A network is separable for a metric when one network code makes every
maximum-size t-error-correcting outer code unambiguous at every terminal.
``check_separable`` decides this by enumeration for small alphabets: vertices
with one input are fixed to copy their symbol, the remaining vertices are
enumerated, and the last free vertex (whose outputs must go straight to
terminals) is handled in bulk with numpy, one terminal component at a time.
When the function space is too large, ``obstruction_certificate`` looks for
two codes whose attack balls overlap so that no single-output vertex can
separate both.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .channel import (
    CollisionWitness,
    NetworkCode,
    OuterCode,
    all_tuples,
    check_unambiguous,
    enumerate_attacks,
)
from .gf import field as gf_field, is_supported, rank_over_prime_field
from .netmodel import Network, NetworkError

__all__ = [
    "Metric",
    "ObstructionCertificate",
    "SeparabilityResult",
    "check_separable",
    "corrects_t_errors",
    "distance",
    "linear_codes",
    "max_t_correcting_codes",
    "min_distance",
    "obstruction_certificate",
    "universal_tables",
]

MAX_WORDS = 1 << 20
MAX_TABLES = 1 << 20

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# metrics


@dataclass(frozen=True)
class Metric:
    """Hamming metric over range(q), or rank metric over GF(q) = GF(p^m)."""

    kind: str
    q: int

    def __post_init__(self):
        if self.kind not in ("hamming", "rank"):
            raise ValueError(f"unknown metric {self.kind!r}")
        if self.q < 2:
            raise ValueError("alphabet needs at least 2 symbols")
        if self.kind == "rank" and not is_supported(self.q):
            raise ValueError(f"rank metric needs a supported field, GF({self.q}) is not")

    @classmethod
    def hamming(cls, q: int) -> "Metric":
        return cls("hamming", q)

    @classmethod
    def rank(cls, q: int) -> "Metric":
        return cls("rank", q)

    @property
    def base(self) -> int:
        return gf_field(self.q).p if self.kind == "rank" else self.q

    @property
    def degree(self) -> int:
        return gf_field(self.q).m if self.kind == "rank" else 1

    def matrix(self, x: Sequence[int]) -> np.ndarray:
        """m x n matrix over the base field whose columns expand the coordinates."""
        F = gf_field(self.q)
        return np.array([F.to_vector(int(s)) for s in x], dtype=np.int64).T.reshape(F.m, len(x))

    def __str__(self):
        if self.kind == "hamming":
            return f"hamming(q={self.q})"
        return f"rank(p={self.base},m={self.degree})"


def distance(metric: Metric, x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise ValueError(f"words of different lengths {len(x)} and {len(y)}")
    for s in itertools.chain(x, y):
        if not 0 <= s < metric.q:
            raise ValueError(f"symbol {s} outside alphabet of size {metric.q}")
    if metric.kind == "hamming":
        return sum(a != b for a, b in zip(x, y))
    F = gf_field(metric.q)
    diff = [F.sub(int(a), int(b)) for a, b in zip(x, y)]
    if not any(diff):
        return 0
    return rank_over_prime_field(metric.matrix(diff), F.p)


def min_distance(code: Iterable[Sequence[int]], metric: Metric) -> int | None:
    words = [tuple(w) for w in code]
    if len(words) < 2:
        return None
    return min(distance(metric, a, b) for a, b in itertools.combinations(words, 2))


def _all_words(n: int, q: int) -> list[Word]:
    if q**n > MAX_WORDS:
        raise ValueError(f"{q}^{n} words exceed the limit of {MAX_WORDS}")
    return [tuple(int(s) for s in row) for row in all_tuples(n, q)]


def corrects_t_errors(code: Iterable[Sequence[int]], t: int, metric: Metric) -> bool:
    """Definition check: every word within t of a codeword has it as the only codeword within t."""
    words = [tuple(w) for w in code]
    if not words:
        raise ValueError("a code is nonempty")
    n = len(words[0])
    for y in _all_words(n, metric.q):
        near = sum(distance(metric, c, y) <= t for c in words)
        if near > 1:
            return False
    return True


def max_t_correcting_codes(
    n: int, q: int, t: int, metric: Metric, M: int, limit: int = 100_000
) -> list[tuple[Word, ...]]:
    """All codes of size M in range(q)^n that correct t errors, words sorted.

    Codes are cliques of the graph joining words at distance >= 2t+1; every
    code is checked against the definition as well.  Raises when more than
    ``limit`` codes exist.
    """
    if metric.q != q:
        raise ValueError("metric and alphabet disagree")
    words = _all_words(n, q)
    N = len(words)
    far = [0] * N
    for i in range(N):
        for j in range(i + 1, N):
            if distance(metric, words[i], words[j]) >= 2 * t + 1:
                far[i] |= 1 << j
                far[j] |= 1 << i
    out: list[tuple[Word, ...]] = []

    def rec(chosen: list[int], cand: int):
        if len(chosen) == M:
            code = tuple(words[i] for i in chosen)
            if not corrects_t_errors(code, t, metric):
                raise AssertionError(f"distance test and definition disagree on {code}")
            out.append(code)
            if len(out) > limit:
                raise ValueError(f"more than {limit} codes")
            return
        need = M - len(chosen)
        while cand and bin(cand).count("1") >= need:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            rec(chosen + [i], cand & far[i])

    rec([], (1 << N) - 1)
    return out


def linear_codes(n: int, q: int, d: int, metric: Metric) -> list[tuple[Word, ...]]:
    """One-dimensional GF(q)-linear codes {c*g} whose generator g has weight >= d.

    Generators are normalised to a leading 1, so each line appears once.
    These are a small subfamily of all codes of size q, useful when the full
    enumeration is out of reach.
    """
    F = gf_field(q)
    out = []
    for g in itertools.product(range(q), repeat=n):
        lead = next((s for s in g if s), 0)
        if lead != 1 or distance(metric, g, (0,) * n) < d:
            continue
        out.append(tuple(sorted(tuple(F.mul(c, s) for s in g) for c in range(q))))
    return out


# ---------------------------------------------------------------------------
# obstruction certificates


def _attack_ball(c: Word, t: int, q: int) -> set[Word]:
    """Words reachable from c by changing at most t coordinates."""
    out = {c}
    for k in range(1, t + 1):
        for pos in itertools.combinations(range(len(c)), k):
            for vals in itertools.product(range(q), repeat=k):
                w = list(c)
                for p, v in zip(pos, vals):
                    w[p] = v
                out.add(tuple(w))
    return out


@dataclass(frozen=True)
class ObstructionCertificate:
    """Two codes and two words ruling out every single-output decoder.

    With as many codewords as output symbols, each attack ball of a code must
    map to one symbol of its own.  ``w`` lies in the balls of ``code_a[i]``
    and ``code_b[j]``, ``w2`` in the balls of ``code_a[k]`` and ``code_b[j]``
    with i != k, so code_a[i] and code_a[k] would share a symbol.
    """

    code_a: tuple[Word, ...]
    code_b: tuple[Word, ...]
    t: int
    q: int
    w: Word
    w2: Word
    i: int
    j: int
    k: int

    def verify(self) -> bool:
        if self.i == self.k or len(self.code_a) != self.q or len(self.code_b) != self.q:
            return False

        def within(u, c):
            return sum(a != b for a, b in zip(u, c)) <= self.t

        ca, cb = self.code_a, self.code_b
        return (
            within(self.w, ca[self.i])
            and within(self.w, cb[self.j])
            and within(self.w2, ca[self.k])
            and within(self.w2, cb[self.j])
            and _balls_disjoint(ca, self.t)
            and _balls_disjoint(cb, self.t)
        )

    def as_dict(self) -> dict[str, str]:
        fmt = lambda w: "".join(map(str, w)) if self.q <= 10 else ",".join(map(str, w))
        return {
            "code_a": " ".join(fmt(c) for c in self.code_a),
            "code_b": " ".join(fmt(c) for c in self.code_b),
            "w": fmt(self.w),
            "w2": fmt(self.w2),
            "indices": f"{self.i},{self.j},{self.k}",
        }


def _balls_disjoint(code, t) -> bool:
    # disjoint attack balls: pairwise Hamming distance > 2t
    return all(sum(a != b for a, b in zip(x, y)) > 2 * t for x, y in itertools.combinations(code, 2))


def obstruction_certificate(
    codes: Sequence[Sequence[Sequence[int]]], t: int, colors: int
) -> ObstructionCertificate | None:
    """Search pairs of codes for the overlapping-ball pattern.

    Balls are the adversary's reach (at most t changed coordinates), which is
    what a collision needs.  The codes themselves may come from any metric;
    only codes with ``colors`` words and disjoint reach balls qualify.
    """
    cands = [tuple(tuple(int(s) for s in c) for c in code) for code in codes]
    cands = [c for c in cands if len(c) == colors and _balls_disjoint(c, t)]
    for A, B in itertools.permutations(cands, 2):
        balls_a = [_attack_ball(c, t, colors) for c in A]
        for j, cb in enumerate(B):
            ball = _attack_ball(cb, t, colors)
            hits = []
            for i, ba in enumerate(balls_a):
                common = ball & ba
                if common:
                    hits.append((i, min(common)))
                if len(hits) == 2:
                    (i, w), (k, w2) = hits
                    cert = ObstructionCertificate(A, B, t, colors, w, w2, i, j, k)
                    if not cert.verify():
                        raise AssertionError("certificate failed its own check")
                    return cert
    return None


# ---------------------------------------------------------------------------
# bulk enumeration of a bottleneck vertex


@dataclass
class _Descriptor:
    key: Word  # received word with the bottleneck's outputs blanked (-1)
    sigma: int  # input row of the bottleneck vertex
    over: Word  # per component edge: override value or -1


class _Bottleneck:
    """Runs a network with one vertex left symbolic."""

    def __init__(self, network: Network, q: int, vertex: str, tables: dict[str, np.ndarray], vulnerable, power):
        self.network, self.q, self.vertex = network, q, vertex
        terms = set(network.terminals)
        bad = [e for e in network.out_edges(vertex) if network.edge_by_id[e].head not in terms]
        if bad:
            raise NetworkError(f"outputs of {vertex} must go straight to terminals ({bad})")
        pos = network.edge_position
        self.pos = pos
        self.src_pos = [pos[e] for e in network.out_edges(network.source)]
        self.steps = []
        for v in network.intermediates:
            ins = [pos[e] for e in network.in_edges(v)]
            outs = [pos[e] for e in network.out_edges(v)]
            self.steps.append((v, ins, outs, None if v == vertex else tables[v].tolist()))
        self.term_pos = [[pos[e] for e in network.in_edges(t)] for t in network.terminals]
        self.b_out = [pos[e] for e in network.out_edges(vertex)]
        # per terminal: which bottleneck output columns it reads, in its order
        self.components = []
        for tp in self.term_pos:
            self.components.append([self.b_out.index(p) for p in tp if p in self.b_out])
        U = network.vulnerable if vulnerable is None else frozenset(vulnerable)
        U = [e for e in network.edge_order if e in U]
        t = network.power if power is None else power
        self.attacks = [[(pos[e], v) for e, v in a.overrides] for a in enumerate_attacks(U, t, q)]

    def _run(self, x, overrides):
        val = [0] * len(self.pos)
        over = dict(overrides)
        for p, s in zip(self.src_pos, x):
            val[p] = over.get(p, s)
        q = self.q
        sigma = None
        for v, ins, outs, table in self.steps:
            idx = 0
            for p in ins:
                idx = idx * q + val[p]
            if table is None:
                sigma = idx
                for p in outs:
                    val[p] = over.get(p, -1)
                continue
            for p, s in zip(outs, table[idx]):
                val[p] = over.get(p, s)
        return val, sigma

    def descriptors(self, x: Word) -> list[list[_Descriptor]]:
        """Per terminal, the distinct symbolic received words of x."""
        out = [dict() for _ in self.term_pos]
        for ov in self.attacks:
            val, sigma = self._run(x, ov)
            over = dict(ov)
            for ti, tp in enumerate(self.term_pos):
                key = tuple(-1 if p in self.b_out else val[p] for p in tp)
                comp_over = tuple(over.get(p, -1) for p in tp if p in self.b_out)
                # a fully overridden output no longer depends on the table
                sigma_eff = -1 if all(o >= 0 for o in comp_over) else sigma
                d = _Descriptor(key, sigma_eff, comp_over)
                out[ti][(key, sigma_eff, comp_over)] = d
        return [list(d.values()) for d in out]


def _component_tables(rows: int, width: int, q: int) -> np.ndarray:
    """Every table rows -> range(q)^width, as output indices (n_tables x rows)."""
    n = (q**width) ** rows
    if n > MAX_TABLES:
        raise ValueError(f"{q**width}^{rows} tables exceed the limit of {MAX_TABLES}")
    return all_tuples(rows, q**width)


def _component_fail(bn: _Bottleneck, ti: int, tables: np.ndarray, codes, q: int) -> np.ndarray:
    """Index of the first code failing at terminal ti, per table (-1 if none)."""
    width = len(bn.components[ti])
    digits = [(tables // q ** (width - 1 - j)) % q for j in range(width)]
    fail = np.full(tables.shape[0], -1, dtype=np.int64)
    desc_cache = {}
    for ci, code in enumerate(codes):
        bad = np.zeros(tables.shape[0], dtype=bool)
        for x, y in itertools.combinations(code, 2):
            for w in (x, y):
                if w not in desc_cache:
                    desc_cache[w] = bn.descriptors(w)[ti]
            by_key = {}
            for d in desc_cache[y]:
                by_key.setdefault(d.key, []).append(d)
            for d1 in desc_cache[x]:
                for d2 in by_key.get(d1.key, ()):
                    bad |= _equal_outputs(d1, d2, digits, width)
        fail[(fail < 0) & bad] = ci
    return fail


def _equal_outputs(d1: _Descriptor, d2: _Descriptor, digits, width) -> np.ndarray:
    n = digits[0].shape[0]
    ok = np.ones(n, dtype=bool)
    for j in range(width):
        o1, o2 = d1.over[j], d2.over[j]
        if o1 >= 0 and o2 >= 0:
            if o1 != o2:
                return np.zeros(n, dtype=bool)
            continue
        a = o1 if o1 >= 0 else digits[j][:, d1.sigma]
        b = o2 if o2 >= 0 else digits[j][:, d2.sigma]
        ok &= a == b
    return ok


@dataclass
class _ContextOutcome:
    tables: dict[str, np.ndarray]  # fixed tables of the non-bottleneck vertices
    fails: list[np.ndarray]  # per terminal: first failing code per component table
    tables_by_terminal: list[np.ndarray]

    def passing(self, ti: int) -> np.ndarray:
        return np.flatnonzero(self.fails[ti] < 0)


@dataclass
class SeparabilityResult:
    verdict: str  # "separable", "not_separable", "unknown"
    network: Network
    q: int
    M: int
    codes: list[tuple[Word, ...]]
    witness: NetworkCode | None = None
    certificate: ObstructionCertificate | None = None
    contexts: list[_ContextOutcome] = field(default_factory=list)
    bottleneck: str | None = None
    enumerated: int = 0
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    def failing_counts(self) -> dict[str, int]:
        """How many enumerated functions fail first on each code."""
        counts: dict[str, int] = {}
        for ctx in self.contexts:
            for ti, fail in enumerate(ctx.fails):
                for ci, n in zip(*np.unique(fail[fail >= 0], return_counts=True)):
                    k = f"{self.network.terminals[ti]}:code{int(ci)}"
                    counts[k] = counts.get(k, 0) + int(n)
        return counts

    def network_code(self, ctx: int, choice: Sequence[int]) -> NetworkCode:
        """Network code from context ``ctx`` and one component table index per terminal."""
        c = self.contexts[ctx]
        net, q, B = self.network, self.q, self.bottleneck
        rows = q ** net.in_degree(B)
        tab = np.zeros((rows, net.out_degree(B)), dtype=np.int64)
        bn_cols = _component_columns(net, B)
        for ti, cols in enumerate(bn_cols):
            if not cols:
                continue
            idx = c.tables_by_terminal[ti][choice[ti]]
            w = len(cols)
            for j, col in enumerate(cols):
                tab[:, col] = (idx // q ** (w - 1 - j)) % q
        tables = dict(c.tables)
        tables[B] = tab
        return NetworkCode(net, q, tables)

    def failure(self, ctx: int, ti: int, table: int) -> tuple[int, CollisionWitness]:
        """Failing code index and a replayable collision for one component table."""
        ci = int(self.contexts[ctx].fails[ti][table])
        if ci < 0:
            raise ValueError("this table passes every code")
        choice = [0] * len(self.network.terminals)
        choice[ti] = table
        code = self.network_code(ctx, choice)
        wit = check_unambiguous(self.network, code, OuterCode(self.codes[ci], self.q))
        if wit is True:
            raise AssertionError("bulk check and channel disagree")
        return ci, wit

    def transcript(self, cap: int = 10) -> list[str]:
        lines = [
            f"verdict={self.verdict}",
            f"q={self.q} size={self.M} codes={len(self.codes)} functions={self.enumerated}",
        ]
        for i, code in enumerate(self.codes[:cap]):
            lines.append(f"code{i}=" + " ".join("".join(map(str, w)) for w in code))
        if len(self.codes) > cap:
            lines.append(f"... {len(self.codes) - cap} more codes")
        for k, v in sorted(self.failing_counts().items()):
            lines.append(f"fail[{k}]={v}")
        shown = 0
        for c, ctx in enumerate(self.contexts):
            for ti, fail in enumerate(ctx.fails):
                if len(ctx.passing(ti)):
                    continue
                for tab in range(min(len(fail), cap - shown)):
                    ci, wit = self.failure(c, ti, tab)
                    lines.append(f"F[{c}.{self.network.terminals[ti]}.{tab}] code{ci} " +
                                 " ".join(f"{k}={v}" for k, v in wit.as_dict().items()))
                    shown += 1
                break
            if shown >= cap:
                break
        if self.certificate is not None:
            lines.extend(f"certificate.{k}={v}" for k, v in self.certificate.as_dict().items())
        lines.extend(f"note={n}" for n in self.notes)
        return lines


def _component_columns(network: Network, B: str) -> list[list[int]]:
    outs = list(network.out_edges(B))
    return [[outs.index(e) for e in network.in_edges(t) if e in outs] for t in network.terminals]


def _copy_table(q: int, dout: int) -> np.ndarray:
    return NetworkCode.replicate_table(q, dout)


def universal_tables(
    network: Network,
    q: int,
    codes: Sequence[Sequence[Word]],
    fix_unary: bool = True,
    vulnerable=None,
    power=None,
    deadline: float | None = None,
) -> tuple[str | None, list[_ContextOutcome], int]:
    """Evaluate every network code against every code.

    Returns the bottleneck vertex, one outcome per assignment of the other
    free vertices, and the number of network codes covered.
    """
    free = [v for v in network.intermediates if not (fix_unary and network.in_degree(v) == 1)]
    fixed = {v: _copy_table(q, network.out_degree(v)) for v in network.intermediates if v not in free}
    if not free:
        # single context, no bottleneck; one failing code (or -1) per terminal
        code = NetworkCode(network, q, fixed)
        fails = []
        for ti, term in enumerate(network.terminals):
            f = -1
            for ci, c in enumerate(codes):
                if _fails_at(network, code, c, q, term):
                    f = ci
                    break
            fails.append(np.array([f]))
        return None, [_ContextOutcome(fixed, fails, [np.zeros((1, 0), dtype=np.int64)] * len(fails))], 1
    terms = set(network.terminals)
    cands = [v for v in free if all(network.edge_by_id[e].head in terms for e in network.out_edges(v))]
    if not cands:
        raise NetworkError("no free vertex feeds only terminals")
    B = max(cands, key=lambda v: (q ** network.in_degree(v)) * network.out_degree(v))
    others = [v for v in free if v != B]
    spaces = []
    for v in others:
        rows, dout = q ** network.in_degree(v), network.out_degree(v)
        spaces.append([t.reshape(rows, dout) for t in _enumerate_full_tables(rows, dout, q)])
    rows = q ** network.in_degree(B)
    cols = _component_columns(network, B)
    comp_tables = [_component_tables(rows, len(c), q) for c in cols]
    outcomes = []
    covered = 0
    n_full = 1
    for ct in comp_tables:
        n_full *= ct.shape[0]
    for combo in itertools.product(*spaces):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError
        tables = dict(fixed)
        tables.update(zip(others, combo))
        bn = _Bottleneck(network, q, B, tables, vulnerable, power)
        fails = [
            _component_fail(bn, ti, comp_tables[ti], codes, q) if cols[ti] else np.array([-1])
            for ti in range(len(cols))
        ]
        outcomes.append(_ContextOutcome(tables, fails, comp_tables))
        covered += n_full
    return B, outcomes, covered


def _enumerate_full_tables(rows: int, dout: int, q: int):
    n = q ** (rows * dout)
    if n > MAX_TABLES:
        raise ValueError(f"{q}^{rows * dout} tables exceed the limit of {MAX_TABLES}")
    for idx in all_tuples(rows * dout, q):
        yield np.asarray(idx, dtype=np.int64)


def _fails_at(network, code, words, q, terminal) -> bool:
    wit = check_unambiguous(network, code, OuterCode(tuple(words), q))
    return wit is not True and wit.terminal == terminal


def check_separable(
    network: Network,
    q: int,
    M: int,
    metric: Metric,
    codes: Sequence[Sequence[Word]] | None = None,
    fix_unary: bool = True,
    budget: float | None = None,
    certificate_codes: Sequence[Sequence[Word]] | None = None,
) -> SeparabilityResult:
    """Is there one network code for which every t-correcting code of size M is unambiguous?

    ``codes`` defaults to every code of size M correcting ``network.power``
    errors in ``metric``.  When the function space is too large to enumerate
    the verdict rests on an obstruction certificate (searched among
    ``certificate_codes``, default ``codes``) or is "unknown".
    """
    start = time.monotonic()
    t = network.power
    n = network.n_source_edges
    if metric.q != q:
        raise ValueError("metric and alphabet disagree")
    if codes is None:
        codes = max_t_correcting_codes(n, q, t, metric, M)
    codes = [tuple(tuple(int(s) for s in w) for w in c) for c in codes]
    for c in codes:
        if len(c) != M:
            raise ValueError(f"code of size {len(c)}, expected {M}")
    if not codes:
        return SeparabilityResult("separable", network, q, M, codes, NetworkCode.identity(network, q)
                                  if all(network.in_degree(v) == network.out_degree(v) for v in network.intermediates)
                                  else None, notes=["no code of this size corrects t errors"])
    deadline = None if budget is None else start + budget
    try:
        B, outcomes, covered = universal_tables(network, q, codes, fix_unary, deadline=deadline)
    except ValueError as exc:
        if "exceed the limit" not in str(exc):
            raise
        cert = obstruction_certificate(certificate_codes if certificate_codes is not None else codes, t, q)
        single = len(network.intermediates) == 1 and all(
            network.out_degree(v) == 1 for v in network.intermediates
        )
        res = SeparabilityResult("unknown", network, q, M, codes, seconds=time.monotonic() - start,
                                 notes=[f"function space too large: {exc}"])
        if cert is not None and single and len(network.terminals) == 1:
            res.verdict = "not_separable"
            res.certificate = cert
            res.notes.append("certified by overlapping attack balls, not enumerated")
        return res
    except TimeoutError:
        return SeparabilityResult("unknown", network, q, M, codes, seconds=time.monotonic() - start,
                                  notes=["budget exhausted"])
    res = SeparabilityResult("not_separable", network, q, M, codes, contexts=outcomes, bottleneck=B,
                             enumerated=covered)
    for c, ctx in enumerate(outcomes):
        passing = [ctx.passing(ti) for ti in range(len(ctx.fails))]
        if all(len(p) for p in passing):
            res.verdict = "separable"
            if B is None:
                res.witness = NetworkCode(network, q, ctx.tables)
            else:
                res.witness = res.network_code(c, [int(p[0]) for p in passing])
            for code in codes:
                if check_unambiguous(network, res.witness, OuterCode(code, q)) is not True:
                    raise AssertionError("universal network code fails a code")
            break
    if fix_unary and any(network.in_degree(v) == 1 for v in network.intermediates):
        res.notes.append("one-input vertices fixed to copy their symbol")
    res.seconds = time.monotonic() - start
    return res
