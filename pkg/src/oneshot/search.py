"""Capacity search: conflict graphs, maximum independent sets, joint inner/outer search.

Graphs are stored as adjacency bitmasks (Python ints), vertex i being bit i.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .channel import (
    NetworkCode,
    OuterCode,
    _Plan,
    _vulnerable_in_order,
    all_tuples,
    applies_two_level,
    check_unambiguous,
    enumerate_attacks,
)
from .netmodel import Network, NetworkError

MAX_WORDS = 1 << 20


class BudgetExceeded(Exception):
    pass


@dataclass
class ConflictGraph:
    """Words as vertices; an edge joins two words whose fan-out sets meet."""

    words: list[tuple[int, ...]]
    adj: list[int]

    @property
    def n(self) -> int:
        return len(self.words)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, m in enumerate(self.adj):
            m >>= i + 1
            j = i + 1
            while m:
                if m & 1:
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def n_edges(self) -> int:
        return sum(bin(m).count("1") for m in self.adj) // 2

    def is_independent(self, idx: Iterable[int]) -> bool:
        idx = list(idx)
        mask = 0
        for i in idx:
            mask |= 1 << i
        return all(not (self.adj[i] & mask) for i in idx)


def graph_from_pairs(words, pairs) -> ConflictGraph:
    adj = [0] * len(words)
    for i, j in pairs:
        if i != j:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return ConflictGraph(list(words), adj)


def graph_from_buckets(words, buckets: Iterable[Sequence[int]]) -> ConflictGraph:
    """Edges between every two words sharing a bucket."""
    adj = [0] * len(words)
    for members in buckets:
        if len(members) < 2:
            continue
        mask = 0
        for i in members:
            mask |= 1 << i
        for i in members:
            adj[i] |= mask
    for i in range(len(adj)):
        adj[i] &= ~(1 << i)
    return ConflictGraph(list(words), adj)


def _candidate_words(network: Network, q: int, words) -> list[tuple[int, ...]]:
    if words is not None:
        return [tuple(int(s) for s in w) for w in words]
    n = network.n_source_edges
    if q**n > MAX_WORDS:
        raise NetworkError(f"{q}^{n} source words exceed the limit {MAX_WORDS}")
    return [tuple(int(s) for s in w) for w in all_tuples(n, q)]


def conflict_graph(
    network: Network,
    code: NetworkCode,
    words: Sequence[Sequence[int]] | None = None,
    vulnerable=None,
    power=None,
) -> ConflictGraph:
    """Conflict graph of a fixed inner code over all (or the given) source words."""
    words = _candidate_words(network, code.q, words)
    t = network.power if power is None else power
    plan = _Plan(network, code)
    pos = network.edge_position
    U = _vulnerable_in_order(network, vulnerable)
    attacks = [[(pos[e], v) for e, v in a.overrides] for a in enumerate_attacks(U, t, code.q)]
    index: dict[tuple[int, tuple[int, ...]], list[int]] = {}
    for i, x in enumerate(words):
        seen = set()
        for over in attacks:
            for ti, r in enumerate(plan.run(x, over)):
                seen.add((ti, r))
        for key in seen:
            index.setdefault(key, []).append(i)
    return graph_from_buckets(words, index.values())


def hamming_conflict_graph(n: int, q: int, d: int = 3) -> ConflictGraph:
    """Words of length n; edges join words at Hamming distance below d."""
    if q**n > MAX_WORDS:
        raise ValueError(f"{q}^{n} words exceed the limit {MAX_WORDS}")
    W = all_tuples(n, q)
    words = [tuple(int(s) for s in w) for w in W]
    adj = []
    for i in range(len(words)):
        dist = (W != W[i]).sum(axis=1)
        nb = np.flatnonzero(dist < d)
        mask = 0
        for j in nb.tolist():
            if j != i:
                mask |= 1 << j
        adj.append(mask)
    return ConflictGraph(words, adj)


# ---------------------------------------------------------------------------
# maximum independent set


@dataclass
class MisResult:
    vertices: list[int]
    optimal: bool
    nodes: int
    # proven upper bound on the independence number (equals len(vertices) when optimal)
    upper: int

    def __len__(self):
        return len(self.vertices)


def _clique_cover_size(P: int, adj: list[int], stop: int) -> int:
    """Greedy clique cover count of P, capped once it exceeds ``stop``."""
    count = 0
    while P:
        v = (P & -P).bit_length() - 1
        P &= ~(1 << v)
        C = P & adj[v]
        while C:
            u = (C & -C).bit_length() - 1
            P &= ~(1 << u)
            C &= adj[u] & ~(1 << u)
        count += 1
        if count > stop:
            return count
    return count


def max_independent_set(
    graph: ConflictGraph,
    budget: int | None = None,
    target: int | None = None,
    forced: Sequence[int] = (),
    candidates: int | None = None,
) -> MisResult:
    """Exact maximum independent set by branch and bound.

    Branches include-first on the lowest-index candidate, so the first optimum
    found is the lexicographically least one (as a sorted index list) and
    only strictly larger sets replace it.  The bound is a greedy clique cover.
    ``budget`` caps the number of search nodes; on exhaustion the best set
    found is returned with ``optimal=False``.  ``target`` stops the search as
    soon as a set of that size is found (``optimal`` is then False unless the
    set is provably maximum).  ``forced`` vertices are put in the set up front.
    """
    adj = graph.adj
    n = graph.n
    P0 = (1 << n) - 1 if candidates is None else candidates
    R0: tuple[int, ...] = ()
    for v in forced:
        if not P0 >> v & 1:
            return MisResult([], True, 0, 0)
        R0 += (v,)
        P0 &= ~adj[v] & ~(1 << v)
    best: tuple[int, ...] = R0 if not P0 else ()
    best_len = len(best) if best else -1
    nodes = 0
    stack = [(R0, P0)]
    hit_target = False
    while stack:
        R, P = stack.pop()
        nodes += 1
        if budget is not None and nodes > budget:
            ub = max(best_len, 0)
            # unexplored frames bound the remaining optimum
            for r, p in stack + [(R, P)]:
                ub = max(ub, len(r) + _clique_cover_size(p, adj, n))
            return MisResult(sorted(best), False, nodes, ub)
        if not P:
            if len(R) > best_len:
                best, best_len = R, len(R)
                if target is not None and best_len >= target:
                    hit_target = True
                    break
            continue
        room = best_len - len(R)
        if _clique_cover_size(P, adj, room) <= room:
            continue
        v = (P & -P).bit_length() - 1
        rest = P & ~(1 << v)
        if rest & adj[v]:
            stack.append((R, rest))
        stack.append((R + (v,), rest & ~adj[v]))
    if hit_target:
        return MisResult(sorted(best), False, nodes, n)
    best_len = max(best_len, 0)
    return MisResult(sorted(best), True, nodes, best_len)


def independence_at_least(graph: ConflictGraph, M: int, budget: int | None = None):
    """True / False, or None if the budget ran out first."""
    res = max_independent_set(graph, budget=budget, target=M)
    if len(res) >= M:
        return True
    if res.optimal or res.upper < M:
        return False
    return None


# ---------------------------------------------------------------------------
# joint inner + outer search


@dataclass
class SearchResult:
    """Outcome of a feasibility search for an unambiguous pair of size M."""

    status: str  # "feasible", "infeasible", "unknown"
    target: int
    outer: OuterCode | None = None
    code: NetworkCode | None = None
    method: str = ""
    explored: int = 0
    total: int | None = None
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def explored_fraction(self) -> float | None:
        if not self.total:
            return None
        return self.explored / self.total

    def as_dict(self) -> dict[str, str]:
        d = {
            "status": self.status,
            "target": str(self.target),
            "method": self.method,
            "explored": str(self.explored),
            "seconds": f"{self.seconds:.2f}",
        }
        if self.total is not None:
            d["total"] = str(self.total)
        if self.outer is not None:
            d["size"] = str(len(self.outer))
        return d


REDUCTIONS = ("identity", "zero", "relabel")


class _TwoLevelSearch:
    """Exhaustive search over inner tables of a simple 2-level network.

    Tables of the non-fixed vertices are filled row by row, each row holding
    the index of the output tuple.  A partial assignment is scored
    optimistically: every unassigned input gets a fresh private label, which
    can only remove conflicts, so if even that graph has independence number
    below M the subtree is pruned.
    """

    def __init__(self, network: Network, q: int, M: int, reductions, budget_nodes, deadline):
        net = network
        self.network = net
        self.q = q
        self.M = M
        self.reductions = set(reductions)
        self.budget_nodes = budget_nodes
        self.deadline = deadline
        self.nodes = 0
        self.order = list(net.intermediates)
        self.free = []
        self.start_tables = {}
        for v in self.order:
            din, dout = net.in_degree(v), net.out_degree(v)
            if "identity" in self.reductions and din == dout:
                self.start_tables[v] = np.arange(q**din, dtype=np.int64)
            else:
                self.free.append(v)
                self.start_tables[v] = np.full(q**din, -1, dtype=np.int64)
        self.n_out = {v: q ** net.out_degree(v) for v in self.order}
        self.rows = {v: q ** net.in_degree(v) for v in self.order}
        self.words = [tuple(int(s) for s in w) for w in all_tuples(net.n_source_edges, q)]
        self.forced = [0] if "zero" in self.reductions else []
        U = net.vulnerable
        src = net.out_edges(net.source)
        spos = {e: i for i, e in enumerate(src)}
        W = np.asarray(self.words, dtype=np.int64)
        self.parts = {}
        self.balls = {}
        for v in self.order:
            ins = net.in_edges(v)
            part = [spos[e] for e in ins]
            vm = np.array([e in U for e in ins], dtype=bool)
            inp = all_tuples(len(ins), q)
            weights = q ** np.arange(len(ins) - 1, -1, -1, dtype=np.int64)
            kmax = min(int(vm.sum()), net.power)
            # balls[k] is a boolean matrix: row r reaches row r' with <= k overrides
            diff = inp[:, None, :] != inp[None, :, :]
            fixed_ok = ~diff[:, :, ~vm].any(axis=2)
            dist = diff[:, :, vm].sum(axis=2)
            self.balls[v] = [fixed_ok & (dist <= k) for k in range(kmax + 1)]
            self.parts[v] = W[:, part] @ weights
        caps = [len(self.balls[v]) - 1 for v in self.order]
        total = min(net.power, sum(caps))
        self.budgets = [
            b for b in itertools.product(*(range(c + 1) for c in caps)) if sum(b) == total
        ]
        n_labels = max(self.n_out[v] + self.rows[v] for v in self.order)
        self.wide = n_labels > 63

    def _images(self, v, tab):
        """Per budget k, the output-label bitmask each word's part can reach."""
        fresh = np.where(tab < 0, self.n_out[v] + np.arange(tab.shape[0]), tab)
        out = []
        for ball in self.balls[v]:
            if self.wide:
                bits = [1 << int(x) for x in fresh]
                row_mask = [0] * len(bits)
                for r in range(len(bits)):
                    m = 0
                    for r2 in np.flatnonzero(ball[r]).tolist():
                        m |= bits[r2]
                    row_mask[r] = m
                out.append(np.array([row_mask[p] for p in self.parts[v]], dtype=object))
            else:
                bits = np.left_shift(np.uint64(1), fresh.astype(np.uint64))
                row_mask = np.bitwise_or.reduce(np.where(ball, bits[None, :], np.uint64(0)), axis=1)
                out.append(row_mask[self.parts[v]])
        return out

    def _graph(self, tables) -> ConflictGraph:
        imgs = [self._images(v, tables[v]) for v in self.order]
        n = len(self.words)
        conflict = np.zeros((n, n), dtype=bool)
        for a in self.budgets:
            for b in self.budgets:
                m = np.ones((n, n), dtype=bool)
                for k in range(len(self.order)):
                    x, y = imgs[k][a[k]], imgs[k][b[k]]
                    m &= (x[:, None] & y[None, :]) != 0
                conflict |= m
        np.fill_diagonal(conflict, False)
        return ConflictGraph(self.words, _bool_rows_to_masks(conflict))

    def _best(self, tables):
        g = self._graph(tables)
        res = max_independent_set(g, target=self.M, forced=self.forced)
        return res.vertices if len(res) >= self.M else None

    def _tick(self):
        self.nodes += 1
        if self.budget_nodes is not None and self.nodes > self.budget_nodes:
            raise BudgetExceeded
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded

    def run(self):
        tables = {v: t.copy() for v, t in self.start_tables.items()}
        if self._best(tables) is None:
            return None
        return self._rec(tables, 0, 0)

    def _rec(self, tables, vi, row):
        if vi == len(self.free):
            found = self._best(tables)
            return None if found is None else ({v: t.copy() for v, t in tables.items()}, found)
        v = self.free[vi]
        if row == self.rows[v]:
            return self._rec(tables, vi + 1, 0)
        tab = tables[v]
        limit = self.n_out[v]
        if "relabel" in self.reductions:
            used = int(tab[:row].max()) if row else -1
            labels = range(min(used + 2, limit))
        else:
            labels = range(limit)
        last = row + 1 == self.rows[v] and vi + 1 == len(self.free)
        for lab in labels:
            self._tick()
            tab[row] = lab
            if not last and self._best(tables) is None:
                continue
            found = self._rec(tables, vi, row + 1)
            if found is not None:
                return found
        tab[row] = -1
        return None


def _bool_rows_to_masks(mat: np.ndarray) -> list[int]:
    n = mat.shape[1]
    packed = np.packbits(mat, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") & ((1 << n) - 1) for row in packed]


def _label_table_to_outputs(labels: np.ndarray, q: int, dout: int) -> np.ndarray:
    out = np.zeros((labels.shape[0], dout), dtype=np.int64)
    x = labels.copy()
    for c in range(dout - 1, -1, -1):
        out[:, c] = x % q
        x //= q
    return out


def table_space_size(network: Network, q: int, reductions=REDUCTIONS) -> int:
    total = 1
    for v in network.intermediates:
        din, dout = network.in_degree(v), network.out_degree(v)
        if "identity" in reductions and din == dout:
            continue
        total *= (q**dout) ** (q**din)
    return total


def joint_search(
    network: Network,
    M: int,
    q: int | None = None,
    method: str = "auto",
    reductions: Sequence[str] = REDUCTIONS,
    budget: float | None = None,
    node_budget: int | None = None,
) -> SearchResult:
    """Is there an unambiguous (outer, inner) pair of size M?

    ``method`` is ``"dfs"`` (table enumeration with conflict-graph pruning),
    ``"cnf"`` (constraint model plus the internal SAT solver) or ``"auto"``.
    ``budget`` is in seconds.  Reductions: ``identity`` fixes vertices with
    equal in/out degree to the identity, ``zero`` puts the all-zero word in
    the code, ``relabel`` enumerates tables up to renaming of output tuples.
    All three preserve feasibility.
    """
    q = network.q if q is None else q
    if q is None:
        raise ValueError("alphabet size not given")
    if not applies_two_level(network):
        raise NetworkError("joint search needs a simple 2-level network with source-edge adversary")
    bad = set(reductions) - set(REDUCTIONS)
    if bad:
        raise ValueError(f"unknown reductions {sorted(bad)}")
    if M < 1:
        raise ValueError("target size must be >= 1")
    start = time.monotonic()
    n_words = q**network.n_source_edges
    if M > n_words:
        return SearchResult("infeasible", M, method="count", notes=["more codewords than source words"])
    if method == "auto":
        method = "dfs" if table_space_size(network, q, reductions) <= 1 << 16 else "cnf"
    if method == "cnf":
        from .cnf import cnf_search

        res = cnf_search(network, M, q, reductions=reductions, budget=budget)
        res.seconds = time.monotonic() - start
        return res
    if method != "dfs":
        raise ValueError(f"unknown method {method!r}")
    deadline = None if budget is None else start + budget
    s = _TwoLevelSearch(network, q, M, reductions, node_budget, deadline)
    try:
        idx = s.run()
    except BudgetExceeded:
        return SearchResult(
            "unknown", M, method="dfs", explored=s.nodes,
            seconds=time.monotonic() - start, notes=["budget exhausted"],
        )
    elapsed = time.monotonic() - start
    if idx is None:
        return SearchResult("infeasible", M, method="dfs", explored=s.nodes, seconds=elapsed)
    label_tables, chosen = idx
    tables = {
        v: _label_table_to_outputs(label_tables[v], q, network.out_degree(v))
        for v in network.intermediates
    }
    code = NetworkCode(network, q, tables)
    outer = OuterCode(tuple(s.words[i] for i in chosen[:M]), q)
    if check_unambiguous(network, code, outer) is not True:
        raise AssertionError("search produced a pair that fails verification")
    return SearchResult(
        "feasible", M, outer, code, method="dfs", explored=s.nodes, seconds=elapsed,
    )
