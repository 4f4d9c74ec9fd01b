"""Single-source networks: validation, edge order, cuts and the cut-set bound.

A :class:`Network` is an immutable directed acyclic multigraph with one source,
one or more terminals, a set of vulnerable edges and an adversarial power.
Edges carry unique string ids, so parallel edges are ordinary edges.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import networkx as nx
import numpy as np

__all__ = [
    "Alphabet",
    "CapacityReport",
    "Edge",
    "EdgeOrderError",
    "Evidence",
    "LogSize",
    "Network",
    "NetworkError",
    "SingletonBound",
    "TwoLevelSpec",
    "Violation",
    "bottleneck_network",
    "build_two_level",
    "diamond",
    "family_b",
    "family_e",
    "figure1_network",
    "figure5_network",
    "min_cut",
    "mu",
    "natural_key",
    "order_edges",
    "precedes",
    "s_family",
    "singleton_bound",
    "validate",
]

MAX_CUT_VERTICES = 24


class NetworkError(ValueError):
    """Raised when a network is malformed for the requested operation."""


class EdgeOrderError(NetworkError):
    """A supplied total order does not extend the precedence relation."""

    def __init__(self, earlier: str, later: str):
        # `earlier` precedes `later` in the network but was listed after it
        self.pair = (earlier, later)
        super().__init__(
            f"edge order rejected: {earlier} precedes {later} but is listed after it"
        )


def natural_key(name: str):
    """Sort key that orders ``e2`` before ``e10``."""
    return tuple(
        (0, int(tok), "") if tok.isdigit() else (1, 0, tok)
        for tok in re.findall(r"\d+|\D+", name)
    )


@dataclass(frozen=True)
class Alphabet:
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet needs at least 2 symbols, got {self.q}")

    @property
    def symbols(self) -> range:
        return range(self.q)

    def check(self, values: Iterable[int]) -> None:
        for v in values:
            if not 0 <= v < self.q:
                raise ValueError(f"symbol {v} outside alphabet of size {self.q}")


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Violation:
    condition: int | str
    element: str
    message: str

    def __str__(self):
        return f"condition {self.condition} ({self.element}): {self.message}"


@dataclass(frozen=True, eq=False)
class Network:
    """Directed acyclic multigraph with source, terminals and adversary model.

    ``edges`` keeps the order the edges were supplied in; coordinates of
    codewords and function tables always use :attr:`edge_order`, the
    canonical total order returned by :func:`order_edges`.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    source: str
    terminals: tuple[str, ...]
    vulnerable: frozenset[str] = frozenset()
    power: int = 0
    q: int | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "vulnerable", frozenset(self.vulnerable))

    # structural lookups -------------------------------------------------
    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def intermediates(self) -> tuple[str, ...]:
        skip = {self.source, *self.terminals}
        return tuple(v for v in self.topological_order if v not in skip)

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        """Kahn's algorithm, ties broken by vertex declaration order."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        indeg = {v: 0 for v in self.vertices}
        succ: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            indeg[e.head] += 1
            succ[e.tail].append(e.head)
        ready = sorted((v for v in self.vertices if indeg[v] == 0), key=pos.get)
        out = []
        while ready:
            v = ready.pop(0)
            out.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
            ready.sort(key=pos.get)
        if len(out) != len(self.vertices):
            raise NetworkError("network has a directed cycle")
        return tuple(out)

    @cached_property
    def edge_order(self) -> tuple[str, ...]:
        return order_edges(self)

    @cached_property
    def edge_position(self) -> dict[str, int]:
        return {eid: i for i, eid in enumerate(self.edge_order)}

    def in_edges(self, v: str) -> tuple[str, ...]:
        return self._incidence[0][v]

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._incidence[1][v]

    def in_degree(self, v: str) -> int:
        return len(self.in_edges(v))

    def out_degree(self, v: str) -> int:
        return len(self.out_edges(v))

    @cached_property
    def _incidence(self):
        ins: dict[str, list[str]] = {v: [] for v in self.vertices}
        outs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for eid in self.edge_order:
            e = self.edge_by_id[eid]
            outs[e.tail].append(eid)
            ins[e.head].append(eid)
        return (
            {v: tuple(x) for v, x in ins.items()},
            {v: tuple(x) for v, x in outs.items()},
        )

    @property
    def n_source_edges(self) -> int:
        return self.out_degree(self.source)

    def with_adversary(self, vulnerable: Iterable[str] | None = None, power: int | None = None) -> "Network":
        return Network(
            self.vertices,
            self.edges,
            self.source,
            self.terminals,
            self.vulnerable if vulnerable is None else frozenset(vulnerable),
            self.power if power is None else power,
            self.q,
            self.name,
        )

    def is_simple_two_level(self) -> bool:
        """Single terminal and every source-terminal path has length two."""
        if len(self.terminals) != 1:
            return False
        (term,) = self.terminals
        mids = set(self.intermediates)
        return all(
            (e.tail == self.source and e.head in mids) or (e.tail in mids and e.head == term)
            for e in self.edges
        )

    def summary(self) -> str:
        return (
            f"{self.name or 'network'}: |V|={len(self.vertices)} |E|={len(self.edges)} "
            f"|U|={len(self.vulnerable)} t={self.power}"
        )


# ---------------------------------------------------------------------------
# validation and order


def _reachable(succ: dict[str, set[str]], start: str) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def validate(network: Network) -> list[Violation]:
    """Check the six defining conditions of a single-source network.

    Returns an empty list when the network is valid.  Conditions are numbered
    as in the definition: 1 finite acyclic multigraph, 2 source/terminals are
    vertices, 3 at least one terminal and the source is not one, 4 no edge into
    the source or out of a terminal, 5 terminals reachable, 6 every
    intermediate vertex lies on a source-terminal path.  Two extra checks,
    ``"U"`` and ``"t"``, cover the adversary model.
    """
    out: list[Violation] = []
    verts = list(network.vertices)
    vset = set(verts)
    if len(vset) != len(verts):
        dup = sorted({v for v in verts if verts.count(v) > 1})
        out.append(Violation(1, ",".join(dup), "duplicate vertex id"))
    ids = [e.id for e in network.edges]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1}, key=natural_key)
        out.append(Violation(1, ",".join(dup), "duplicate edge id"))
    for e in network.edges:
        for end in (e.tail, e.head):
            if end not in vset:
                out.append(Violation(1, e.id, f"endpoint {end} is not a vertex"))
    g = nx.MultiDiGraph()
    g.add_nodes_from(vset)
    g.add_edges_from((e.tail, e.head) for e in network.edges if e.tail in vset and e.head in vset)
    if not nx.is_directed_acyclic_graph(g):
        cyc = nx.find_cycle(g)
        out.append(Violation(1, "->".join(str(c[0]) for c in cyc), "directed cycle"))
    if network.source not in vset:
        out.append(Violation(2, network.source, "source is not a vertex"))
    for t in network.terminals:
        if t not in vset:
            out.append(Violation(2, t, "terminal is not a vertex"))
    if len(network.terminals) < 1:
        out.append(Violation(3, "T", "no terminals"))
    if network.source in network.terminals:
        out.append(Violation(3, network.source, "source is a terminal"))
    for e in network.edges:
        if e.head == network.source:
            out.append(Violation(4, e.id, "edge enters the source"))
        if e.tail in network.terminals:
            out.append(Violation(4, e.id, f"edge leaves terminal {e.tail}"))
    succ: dict[str, set[str]] = {v: set() for v in vset}
    pred: dict[str, set[str]] = {v: set() for v in vset}
    for e in network.edges:
        if e.tail in vset and e.head in vset:
            succ[e.tail].add(e.head)
            pred[e.head].add(e.tail)
    from_s = _reachable(succ, network.source) if network.source in vset else set()
    for t in network.terminals:
        if t in vset and t not in from_s:
            out.append(Violation(5, t, "terminal not reachable from the source"))
    to_t: set[str] = set()
    for t in network.terminals:
        if t in vset:
            to_t |= _reachable(pred, t)
    for v in verts:
        if v == network.source or v in network.terminals:
            continue
        if v not in from_s:
            out.append(Violation(6, v, "intermediate vertex not reachable from the source"))
        if v not in to_t:
            out.append(Violation(6, v, "intermediate vertex reaches no terminal"))
    eids = set(ids)
    for u in sorted(network.vulnerable, key=natural_key):
        if u not in eids:
            out.append(Violation("U", u, "vulnerable edge is not an edge"))
    if network.power < 0:
        out.append(Violation("t", str(network.power), "adversarial power must be >= 0"))
    return out


def require_valid(network: Network) -> Network:
    problems = validate(network)
    if problems:
        raise NetworkError("; ".join(str(p) for p in problems))
    return network


def _edge_reach(network: Network) -> dict[str, set[str]]:
    """For each edge e, the set of edges e' with e preceding e'."""
    succ: dict[str, set[str]] = {v: set() for v in network.vertices}
    for e in network.edges:
        succ[e.tail].add(e.head)
    out_of: dict[str, list[str]] = {v: [] for v in network.vertices}
    for e in network.edges:
        out_of[e.tail].append(e.id)
    reach = {}
    for e in network.edges:
        verts = _reachable(succ, e.head)
        reach[e.id] = {f for v in verts for f in out_of[v]}
    return reach


def precedes(network: Network, e: str, f: str) -> bool:
    """True when some directed path starts with edge ``e`` and ends with ``f``."""
    if e == f:
        return False
    return f in _edge_reach(network)[e]


def order_edges(network: Network, order: Sequence[str] | None = None) -> tuple[str, ...]:
    """Canonical total edge order, or check that a supplied order is admissible.

    The canonical order sorts edges by the topological index of their tail and
    then by edge id (natural order).  A supplied order is returned unchanged
    when it extends the precedence relation; otherwise :class:`EdgeOrderError`
    names the offending pair, choosing the one whose later-listed edge appears
    earliest.
    """
    topo = {v: i for i, v in enumerate(network.topological_order)}
    if order is None:
        return tuple(
            e.id
            for e in sorted(network.edges, key=lambda e: (topo[e.tail], natural_key(e.id)))
        )
    order = tuple(order)
    if sorted(order, key=natural_key) != sorted((e.id for e in network.edges), key=natural_key):
        raise NetworkError("supplied order is not a permutation of the edge ids")
    pos = {eid: i for i, eid in enumerate(order)}
    reach = _edge_reach(network)
    worst = None
    for e, later in reach.items():
        for f in later:
            if pos[f] < pos[e]:
                key = (pos[f], pos[e])
                if worst is None or key < worst[0]:
                    worst = (key, e, f)
    if worst is not None:
        raise EdgeOrderError(worst[1], worst[2])
    return order


# ---------------------------------------------------------------------------
# cuts


def min_cut(network: Network, v: str, w: str) -> int:
    """Minimum number of edges whose removal disconnects ``w`` from ``v``."""
    if v == w:
        raise NetworkError("min_cut needs two distinct vertices")
    for x in (v, w):
        if x not in network.vertices:
            raise NetworkError(f"{x} is not a vertex")
    g = nx.DiGraph()
    g.add_nodes_from(network.vertices)
    for e in network.edges:
        if g.has_edge(e.tail, e.head):
            g[e.tail][e.head]["capacity"] += 1
        else:
            g.add_edge(e.tail, e.head, capacity=1)
    if not nx.has_path(g, v, w):
        return 0
    return int(nx.maximum_flow_value(g, v, w))


def mu(network: Network) -> int:
    """Smallest source-terminal min-cut over all terminals."""
    return min(min_cut(network, network.source, t) for t in network.terminals)


class SingletonBound(NamedTuple):
    value: int
    terminal: str
    cut: tuple[str, ...]


def singleton_bound(
    network: Network, vulnerable: Iterable[str] | None = None, power: int | None = None
) -> SingletonBound:
    """Generalized Network Singleton Bound, computed by exact cut enumeration.

    Returns the minimum over terminals T and edge cuts E' between S and T of
    ``|E' \\ U| + max(0, |E' & U| - 2t)`` together with an attaining terminal
    and cut.  The objective is monotone in E', so it suffices to range over
    the boundaries of all vertex sets containing S but not T.
    """
    U = network.vulnerable if vulnerable is None else frozenset(vulnerable)
    t = network.power if power is None else power
    if t < 0:
        raise NetworkError("adversarial power must be >= 0")
    missing = set(U) - set(network.edge_by_id)
    if missing:
        raise NetworkError(f"vulnerable edges not in network: {sorted(missing)}")
    n = len(network.vertices)
    if n > MAX_CUT_VERTICES:
        raise NetworkError(
            f"exact enumeration refused: {n} vertices exceeds the limit of {MAX_CUT_VERTICES}"
        )
    best: SingletonBound | None = None
    for term in network.terminals:
        free = [v for v in network.vertices if v not in (network.source, term)]
        bit = {v: i for i, v in enumerate(free)}
        edges = network.edges
        n_sets = 1 << len(free)
        chunk = 1 << 16
        for start in range(0, n_sets, chunk):
            masks = np.arange(start, min(n_sets, start + chunk), dtype=np.int64)
            safe = np.zeros(masks.shape, dtype=np.int64)
            vuln = np.zeros(masks.shape, dtype=np.int64)
            for e in edges:
                tail_in = _side(masks, e.tail, bit, network.source, term)
                head_in = _side(masks, e.head, bit, network.source, term)
                crossing = tail_in & ~head_in
                if e.id in U:
                    vuln += crossing
                else:
                    safe += crossing
            value = safe + np.maximum(0, vuln - 2 * t)
            i = int(np.argmin(value))
            if best is None or value[i] < best.value:
                m = int(masks[i])
                side = {network.source} | {v for v in free if m >> bit[v] & 1}
                cut = tuple(
                    eid
                    for eid in network.edge_order
                    if network.edge_by_id[eid].tail in side
                    and network.edge_by_id[eid].head not in side
                )
                best = SingletonBound(int(value[i]), term, cut)
    assert best is not None
    return best


def _side(masks, v, bit, source, term):
    if v == source:
        return np.ones(masks.shape, dtype=bool)
    if v == term:
        return np.zeros(masks.shape, dtype=bool)
    return ((masks >> bit[v]) & 1).astype(bool)


# ---------------------------------------------------------------------------
# two-level networks and named instances


@dataclass(frozen=True)
class TwoLevelSpec:
    """Degrees ``([in1, in2], [out1, out2])`` of a simple 2-level network."""

    in1: int
    in2: int
    out1: int
    out2: int

    def __post_init__(self):
        if min(self.in1, self.in2, self.out1, self.out2) < 0:
            raise NetworkError("degrees must be non-negative")

    def __str__(self):
        return f"([{self.in1},{self.in2}],[{self.out1},{self.out2}])"


def build_two_level(
    spec: TwoLevelSpec,
    vulnerable: Iterable[str] | None = None,
    power: int = 1,
    q: int | None = None,
    name: str = "",
) -> Network:
    """Simple 2-level network S -> {V1, V2} -> T.

    Edge ids run ``e1, e2, ...``: the source edges into V1, then into V2, then
    V1's edges to T, then V2's.  The vulnerable set defaults to out(S).
    """
    if spec.in1 + spec.in2 < 1 or spec.out1 + spec.out2 < 1:
        raise NetworkError(f"spec {spec} carries no information from S to T")
    counter = itertools.count(1)
    edges: list[Edge] = []
    verts = ["S"]
    mids = []
    for name_v, din, dout in (("V1", spec.in1, spec.out1), ("V2", spec.in2, spec.out2)):
        if din == 0 and dout == 0:
            continue
        mids.append((name_v, din, dout))
        verts.append(name_v)
    verts.append("T")
    for v, din, _ in mids:
        edges += [Edge(f"e{next(counter)}", "S", v) for _ in range(din)]
    for v, _, dout in mids:
        edges += [Edge(f"e{next(counter)}", v, "T") for _ in range(dout)]
    src = [e.id for e in edges if e.tail == "S"]
    net = Network(
        tuple(verts),
        tuple(edges),
        "S",
        ("T",),
        frozenset(src if vulnerable is None else vulnerable),
        power,
        q,
        name or f"two-level {spec}",
    )
    return require_valid(net)


def diamond(q: int | None = None) -> Network:
    return build_two_level(TwoLevelSpec(1, 2, 1, 1), power=1, q=q, name="Diamond")


def family_b(s: int, q: int | None = None) -> Network:
    return build_two_level(TwoLevelSpec(1, s + 1, 1, s), power=1, q=q, name=f"B_{s}")


def family_e(t: int, q: int | None = None) -> Network:
    return build_two_level(TwoLevelSpec(t, t + 1, 1, 1), power=t, q=q, name=f"E_{t}")


def s_family(a: int, b: int, s: int, q: int | None = None) -> Network:
    return build_two_level(TwoLevelSpec(a, b + s, a, s), power=1, q=q, name=f"S_{a},{b},{s}")


def figure1_network(q: int | None = 3) -> Network:
    """The worked example network with U = {e1, e4, e7, e8} and t = 1."""
    E = [
        ("e1", "S", "V1"), ("e2", "S", "V2"), ("e3", "V1", "V3"), ("e4", "V2", "V3"),
        ("e5", "V1", "T1"), ("e6", "V3", "V4"), ("e7", "V2", "T2"), ("e8", "V4", "T1"),
        ("e9", "V4", "T2"),
    ]
    return require_valid(Network(
        ("S", "V1", "V2", "V3", "V4", "T1", "T2"),
        tuple(Edge(*e) for e in E),
        "S",
        ("T1", "T2"),
        frozenset({"e1", "e4", "e7", "e8"}),
        1,
        q,
        "Figure 1",
    ))


def bottleneck_network(q: int | None = 2) -> Network:
    """Three parallel S -> V edges (all vulnerable) and V -> T, t = 1."""
    return require_valid(Network(
        ("S", "V", "T"),
        (Edge("e1", "S", "V"), Edge("e2", "S", "V"), Edge("e3", "S", "V"), Edge("e4", "V", "T")),
        "S",
        ("T",),
        frozenset({"e1", "e2", "e3"}),
        1,
        q,
        "bottleneck",
    ))


def figure5_network(q: int | None = 2) -> Network:
    """Two-terminal network with every edge vulnerable and t = 1.

    The drawing labels two different edges ``e9``; the V3 -> T2 edge is called
    ``e11`` here so that V2's four outputs keep the labels e7..e10.
    """
    E = [
        ("e1", "S", "V1"), ("e2", "S", "V2"), ("e3", "S", "V3"), ("e4", "V1", "V2"),
        ("e5", "V3", "V2"), ("e6", "V1", "T1"), ("e7", "V2", "T1"), ("e8", "V2", "T1"),
        ("e9", "V2", "T2"), ("e10", "V2", "T2"), ("e11", "V3", "T2"),
    ]
    edges = tuple(Edge(*e) for e in E)
    return require_valid(Network(
        ("S", "V1", "V3", "V2", "T1", "T2"),
        edges,
        "S",
        ("T1", "T2"),
        frozenset(e.id for e in edges),
        1,
        q,
        "Figure 5",
    ))


# ---------------------------------------------------------------------------
# capacity reports


@dataclass(frozen=True)
class LogSize:
    """The exponent log_q(M), kept exact."""

    size: int
    q: int

    def exact(self) -> Fraction | None:
        """Rational value when M and q are powers of a common integer, else None."""
        if self.size == 1:
            return Fraction(0)
        for base in range(2, self.q + 1):
            a = _int_log(self.size, base)
            b = _int_log(self.q, base)
            if a is not None and b is not None:
                return Fraction(a, b)
        return None

    def __float__(self):
        return math.log(self.size, self.q)

    def __str__(self):
        ex = self.exact()
        if ex is not None:
            return str(ex)
        return f"log_{self.q}({self.size})"


def _int_log(x: int, base: int) -> int | None:
    k = 0
    while x > 1 and x % base == 0:
        x //= base
        k += 1
    return k if x == 1 else None


@dataclass(frozen=True)
class Evidence:
    side: str  # "lower", "upper" or "exact"
    size: int
    source: str  # "bound", "construction", "search" or "cited"
    note: str

    def __str__(self):
        return f"{self.side} {self.size} [{self.source}] {self.note}"


@dataclass(frozen=True)
class CapacityReport:
    """Bracket [lower, upper] on the largest unambiguous code size.

    ``upper is None`` means no finite bound is known.
    """

    q: int
    lower: int
    upper: int | None
    provenance: tuple[Evidence, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.lower < 1:
            raise ValueError("every network admits a code of size 1")
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f"inconsistent report: lower {self.lower} > upper {self.upper}")

    @property
    def exact(self) -> bool:
        return self.upper == self.lower

    @property
    def gamma_lo(self) -> LogSize:
        return LogSize(self.lower, self.q)

    @property
    def gamma_hi(self) -> LogSize | None:
        return None if self.upper is None else LogSize(self.upper, self.q)

    def as_dict(self) -> dict[str, str]:
        return {
            "q": str(self.q),
            "lower": str(self.lower),
            "upper": "inf" if self.upper is None else str(self.upper),
            "exact": str(self.exact).lower(),
            "gamma_lo": str(self.gamma_lo),
            "gamma_hi": "inf" if self.gamma_hi is None else str(self.gamma_hi),
        }
