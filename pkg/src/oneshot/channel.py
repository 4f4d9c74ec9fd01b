"""Adversarial channel: run a network code, collect fan-out sets, test unambiguity.

Coordinates of source words follow the canonical order of out(S); function
tables of an intermediate vertex V are dense arrays indexed by the input tuple
on in(V) read as a base-q number (first coordinate most significant), with
one row per input and one column per edge of out(V).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .netmodel import Network, NetworkError

__all__ = [
    "Attack",
    "CollisionWitness",
    "NetworkCode",
    "OuterCode",
    "MAX_TABLE_ROWS",
    "attack_count",
    "check_unambiguous",
    "enumerate_attacks",
    "fanout",
    "find_collision",
    "is_unambiguous",
    "transmit",
]

MAX_TABLE_ROWS = 1 << 20
# above this many attacks per codeword the witness search stops enumerating
WITNESS_ENUMERATION_LIMIT = 20000

Word = tuple[int, ...]


def tuple_index(u: Sequence[int], q: int) -> int:
    idx = 0
    for s in u:
        idx = idx * q + int(s)
    return idx


def all_tuples(k: int, q: int) -> np.ndarray:
    """Every length-k tuple over range(q), in the table's row order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * k).reshape(k, -1).T
    return grids.astype(np.int64)


@dataclass(frozen=True)
class OuterCode:
    words: tuple[Word, ...]
    q: int

    def __post_init__(self):
        words = tuple(tuple(int(s) for s in w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise ValueError("an outer code is nonempty")
        n = len(words[0])
        if any(len(w) != n for w in words):
            raise ValueError("codewords have different lengths")
        if len(set(words)) != len(words):
            raise ValueError("codewords are not distinct")
        for w in words:
            for s in w:
                if not 0 <= s < self.q:
                    raise ValueError(f"symbol {s} outside alphabet of size {self.q}")

    @property
    def length(self) -> int:
        return len(self.words[0])

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w):
        return tuple(w) in set(self.words)

    def sorted(self) -> "OuterCode":
        return OuterCode(tuple(sorted(self.words)), self.q)


@dataclass(frozen=True)
class Attack:
    """Overrides ``edge id -> symbol``, stored in canonical edge order."""

    overrides: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_dict(cls, network: Network, d: Mapping[str, int]) -> "Attack":
        pos = network.edge_position
        return cls(tuple(sorted(((e, int(v)) for e, v in d.items()), key=lambda p: pos[p[0]])))

    def as_dict(self) -> dict[str, int]:
        return dict(self.overrides)

    def __len__(self):
        return len(self.overrides)

    def check(self, network: Network, q: int, vulnerable=None, power=None) -> None:
        U = network.vulnerable if vulnerable is None else set(vulnerable)
        t = network.power if power is None else power
        edges = [e for e, _ in self.overrides]
        if len(set(edges)) != len(edges):
            raise ValueError("attack overrides an edge twice")
        if not set(edges) <= set(U):
            raise ValueError(f"attack touches non-vulnerable edges {sorted(set(edges) - set(U))}")
        if len(edges) > t:
            raise ValueError(f"attack acts on {len(edges)} edges, power is {t}")
        for _, v in self.overrides:
            if not 0 <= v < q:
                raise ValueError(f"override symbol {v} outside alphabet")

    def __str__(self):
        if not self.overrides:
            return "{}"
        return "{" + ", ".join(f"{e}->{v}" for e, v in self.overrides) + "}"


class NetworkCode:
    """Dense function tables, one per intermediate vertex."""

    def __init__(self, network: Network, q: int, tables: Mapping[str, np.ndarray]):
        self.q = q
        self.tables: dict[str, np.ndarray] = {}
        for v in network.intermediates:
            din, dout = network.in_degree(v), network.out_degree(v)
            rows = q**din
            if rows > MAX_TABLE_ROWS:
                raise NetworkError(f"vertex {v}: table with {rows} rows exceeds {MAX_TABLE_ROWS}")
            if v in tables:
                t = np.asarray(tables[v], dtype=np.int64).reshape(rows, dout)
            elif din == dout:
                t = all_tuples(din, q)
            else:
                raise NetworkError(f"no function given for vertex {v} ({din} in, {dout} out)")
            if t.size and (t.min() < 0 or t.max() >= q):
                raise ValueError(f"vertex {v}: output symbol outside alphabet")
            t.setflags(write=False)
            self.tables[v] = t
        extra = set(tables) - set(network.intermediates)
        if extra:
            raise NetworkError(f"functions given for non-intermediate vertices {sorted(extra)}")

    @classmethod
    def from_functions(
        cls,
        network: Network,
        q: int,
        functions: Mapping[str, Callable[..., Sequence[int] | int]],
    ) -> "NetworkCode":
        """Tabulate Python callables ``f(*inputs) -> outputs`` (ints are 1-tuples)."""
        tables = {}
        for v, f in functions.items():
            din, dout = network.in_degree(v), network.out_degree(v)
            rows = []
            for u in itertools.product(range(q), repeat=din):
                out = f(*u)
                out = (out,) if isinstance(out, (int, np.integer)) else tuple(out)
                if len(out) != dout:
                    raise ValueError(f"vertex {v}: expected {dout} outputs, got {len(out)}")
                rows.append([int(s) for s in out])
            tables[v] = np.array(rows, dtype=np.int64).reshape(q**din, dout)
        return cls(network, q, tables)

    @classmethod
    def identity(cls, network: Network, q: int) -> "NetworkCode":
        return cls(network, q, {})

    @staticmethod
    def replicate_table(q: int, dout: int) -> np.ndarray:
        """Single-input vertex copying its symbol onto every outgoing edge."""
        return np.repeat(np.arange(q, dtype=np.int64)[:, None], dout, axis=1)

    def __call__(self, v: str, u: Sequence[int]) -> Word:
        return tuple(int(s) for s in self.tables[v][tuple_index(u, self.q)])

    def with_table(self, network: Network, v: str, table: np.ndarray) -> "NetworkCode":
        tables = dict(self.tables)
        tables[v] = table
        return NetworkCode(network, self.q, tables)

    def preimages(self, v: str) -> dict[Word, list[Word]]:
        """Output tuple -> sorted list of input tuples mapping to it."""
        t = self.tables[v]
        din = round(np.log(t.shape[0]) / np.log(self.q)) if t.shape[0] > 1 else 0
        inputs = all_tuples(din, self.q)
        out: dict[Word, list[Word]] = {}
        for u, o in zip(inputs, t):
            out.setdefault(tuple(int(s) for s in o), []).append(tuple(int(s) for s in u))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, NetworkCode)
            and self.q == other.q
            and self.tables.keys() == other.tables.keys()
            and all(np.array_equal(self.tables[v], other.tables[v]) for v in self.tables)
        )

    def __repr__(self):
        return f"NetworkCode(q={self.q}, vertices={list(self.tables)})"


# ---------------------------------------------------------------------------
# attacks


def attack_count(n_vulnerable: int, t: int, q: int) -> int:
    return sum(comb(n_vulnerable, k) * q**k for k in range(min(t, n_vulnerable) + 1))


def enumerate_attacks(vulnerable: Sequence[str], t: int, q: int) -> Iterator[Attack]:
    """All attacks on up to ``t`` of the given edges, in a fixed order.

    Order: by number of attacked edges, then by edge positions in the given
    sequence, then by override values lexicographically.  Override values
    range over all q symbols, including the one the edge already carries.
    """
    if t < 0:
        raise ValueError("adversarial power must be >= 0")
    edges = list(vulnerable)
    for k in range(min(t, len(edges)) + 1):
        for chosen in itertools.combinations(edges, k):
            for vals in itertools.product(range(q), repeat=k):
                yield Attack(tuple(zip(chosen, vals)))


def _vulnerable_in_order(network: Network, vulnerable) -> list[str]:
    U = network.vulnerable if vulnerable is None else frozenset(vulnerable)
    return [e for e in network.edge_order if e in U]


# ---------------------------------------------------------------------------
# transmission


class _Plan:
    """Network and code compiled into index arrays for repeated transmission."""

    def __init__(self, network: Network, code: NetworkCode):
        self.network = network
        self.q = code.q
        pos = network.edge_position
        self.n_edges = len(pos)
        self.src_pos = [pos[e] for e in network.out_edges(network.source)]
        self.steps = []
        for v in network.intermediates:
            ins = [pos[e] for e in network.in_edges(v)]
            outs = [pos[e] for e in network.out_edges(v)]
            self.steps.append((ins, outs, code.tables[v].tolist()))
        self.term_pos = [[pos[e] for e in network.in_edges(t)] for t in network.terminals]

    def run(self, x: Sequence[int], overrides: Sequence[tuple[int, int]] = ()) -> list[Word]:
        val = [0] * self.n_edges
        over = dict(overrides)
        for p, s in zip(self.src_pos, x):
            val[p] = over.get(p, s)
        q = self.q
        for ins, outs, table in self.steps:
            idx = 0
            for p in ins:
                idx = idx * q + val[p]
            row = table[idx]
            for p, s in zip(outs, row):
                val[p] = over.get(p, s)
        return [tuple(val[p] for p in tp) for tp in self.term_pos]


def _check_word(network: Network, code: NetworkCode, x: Sequence[int]) -> Word:
    x = tuple(int(s) for s in x)
    n = network.n_source_edges
    if len(x) != n:
        raise ValueError(f"source word has length {len(x)}, network needs {n}")
    for s in x:
        if not 0 <= s < code.q:
            raise ValueError(f"symbol {s} outside alphabet of size {code.q}")
    return x


def transmit(
    network: Network, code: NetworkCode, x: Sequence[int], attack: Attack | Mapping[str, int] = Attack()
) -> dict[str, Word]:
    """Words received by each terminal when ``x`` is sent under ``attack``.

    Every edge carries its tail's computed symbol, replaced by the attack's
    override if there is one, before the head reads it.
    """
    x = _check_word(network, code, x)
    if not isinstance(attack, Attack):
        attack = Attack.from_dict(network, attack)
    pos = network.edge_position
    plan = _Plan(network, code)
    got = plan.run(x, [(pos[e], v) for e, v in attack.overrides])
    return dict(zip(network.terminals, got))


def fanout(
    network: Network,
    code: NetworkCode,
    x: Sequence[int],
    terminal: str,
    vulnerable: Iterable[str] | None = None,
    power: int | None = None,
) -> set[Word]:
    """Every word ``terminal`` can receive for source word ``x``."""
    x = _check_word(network, code, x)
    t = network.power if power is None else power
    if terminal not in network.terminals:
        raise NetworkError(f"{terminal} is not a terminal")
    ti = network.terminals.index(terminal)
    plan = _Plan(network, code)
    pos = network.edge_position
    U = _vulnerable_in_order(network, vulnerable)
    out = set()
    for a in enumerate_attacks(U, t, code.q):
        out.add(plan.run(x, [(pos[e], v) for e, v in a.overrides])[ti])
    return out


# ---------------------------------------------------------------------------
# unambiguity


@dataclass(frozen=True)
class CollisionWitness:
    """Two codewords and two attacks that make one terminal see the same word."""

    x: Word
    x2: Word
    attack: Attack
    attack2: Attack
    terminal: str
    received: Word

    def __bool__(self):
        # a witness certifies failure, so it must not read as "unambiguous"
        return False

    def replay(self, network: Network, code: NetworkCode) -> bool:
        """Re-run both transmissions and confirm the collision."""
        if self.x == self.x2:
            return False
        r1 = transmit(network, code, self.x, self.attack)[self.terminal]
        r2 = transmit(network, code, self.x2, self.attack2)[self.terminal]
        return r1 == r2 == self.received

    def as_dict(self) -> dict[str, str]:
        return {
            "codeword": ",".join(map(str, self.x)),
            "codeword2": ",".join(map(str, self.x2)),
            "attack": str(self.attack),
            "attack2": str(self.attack2),
            "terminal": self.terminal,
            "received": ",".join(map(str, self.received)),
        }


class TwoLevelImages:
    """Per-vertex reachable output sets for simple 2-level networks.

    Applies when the network has one terminal, every vertex between source and
    terminal reads only source edges, and every vulnerable edge leaves the
    source.  For a word x and a budget k at vertex V, ``image(V, x, k)`` is the
    set of output codes V can emit when at most k of its vulnerable inputs are
    overridden.  Two words collide iff for some split of the power between the
    vertices (for each word separately) every vertex has overlapping images.
    """

    def __init__(self, network: Network, code: NetworkCode, vulnerable=None, power=None):
        if not applies_two_level(network, vulnerable):
            raise NetworkError("network is not a simple 2-level network with source-edge adversary")
        self.network = network
        self.code = code
        self.q = q = code.q
        U = network.vulnerable if vulnerable is None else frozenset(vulnerable)
        self.t = network.power if power is None else power
        src = network.out_edges(network.source)
        spos = {e: i for i, e in enumerate(src)}
        self.vertices = list(network.intermediates)
        self.parts = []  # source-word coordinates feeding each vertex
        self.vuln = []  # boolean mask of vulnerable inputs per vertex
        self.outcodes = []
        self.inputs = []
        for v in self.vertices:
            ins = network.in_edges(v)
            self.parts.append([spos[e] for e in ins])
            self.vuln.append(np.array([e in U for e in ins], dtype=bool))
            tab = code.tables[v]
            weights = q ** np.arange(tab.shape[1] - 1, -1, -1, dtype=np.int64)
            self.outcodes.append(tab @ weights)
            self.inputs.append(all_tuples(len(ins), q))
        caps = [int(m.sum()) for m in self.vuln]
        total = min(self.t, sum(caps))
        self.budgets = [
            b
            for b in itertools.product(*(range(min(c, self.t) + 1) for c in caps))
            if sum(b) == total
        ]
        self._cache: dict[tuple[int, Word], list[frozenset[int]]] = {}

    def images(self, vi: int, part: Word) -> list[frozenset[int]]:
        key = (vi, part)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        inp = self.inputs[vi]
        diff = inp != np.asarray(part, dtype=np.int64)
        vm = self.vuln[vi]
        ok = ~diff[:, ~vm].any(axis=1)
        dist = diff[:, vm].sum(axis=1)
        kmax = min(int(vm.sum()), self.t)
        res = []
        oc = self.outcodes[vi]
        for k in range(kmax + 1):
            res.append(frozenset(np.unique(oc[ok & (dist <= k)]).tolist()))
        self._cache[key] = res
        return res

    def word_images(self, x: Word) -> list[list[frozenset[int]]]:
        return [self.images(i, tuple(x[p] for p in part)) for i, part in enumerate(self.parts)]

    def fanout(self, x: Word) -> set[tuple[int, ...]]:
        """Received words of x as tuples of per-vertex output codes."""
        ix = self.word_images(x)
        out = set()
        for a in self.budgets:
            out.update(itertools.product(*(ix[v][a[v]] for v in range(len(self.vertices)))))
        return out

    def fanout_size_bound(self, words) -> int:
        """Largest product of image sizes over the given words (cheap estimate)."""
        worst = 0
        for x in words[:8]:
            ix = self.word_images(x)
            for a in self.budgets:
                size = 1
                for v in range(len(self.vertices)):
                    size *= len(ix[v][a[v]])
                worst = max(worst, size * len(self.budgets))
        return worst

    def collide(self, x: Word, y: Word) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """Budget split pair realising a collision between x and y, if any."""
        ix, iy = self.word_images(x), self.word_images(y)
        for a in self.budgets:
            for b in self.budgets:
                if all(ix[v][a[v]] & iy[v][b[v]] for v in range(len(self.vertices))):
                    return a, b
        return None

    def witness(self, x: Word, y: Word) -> CollisionWitness | None:
        split = self.collide(x, y)
        if split is None:
            return None
        a, b = split
        ix, iy = self.word_images(x), self.word_images(y)
        src = self.network.out_edges(self.network.source)
        over_x: dict[str, int] = {}
        over_y: dict[str, int] = {}
        for vi in range(len(self.vertices)):
            out = min(ix[vi][a[vi]] & iy[vi][b[vi]])
            for word, k, over in ((x, a[vi], over_x), (y, b[vi], over_y)):
                part = np.asarray([word[p] for p in self.parts[vi]], dtype=np.int64)
                inp = self.inputs[vi]
                diff = inp != part
                vm = self.vuln[vi]
                ok = ~diff[:, ~vm].any(axis=1) & (diff[:, vm].sum(axis=1) <= k)
                row = int(np.flatnonzero(ok & (self.outcodes[vi] == out))[0])
                for j, p in enumerate(self.parts[vi]):
                    if diff[row, j]:
                        over[src[p]] = int(inp[row, j])
        net = self.network
        ax, ay = Attack.from_dict(net, over_x), Attack.from_dict(net, over_y)
        (term,) = net.terminals
        rx = transmit(net, self.code, x, ax)[term]
        return CollisionWitness(tuple(x), tuple(y), ax, ay, term, rx)


def applies_two_level(network: Network, vulnerable=None) -> bool:
    U = network.vulnerable if vulnerable is None else frozenset(vulnerable)
    return network.is_simple_two_level() and set(U) <= set(network.out_edges(network.source))


def _smallest_shared(fanouts: Iterable[Iterable]) -> tuple[int, int] | None:
    """Lexicographically least (i, j), i < j, whose fan-out sets share an element.

    The least pair overall is the least pair inside some shared bucket, and
    inside a bucket it is its two smallest members.
    """
    first: dict = {}
    best = None
    for i, fan in enumerate(fanouts):
        for key in fan:
            j = first.get(key)
            if j is None:
                first[key] = i
            elif best is None or (j, i) < best:
                # i increases, so (first member, i) is this bucket's least pair
                # unless a previous pair from it was recorded already
                best = (j, i)
    return best


def _first_colliding_pair_generic(network, code, words, vulnerable, power):
    plan = _Plan(network, code)
    pos = network.edge_position
    U = _vulnerable_in_order(network, vulnerable)
    attacks = [[(pos[e], v) for e, v in a.overrides] for a in enumerate_attacks(U, power, code.q)]

    def fan(x):
        out = set()
        for over in attacks:
            for ti, r in enumerate(plan.run(x, over)):
                out.add((ti, r))
        return out

    return _smallest_shared(fan(x) for x in words)


def _lexmin_witness(network, code, x, y, vulnerable, power) -> CollisionWitness | None:
    plan = _Plan(network, code)
    pos = network.edge_position
    U = _vulnerable_in_order(network, vulnerable)
    attacks = list(enumerate_attacks(U, power, code.q))
    enc = [[(pos[e], v) for e, v in a.overrides] for a in attacks]
    first_y: dict[tuple[int, Word], int] = {}
    for j, over in enumerate(enc):
        for ti, r in enumerate(plan.run(y, over)):
            first_y.setdefault((ti, r), j)
    for i, over in enumerate(enc):
        got = plan.run(x, over)
        best = None
        for ti, r in enumerate(got):
            j = first_y.get((ti, r))
            if j is not None and (best is None or (j, ti) < best):
                best = (j, ti)
        if best is not None:
            j, ti = best
            return CollisionWitness(
                x, y, attacks[i], attacks[j], network.terminals[ti], got[ti]
            )
    return None


def find_collision(
    network: Network,
    code: NetworkCode,
    outer: OuterCode | Iterable[Sequence[int]],
    vulnerable: Iterable[str] | None = None,
    power: int | None = None,
) -> CollisionWitness | None:
    """Smallest collision witness, or None when the code is unambiguous.

    Witnesses are ordered by codeword pair (lexicographic, smaller word
    first), then by the attack pair in :func:`enumerate_attacks` order, then
    by terminal.  When a codeword has more than ``WITNESS_ENUMERATION_LIMIT``
    attacks the colliding pair is still the smallest one, but the attacks are
    read off the per-vertex images instead of being enumerated.
    """
    words = sorted({_check_word(network, code, w) for w in outer})
    t = network.power if power is None else power
    U = _vulnerable_in_order(network, vulnerable)
    n_attacks = attack_count(len(U), t, code.q)
    if applies_two_level(network, vulnerable):
        img = TwoLevelImages(network, code, vulnerable, t)
        if img.fanout_size_bound(words) <= 1 << 12:
            best = _smallest_shared(img.fanout(x) for x in words)
            pair = None if best is None else (words[best[0]], words[best[1]])
        else:
            pair = None
            for i, x in enumerate(words):
                for y in words[i + 1 :]:
                    if img.collide(x, y) is not None:
                        pair = (x, y)
                        break
                if pair:
                    break
        if pair is None:
            return None
        if n_attacks <= WITNESS_ENUMERATION_LIMIT:
            return _lexmin_witness(network, code, pair[0], pair[1], vulnerable, t)
        return img.witness(*pair)
    if n_attacks > WITNESS_ENUMERATION_LIMIT * 50:
        raise NetworkError(f"{n_attacks} attacks per codeword is too many to enumerate")
    best = _first_colliding_pair_generic(network, code, words, vulnerable, t)
    if best is None:
        return None
    return _lexmin_witness(network, code, words[best[0]], words[best[1]], vulnerable, t)


def check_unambiguous(
    network: Network,
    code: NetworkCode,
    outer: OuterCode | Iterable[Sequence[int]],
    vulnerable: Iterable[str] | None = None,
    power: int | None = None,
) -> bool | CollisionWitness:
    """``True`` if fan-out sets of distinct codewords are disjoint at every terminal.

    Otherwise returns the smallest :class:`CollisionWitness` (which is falsy).
    """
    w = find_collision(network, code, outer, vulnerable, power)
    return True if w is None else w


def is_unambiguous(network, code, outer, vulnerable=None, power=None) -> bool:
    return find_collision(network, code, outer, vulnerable, power) is None
