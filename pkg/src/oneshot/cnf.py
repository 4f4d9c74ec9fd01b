"""Joint outer/inner code search as a CNF formula.

For a simple 2-level network (one terminal, every vertex reads source edges
and writes to the terminal, vulnerable edges leave the source) and a target
size M the formula has five variable families:

  x[c, a, s]         codeword c puts symbol s on source edge a
  f[v, sigma, tau]   vertex v maps input tuple sigma to output tuple tau
  y[c, v, sigma, d]  under attacked edge set d, v can see sigma when c is sent
  z[c, v, tau, d]    under attacked edge set d, v can emit tau when c is sent
  p[c, v, sigma, tau, d]  the product f[v, sigma, tau] * y[c, v, sigma, d]

Exactly-one constraints make x a list of words and f a list of functions.
The y and z families are linked to x and f by implications both ways (so a
satisfying assignment gives them their intended meaning), the product is
linearised by the usual three clauses, and for every pair of codewords,
pair of attacked edge sets and output tuple per vertex one clause forbids
both codewords from producing that terminal word.

Census, with Delta the attacked edge sets and N the vertices not fixed to
the identity:

  x    = M * |out(S)| * q
  f    = sum over v in N of q^in(v) * q^out(v)
  y    = M * |Delta| * sum over all v of q^in(v)
  z    = M * |Delta| * sum over v in N of q^out(v)    (identity vertices reuse y)
  aux  = M * |Delta| * sum over v in N of q^in(v) * q^out(v)

``attacks="all"`` takes Delta to be every subset of the vulnerable edges of
size at most t; ``attacks="maximal"`` keeps only the subsets of size
min(t, |U|).  Any smaller set is contained in a maximal one and reaches a
subset of its words, so both give the same feasibility answer.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .channel import (
    NetworkCode,
    OuterCode,
    all_tuples,
    applies_two_level,
    check_unambiguous,
    tuple_index,
)
from .netmodel import Network, NetworkError
from .sat import SAT, UNSAT, Solver, check_model, to_dimacs

__all__ = [
    "CnfInstance",
    "census",
    "cnf_search",
    "encode_cnf",
    "reductions_satisfied",
    "solve_cnf",
]

ATTACK_MODES = ("maximal", "all")
CNF_REDUCTIONS = ("identity", "zero", "relabel")


def attack_sets(vulnerable: Sequence[str], t: int, mode: str = "maximal") -> list[tuple[str, ...]]:
    if mode not in ATTACK_MODES:
        raise ValueError(f"unknown attack mode {mode!r}")
    k = min(t, len(vulnerable))
    sizes = [k] if mode == "maximal" else range(k + 1)
    return [d for r in sizes for d in itertools.combinations(vulnerable, r)]


def _delta_size(n_vuln: int, t: int, mode: str) -> int:
    k = min(t, n_vuln)
    if mode == "maximal":
        return comb(n_vuln, k)
    return sum(comb(n_vuln, r) for r in range(k + 1))


def census(network: Network, M: int, q: int | None = None, attacks: str = "maximal",
           reductions: Sequence[str] = CNF_REDUCTIONS) -> dict[str, int]:
    """Closed-form variable counts of ``encode_cnf`` for these arguments."""
    q = network.q if q is None else q
    src = network.out_edges(network.source)
    U = [e for e in src if e in network.vulnerable]
    D = _delta_size(len(U), network.power, attacks)
    fixed = _fixed_vertices(network, reductions)
    mids = network.intermediates
    free = [v for v in mids if v not in fixed]
    qin = {v: q ** network.in_degree(v) for v in mids}
    qout = {v: q ** network.out_degree(v) for v in mids}
    c = {
        "x": M * len(src) * q,
        "f": sum(qin[v] * qout[v] for v in free),
        "y": M * D * sum(qin.values()),
        "z": M * D * sum(qout[v] for v in free),
        "aux": M * D * sum(qin[v] * qout[v] for v in free),
    }
    c["total"] = sum(c.values())
    return c


def _fixed_vertices(network: Network, reductions) -> set[str]:
    if "identity" not in reductions:
        return set()
    return {v for v in network.intermediates if network.in_degree(v) == network.out_degree(v)}


@dataclass
class _Vertex:
    name: str
    inputs: tuple[str, ...]
    positions: list[int]  # source-word coordinates of the inputs
    n_in: int
    n_out: int
    fixed: bool
    sigmas: np.ndarray  # all input tuples in table row order


@dataclass
class CnfInstance:
    network: Network
    q: int
    M: int
    attacks: str
    reductions: tuple[str, ...]
    delta: list[tuple[str, ...]]
    vertices: list[_Vertex]
    x: dict[tuple, int] = field(default_factory=dict)
    f: dict[tuple, int] = field(default_factory=dict)
    y: dict[tuple, int] = field(default_factory=dict)
    z: dict[tuple, int] = field(default_factory=dict)
    aux: dict[tuple, int] = field(default_factory=dict)
    n_vars: int = 0
    _clauses: list[list[int]] | None = None

    # -- variables ------------------------------------------------------
    def _new(self) -> int:
        self.n_vars += 1
        return self.n_vars

    def names(self) -> Iterator[tuple[int, str, tuple]]:
        for fam in ("x", "f", "y", "z", "aux"):
            for key, var in getattr(self, fam).items():
                yield var, fam, key

    def var_census(self) -> dict[str, int]:
        c = {fam: len(getattr(self, fam)) for fam in ("x", "f", "y", "z", "aux")}
        c["total"] = sum(c.values())
        return c

    def _zvar(self, c: int, vi: int, tau: int, d: int) -> int:
        v = self.vertices[vi]
        if v.fixed:
            return self.y[c, v.name, tau, d]
        return self.z[c, v.name, tau, d]

    # -- clauses --------------------------------------------------------
    def iter_clauses(self) -> Iterator[list[int]]:
        q, M = self.q, self.M
        src = self.network.out_edges(self.network.source)
        for c in range(M):
            for a in range(len(src)):
                yield from _exactly_one([self.x[c, a, s] for s in range(q)])
        for v in self.vertices:
            if v.fixed:
                continue
            for sg in range(len(v.sigmas)):
                yield from _exactly_one([self.f[v.name, sg, tau] for tau in range(q**v.n_out)])
        if "zero" in self.reductions:
            for a in range(len(src)):
                yield [self.x[0, a, 0]]
        if "relabel" in self.reductions:
            for v in self.vertices:
                if not v.fixed:
                    yield [self.f[v.name, 0, 0]]
        for c in range(M):
            for vi, v in enumerate(self.vertices):
                for di, d in enumerate(self.delta):
                    open_ = [j for j, e in enumerate(v.inputs) if e not in d]
                    for sg, sigma in enumerate(v.sigmas):
                        yv = self.y[c, v.name, sg, di]
                        xs = [self.x[c, v.positions[j], int(sigma[j])] for j in open_]
                        # y is 1 iff every unattacked input carries sigma
                        yield [yv] + [-xv for xv in xs]
                        for xv in xs:
                            yield [-yv, xv]
                    if v.fixed:
                        continue
                    for tau in range(self.q**v.n_out):
                        zv = self.z[c, v.name, tau, di]
                        ps = []
                        for sg in range(len(v.sigmas)):
                            p = self.aux[c, v.name, sg, tau, di]
                            fv = self.f[v.name, sg, tau]
                            yv = self.y[c, v.name, sg, di]
                            yield [-p, fv]
                            yield [-p, yv]
                            yield [p, -fv, -yv]
                            yield [zv, -p]
                            ps.append(p)
                        yield [-zv] + ps
        nd = len(self.delta)
        taus = [range(self.q**v.n_out) for v in self.vertices]
        nv = len(self.vertices)
        for c1, c2 in itertools.combinations(range(M), 2):
            for d1 in range(nd):
                for d2 in range(nd):
                    for word in itertools.product(*taus):
                        yield [-self._zvar(c1, i, word[i], d1) for i in range(nv)] + [
                            -self._zvar(c2, i, word[i], d2) for i in range(nv)
                        ]

    @property
    def clauses(self) -> list[list[int]]:
        if self._clauses is None:
            self._clauses = list(self.iter_clauses())
        return self._clauses

    def n_clauses(self) -> int:
        return sum(1 for _ in self.iter_clauses()) if self._clauses is None else len(self._clauses)

    # -- decoding and encoding of concrete pairs -----------------------
    def decode(self, true_vars: set[int] | Sequence[int]) -> tuple[OuterCode, NetworkCode]:
        true = {v for v in true_vars if v > 0}
        q = self.q
        n = self.network.n_source_edges
        words = []
        for c in range(self.M):
            w = []
            for a in range(n):
                syms = [s for s in range(q) if self.x[c, a, s] in true]
                if len(syms) != 1:
                    raise ValueError(f"codeword {c}, edge {a}: {len(syms)} symbols set")
                w.append(syms[0])
            words.append(tuple(w))
        tables = {}
        for v in self.vertices:
            if v.fixed:
                continue
            rows = []
            for sg in range(len(v.sigmas)):
                taus = [t for t in range(q**v.n_out) if self.f[v.name, sg, t] in true]
                if len(taus) != 1:
                    raise ValueError(f"vertex {v.name}, input {sg}: {len(taus)} outputs set")
                rows.append(_digits(taus[0], q, v.n_out))
            tables[v.name] = np.array(rows, dtype=np.int64).reshape(len(v.sigmas), v.n_out)
        return OuterCode(tuple(words), q), NetworkCode(self.network, q, tables)

    def assignment(self, outer: OuterCode, code: NetworkCode) -> set[int]:
        """True variables of the assignment given directly by (outer, code)."""
        if len(outer) != self.M:
            raise ValueError(f"outer code has {len(outer)} words, instance expects {self.M}")
        q = self.q
        true = set()
        for c, w in enumerate(outer.words):
            for a, s in enumerate(w):
                true.add(self.x[c, a, s])
        outs = {}
        for v in self.vertices:
            tab = code.tables[v.name]
            if v.fixed and not np.array_equal(tab, v.sigmas):
                raise ValueError(f"vertex {v.name} is fixed to the identity by the reductions")
            outs[v.name] = [tuple_index(row, q) for row in tab]
            if not v.fixed:
                for sg, tau in enumerate(outs[v.name]):
                    true.add(self.f[v.name, sg, tau])
        for c, w in enumerate(outer.words):
            for v in self.vertices:
                part = np.array([w[p] for p in v.positions], dtype=np.int64)
                for di, d in enumerate(self.delta):
                    open_ = np.array([e not in d for e in v.inputs], dtype=bool)
                    ok = ~(v.sigmas[:, open_] != part[open_]).any(axis=1)
                    for sg in np.flatnonzero(ok):
                        sg = int(sg)
                        true.add(self.y[c, v.name, sg, di])
                        if not v.fixed:
                            tau = outs[v.name][sg]
                            true.add(self.aux[c, v.name, sg, tau, di])
                            true.add(self.z[c, v.name, tau, di])
        return true

    def check(self, true_vars: set[int]) -> list[int] | None:
        """First clause falsified by the assignment, or None."""
        true = set(true_vars)
        for cl in self.iter_clauses():
            if not any((lit > 0) == (abs(lit) in true) for lit in cl):
                return cl
        return None

    # -- export ---------------------------------------------------------
    def header(self) -> list[str]:
        lines = [
            f"network {self.network.name} q={self.q} M={self.M} attacks={self.attacks} "
            f"reductions={','.join(self.reductions) or 'none'}",
            "source edges " + " ".join(self.network.out_edges(self.network.source)),
        ]
        for i, d in enumerate(self.delta):
            lines.append(f"delta {i} = {{{','.join(d)}}}")
        for var, fam, key in sorted(self.names()):
            lines.append(f"var {var} {fam} " + " ".join(map(str, key)))
        return lines

    def to_dimacs(self) -> str:
        return to_dimacs(self.n_vars, self.clauses, self.header())


def _exactly_one(vs: list[int]) -> Iterator[list[int]]:
    yield list(vs)
    for a, b in itertools.combinations(vs, 2):
        yield [-a, -b]


def _digits(idx: int, q: int, k: int) -> list[int]:
    out = [0] * k
    for j in range(k - 1, -1, -1):
        idx, out[j] = divmod(idx, q)
    return out


def encode_cnf(
    network: Network,
    M: int,
    q: int | None = None,
    attacks: str = "maximal",
    reductions: Sequence[str] = CNF_REDUCTIONS,
) -> CnfInstance:
    """Build the constraint model for an unambiguous pair of size M."""
    q = network.q if q is None else q
    if q is None:
        raise ValueError("alphabet size not given")
    if not applies_two_level(network):
        raise NetworkError("the CNF model needs a simple 2-level network with source-edge adversary")
    bad = set(reductions) - set(CNF_REDUCTIONS)
    if bad:
        raise ValueError(f"unknown reductions {sorted(bad)}")
    if M < 1:
        raise ValueError("target size must be >= 1")
    src = network.out_edges(network.source)
    spos = {e: i for i, e in enumerate(src)}
    U = [e for e in src if e in network.vulnerable]
    fixed = _fixed_vertices(network, reductions)
    verts = []
    for v in network.intermediates:
        ins = network.in_edges(v)
        verts.append(_Vertex(v, ins, [spos[e] for e in ins], len(ins), network.out_degree(v),
                             v in fixed, all_tuples(len(ins), q)))
    inst = CnfInstance(network, q, M, attacks, tuple(reductions), attack_sets(U, network.power, attacks), verts)
    for c in range(M):
        for a in range(len(src)):
            for s in range(q):
                inst.x[c, a, s] = inst._new()
    for v in verts:
        if not v.fixed:
            for sg in range(q**v.n_in):
                for tau in range(q**v.n_out):
                    inst.f[v.name, sg, tau] = inst._new()
    for c in range(M):
        for v in verts:
            for di in range(len(inst.delta)):
                for sg in range(q**v.n_in):
                    inst.y[c, v.name, sg, di] = inst._new()
                if v.fixed:
                    continue
                for tau in range(q**v.n_out):
                    inst.z[c, v.name, tau, di] = inst._new()
                for sg in range(q**v.n_in):
                    for tau in range(q**v.n_out):
                        inst.aux[c, v.name, sg, tau, di] = inst._new()
    return inst


def reductions_satisfied(network: Network, outer: OuterCode, code: NetworkCode) -> tuple[str, ...]:
    """The reductions an existing pair already obeys, for round-trip checks.

    ``zero`` additionally needs the all-zero word listed first.
    """
    q = code.q
    out = []
    fixed = _fixed_vertices(network, ("identity",))
    if all(np.array_equal(code.tables[v], all_tuples(network.in_degree(v), q)) for v in fixed):
        out.append("identity")
    if not any(outer.words[0]):
        out.append("zero")
    free = [v for v in network.intermediates if "identity" not in out or v not in fixed]
    if all(not code.tables[v][0].any() for v in free):
        out.append("relabel")
    return tuple(out)


def solve_cnf(instance: CnfInstance, seconds: float | None = None, max_conflicts: int | None = None):
    """Run the internal solver; a SAT model is decoded and re-verified.

    Returns ``(status, pair)`` with ``pair`` None unless the status is SAT.
    """
    res = Solver(instance.n_vars, instance.clauses).solve(max_conflicts=max_conflicts, seconds=seconds)
    if res.status != SAT:
        return res, None
    if check_model(instance.clauses, res.model) is not None:
        raise AssertionError("solver model violates a clause")
    outer, code = instance.decode(res.true_vars())
    if check_unambiguous(instance.network, code, outer) is not True:
        raise AssertionError("decoded pair fails verification")
    return res, (outer, code)


def cnf_search(
    network: Network,
    M: int,
    q: int | None = None,
    reductions: Sequence[str] = CNF_REDUCTIONS,
    budget: float | None = None,
    attacks: str = "maximal",
    max_conflicts: int | None = None,
):
    from .search import SearchResult

    start = time.monotonic()
    inst = encode_cnf(network, M, q, attacks=attacks, reductions=reductions)
    res, pair = solve_cnf(inst, seconds=budget, max_conflicts=max_conflicts)
    notes = [f"vars={inst.n_vars}", f"clauses={len(inst.clauses)}", f"conflicts={res.conflicts}"]
    elapsed = time.monotonic() - start
    if res.status == SAT:
        return SearchResult("feasible", M, pair[0], pair[1], method="cnf", explored=res.conflicts,
                            seconds=elapsed, notes=notes)
    status = "infeasible" if res.status == UNSAT else "unknown"
    if status == "unknown":
        notes.append("budget exhausted")
    return SearchResult(status, M, method="cnf", explored=res.conflicts, seconds=elapsed, notes=notes)
