"""A small CDCL SAT solver and DIMACS reader/writer.

Clauses use DIMACS literals (nonzero ints, negative for negation).  The
solver uses two watched literals, first-UIP clause learning with local
minimisation, VSIDS-style activities, phase saving, Luby restarts and
periodic deletion of long learnt clauses.  It is meant for the small
instances of this package, not for competition-sized problems.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"


@dataclass
class SatResult:
    status: str
    model: list[int] | None = None  # the true literals, one per variable
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    seconds: float = 0.0

    def value(self, var: int) -> bool:
        if self.model is None:
            raise ValueError(f"no model ({self.status})")
        return self.model[var - 1] > 0

    def true_vars(self) -> set[int]:
        return {lit for lit in (self.model or ()) if lit > 0}


def _luby(i: int) -> int:
    """i-th element (1-based) of the Luby sequence 1,1,2,1,1,2,4,..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class Solver:
    """CDCL solver over variables 1..n_vars.

    Internally literal ``v`` is coded ``2v`` and ``-v`` is ``2v+1``.
    """

    def __init__(self, n_vars: int, clauses: Iterable[Sequence[int]] = ()):
        self.n = n_vars
        self.assign = [0] * (n_vars + 1)  # +1 true, -1 false, 0 free
        self.level = [0] * (n_vars + 1)
        self.reason: list[list[int] | None] = [None] * (n_vars + 1)
        self.watches: list[list[list[int]]] = [[] for _ in range(2 * n_vars + 2)]
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.activity = [0.0] * (n_vars + 1)
        self.var_inc = 1.0
        self.phase = [False] * (n_vars + 1)
        self.heap = [(0.0, v) for v in range(1, n_vars + 1)]
        self.ok = True
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        for c in clauses:
            self.add_clause(c)

    # -- literal helpers -------------------------------------------------
    @staticmethod
    def _code(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def _value(self, code: int) -> int:
        a = self.assign[code >> 1]
        return -a if code & 1 else a

    # -- clause database ------------------------------------------------
    def add_clause(self, lits: Sequence[int]) -> bool:
        if not self.ok:
            return False
        if self.trail_lim:
            raise RuntimeError("clauses can only be added at decision level 0")
        seen = set()
        codes = []
        for lit in lits:
            if lit == 0 or abs(lit) > self.n:
                raise ValueError(f"literal {lit} out of range 1..{self.n}")
            c = self._code(lit)
            if c ^ 1 in seen:
                return True  # tautology
            if c in seen:
                continue
            val = self._value(c)
            if val == 1:
                return True
            if val == -1:
                continue  # false at level 0
            seen.add(c)
            codes.append(c)
        if not codes:
            self.ok = False
            return False
        if len(codes) == 1:
            self._enqueue(codes[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self.clauses.append(codes)
        self.watches[codes[0]].append(codes)
        self.watches[codes[1]].append(codes)
        return True

    def _enqueue(self, code: int, reason) -> None:
        v = code >> 1
        self.assign[v] = -1 if code & 1 else 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(code)

    # -- propagation ----------------------------------------------------
    def _propagate(self):
        assign = self.assign
        watches = self.watches
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            watches[false_lit] = keep = []
            n_ws = len(ws)
            i = 0
            while i < n_ws:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                a = assign[first >> 1]
                if (-a if first & 1 else a) == 1:
                    keep.append(c)
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    ak = assign[lk >> 1]
                    if (-ak if lk & 1 else ak) != -1:
                        c[1], c[k] = lk, false_lit
                        watches[lk].append(c)
                        break
                else:
                    keep.append(c)
                    if (-a if first & 1 else a) == -1:
                        keep.extend(ws[i:])
                        self.qhead = len(trail)
                        return c
                    self._enqueue(first, c)
        return None

    # -- conflict analysis ---------------------------------------------
    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.n + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.n + 1) if not self.assign[u]]
            heapq.heapify(self.heap)
        if not self.assign[v]:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = set()
        learnt = [0]
        path = 0
        p = None
        idx = len(self.trail) - 1
        cur = len(self.trail_lim)
        level = self.level
        while True:
            start = 0 if p is None else 1
            for q in confl[start:]:
                v = q >> 1
                if v not in seen and level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if level[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while (self.trail[idx] >> 1) not in seen:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            confl = self.reason[p >> 1]
            seen.discard(p >> 1)
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1
        # drop literals implied by the rest of the clause
        marked = {q >> 1 for q in learnt}
        out = [learnt[0]]
        for q in learnt[1:]:
            r = self.reason[q >> 1]
            if r is None or not all((u >> 1) in marked or level[u >> 1] == 0 for u in r[1:]):
                out.append(q)
        if len(out) == 1:
            return out, 0
        # second watch: highest level among the rest
        best = max(range(1, len(out)), key=lambda i: level[out[i] >> 1])
        out[1], out[best] = out[best], out[1]
        return out, level[out[1] >> 1]

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        stop = self.trail_lim[lvl]
        for code in self.trail[stop:]:
            v = code >> 1
            self.phase[v] = not (code & 1)
            self.assign[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[stop:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    def _pick(self) -> int | None:
        heap = self.heap
        while heap:
            _, v = heapq.heappop(heap)
            if not self.assign[v]:
                return v
        for v in range(1, self.n + 1):
            if not self.assign[v]:
                return v
        return None

    def _reduce(self) -> None:
        locked = {id(self.reason[c >> 1]) for c in self.trail if self.reason[c >> 1] is not None}
        self.learnts.sort(key=len)
        half = len(self.learnts) // 2
        keep = self.learnts[:half] + [c for c in self.learnts[half:] if id(c) in locked or len(c) <= 2]
        self.learnts = keep
        self.watches = [[] for _ in range(2 * self.n + 2)]
        for c in self.clauses:
            self.watches[c[0]].append(c)
            self.watches[c[1]].append(c)
        for c in self.learnts:
            self.watches[c[0]].append(c)
            self.watches[c[1]].append(c)

    # -- main loop ------------------------------------------------------
    def solve(
        self,
        assumptions: Sequence[int] = (),
        max_conflicts: int | None = None,
        seconds: float | None = None,
    ) -> SatResult:
        start = time.monotonic()
        deadline = None if seconds is None else start + seconds

        def result(status, model=None):
            return SatResult(status, model, self.conflicts, self.decisions, self.propagations,
                             time.monotonic() - start)

        if not self.ok:
            return result(UNSAT)
        if self._propagate() is not None:
            self.ok = False
            return result(UNSAT)
        assumed = [self._code(a) for a in assumptions]
        restart_no = 1
        budget_here = 100 * _luby(restart_no)
        since_restart = 0
        max_learnts = max(len(self.clauses) // 3, 2000)
        conflicts_at_start = self.conflicts
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if len(self.trail_lim) == 0:
                    self.ok = False
                    return result(UNSAT)
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self.learnts.append(learnt)
                    self.watches[learnt[0]].append(learnt)
                    self.watches[learnt[1]].append(learnt)
                    self._enqueue(learnt[0], learnt)
                self.var_inc *= 1.05
                if max_conflicts is not None and self.conflicts - conflicts_at_start >= max_conflicts:
                    self._cancel_until(0)
                    return result(UNKNOWN)
                if deadline is not None and (self.conflicts & 63) == 0 and time.monotonic() > deadline:
                    self._cancel_until(0)
                    return result(UNKNOWN)
                continue
            if since_restart >= budget_here:
                restart_no += 1
                budget_here = 100 * _luby(restart_no)
                since_restart = 0
                self._cancel_until(0)
            if len(self.learnts) - len(self.trail) >= max_learnts:
                self._reduce()
                max_learnts = int(max_learnts * 1.1)
            lvl = len(self.trail_lim)
            if lvl < len(assumed):
                a = assumed[lvl]
                val = self._value(a)
                self.trail_lim.append(len(self.trail))
                if val == -1:
                    self._cancel_until(0)
                    return result(UNSAT)
                if val == 0:
                    self._enqueue(a, None)
                continue
            v = self._pick()
            if v is None:
                model = [u if self.assign[u] > 0 else -u for u in range(1, self.n + 1)]
                self._cancel_until(0)
                return result(SAT, model)
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(2 * v + (0 if self.phase[v] else 1), None)
            if deadline is not None and (self.decisions & 255) == 0 and time.monotonic() > deadline:
                self._cancel_until(0)
                return result(UNKNOWN)


def solve(
    n_vars: int,
    clauses: Iterable[Sequence[int]],
    max_conflicts: int | None = None,
    seconds: float | None = None,
) -> SatResult:
    return Solver(n_vars, clauses).solve(max_conflicts=max_conflicts, seconds=seconds)


def check_model(clauses: Iterable[Sequence[int]], true_lits: set[int] | Sequence[int]) -> int | None:
    """Index of the first clause not satisfied by the literals, or None."""
    lits = set(true_lits)
    for i, c in enumerate(clauses):
        if not any(lit in lits for lit in c):
            return i
    return None


# ---------------------------------------------------------------------------
# DIMACS


def to_dimacs(n_vars: int, clauses: Sequence[Sequence[int]], comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {n_vars} {len(clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in clauses)
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    n_vars = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {line_no}: bad problem line")
            n_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(cur)
    if n_vars is None:
        raise ValueError("missing 'p cnf' line")
    return n_vars, clauses
