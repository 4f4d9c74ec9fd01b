"""End-to-end reproduction runs, one per acceptance criterion.

Each runner returns a :class:`CriterionReport` listing individual checks.  A
check that cannot hold as literally stated carries a ``known_gap`` reason;
it is still computed and reported as FAIL when it fails.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .channel import NetworkCode, OuterCode, check_unambiguous, fanout
from .cnf import encode_cnf, reductions_satisfied, solve_cnf
from .constructions import (
    EMBEDDED_IDS,
    embedded_code,
    family_e_construct,
    family_e_formula,
    max_code_hamming3,
    mds_parity_code,
    min_distance,
    s_family_upper_exponent,
)
from .netmodel import (
    bottleneck_network,
    diamond,
    family_b,
    family_e,
    figure1_network,
    figure5_network,
    s_family,
    singleton_bound,
)
from .sat import SAT, UNSAT
from .search import joint_search
from .separability import (
    Metric,
    check_separable,
    corrects_t_errors,
    distance,
    max_t_correcting_codes,
    obstruction_certificate,
)

__all__ = ["CRITERIA", "Check", "CriterionReport", "run"]

EXTENDED = os.environ.get("ONESHOT_EXTENDED") == "1"

# checks that cannot pass as literally stated, with the reason
KNOWN_GAPS = {
    "embedded B2-q5-16 unambiguous": "the embedded V2 table sends 24 of 125 inputs to (0,0); "
    "31 codeword pairs collide under every coordinate ordering",
    "round trip B2-q5-16": "same pair; an ambiguous pair violates a nonambiguity clause",
    "E_3 q=2 size": "formula gives 0 but every network carries a size-1 code",
    "E_4 q=2 size": "formula gives 0 but every network carries a size-1 code",
    "E_5 q=2 size": "formula gives 0 but every network carries a size-1 code",
    "E_5 q=3 size": "formula gives 0 but every network carries a size-1 code",
    "figure5 not separable": "V2 forwarding (e2, e5) to T1 and (e2, e4) to T2 hands each terminal "
    "the codeword with at most one changed symbol; every distance-3 code is then unambiguous",
}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    @property
    def known_gap(self) -> str | None:
        return KNOWN_GAPS.get(self.name)


@dataclass
class CriterionReport:
    cid: int
    title: str
    limit: float
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    skipped: str = ""

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and self.seconds <= self.limit

    @property
    def ok_except_known(self) -> bool:
        return all(c.ok or c.known_gap for c in self.checks) and self.seconds <= self.limit

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tag = "PASS" if c.ok else "FAIL"
            extra = f" ({c.detail})" if c.detail else ""
            gap = f" [known gap: {c.known_gap}]" if (not c.ok and c.known_gap) else ""
            out.append(f"  {tag} {c.name}{extra}{gap}")
        status = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.1f}s of {self.limit:.0f}s"
        head = f"criterion {self.cid} {status}: {self.title} [{timing}]"
        if self.skipped:
            head += f" ({self.skipped})"
        return [head] + out


def _timed(report: CriterionReport, name: str, fn: Callable[[], bool], limit: float | None = None, detail=""):
    t = time.monotonic()
    ok = fn()
    dt = time.monotonic() - t
    if limit is not None:
        detail = (detail + "; " if detail else "") + f"{dt:.2f}s"
        ok = ok and dt <= limit
    report.add(name, ok, detail)
    return ok


# ---------------------------------------------------------------------------


def criterion_1(r: CriterionReport):
    for aid in EMBEDDED_IDS:
        net, outer, code = embedded_code(aid)
        _timed(r, f"embedded {aid} unambiguous",
               lambda: check_unambiguous(net, code, outer) is True, 10.0, f"{len(outer)} words")


def criterion_2(r: CriterionReport):
    bs = [singleton_bound(family_b(s)).value for s in range(2, 13)]
    r.add("B_s bound = s for s <= 12", bs == list(range(2, 13)), f"{bs}")
    es = [singleton_bound(family_e(t)).value for t in range(1, 7)]
    r.add("E_t bound = 1 for t <= 6", es == [1] * 6, f"{es}")
    f1 = singleton_bound(figure1_network()).value
    r.add("figure1 bound = 0", f1 == 0, f"{f1}")
    bad = []
    for a, b, s in itertools.product(range(1, 6), range(0, 4), range(1, 6)):
        v = singleton_bound(s_family(a, b, s)).value
        if v != s_family_upper_exponent(a, b, s):
            bad.append((a, b, s, v))
    r.add("S_{a,b,s} bound matches closed form on a<=5, b<=3, s<=5", not bad, f"mismatches={bad[:5]}")


def criterion_3(r: CriterionReport):
    for t in range(1, 6):
        for q in range(2, 10):
            want = family_e_formula(t, q)
            plan = family_e_construct(t, q)
            ok = check_unambiguous(family_e(t, q), plan.code, plan.outer) is True
            r.add(f"E_{t} q={q} verifies", ok)
            r.add(f"E_{t} q={q} size", len(plan.outer) == want, f"size={len(plan.outer)} formula={want}")


def _feasible_at(r: CriterionReport, label: str, net, M: int, q: int):
    res_ok = joint_search(net, M, q)
    res_no = joint_search(net, M + 1, q)
    r.add(f"{label} q={q}: size {M} feasible", res_ok.status == "feasible", f"{res_ok.seconds:.2f}s")
    r.add(f"{label} q={q}: size {M + 1} infeasible", res_no.status == "infeasible",
          f"{res_no.status}, {res_no.seconds:.2f}s")


def criterion_4(r: CriterionReport):
    for q in (2, 3):
        _feasible_at(r, "Diamond", diamond(q), q - 1, q)


def criterion_5(r: CriterionReport):
    for q in (2, 3):
        _feasible_at(r, "S_2,1,1", s_family(2, 1, 1, q), q, q)
    _feasible_at(r, "S_3,1,1", s_family(3, 1, 1, 2), 2, 2)
    for b in (2, 3):
        _feasible_at(r, f"S_1,{b},1", s_family(1, b, 1, 2), 2, 2)
    # the hand count of distance-3 binary codes of length 5, reported only
    codes = max_t_correcting_codes(5, 2, 1, Metric.hamming(2), 4)
    r.add("binary length-5 distance-3 codes of size 4 enumerated", len(codes) > 0, f"count={len(codes)}")


def criterion_6(r: CriterionReport):
    cases = [(3, q) for q in (2, 3, 4, 5)] + [(4, q) for q in (3, 4, 5, 7, 8, 9)] + [(5, q) for q in (4, 5, 7, 8, 9)]
    for n, q in cases:
        code = mds_parity_code(n, q)
        d = min_distance(code.words)
        r.add(f"[{n},{n - 2},3] over q={q}", d == 3 and len(code) == q ** (n - 2), f"d={d} size={len(code)}")
    for (n, q), want in {(4, 2): 2, (5, 2): 4, (4, 3): 9}.items():
        res = max_code_hamming3(n, q)
        r.add(f"A_{q}({n},3) = {want}", res.exact and res.value == want, f"[{res.lower},{res.upper}]")
    r.add("A_3(4,3) equals the [4,2,3] MDS code size", max_code_hamming3(4, 3).value == len(mds_parity_code(4, 3)))


def criterion_7(r: CriterionReport):
    for aid in EMBEDDED_IDS:
        net, outer, code = embedded_code(aid)
        inst = encode_cnf(net, len(outer), code.q, reductions=reductions_satisfied(net, outer, code))
        bad = inst.check(inst.assignment(outer, code))
        r.add(f"round trip {aid}", bad is None, f"vars={inst.n_vars}" + ("" if bad is None else f" violated={bad[:6]}"))
    res, _ = solve_cnf(encode_cnf(diamond(2), 2, 2))
    r.add("Diamond q=2 size 2 UNSAT", res.status == UNSAT, f"conflicts={res.conflicts}")
    res, pair = solve_cnf(encode_cnf(diamond(3), 2, 3))
    ok = res.status == SAT and pair is not None and check_unambiguous(diamond(3), pair[1], pair[0]) is True
    r.add("Diamond q=3 size 2 SAT and decoded pair verifies", ok)


def criterion_8(r: CriterionReport):
    budget = float(os.environ.get("ONESHOT_S312_BUDGET", "20"))
    res = joint_search(s_family(3, 1, 2, 2), 7, 2, method="cnf", budget=budget)
    r.add("S_3,1,2 q=2 size 7: budgeted run ends without a pair", res.status in ("unknown", "infeasible"),
          f"status={res.status} budget={budget:.0f}s")
    if not EXTENDED:
        r.skipped = "extended tier off; criteria 1 and 7 stand in for the SAT regeneration"
        return
    ext = float(os.environ.get("ONESHOT_EXTENDED_BUDGET", str(12 * 3600)))
    for q, M in ((4, 10), (5, 16)):
        res = joint_search(family_b(2, q), M, q, method="cnf", budget=ext / 2)
        r.add(f"B_2 q={q} size {M} SAT model found and verified", res.status == "feasible",
              f"status={res.status} {res.seconds:.0f}s")


def criterion_9(r: CriterionReport):
    H2 = Metric.hamming(2)
    res = check_separable(bottleneck_network(2), 2, 2, H2)
    r.add("bottleneck q=2 Hamming: not separable over all 256 tables",
          res.verdict == "not_separable" and res.enumerated == 256, f"{res.failing_counts()}")
    replayed = 0
    for tab in range(256):
        _, wit = res.failure(0, 0, tab)
        replayed += wit.replay(res.network, res.network_code(0, [tab]))
    r.add("bottleneck q=2: every table has a replayable collision", replayed == 256, f"{replayed}/256")
    res3 = check_separable(bottleneck_network(3), 3, 3, Metric.hamming(3))
    cert = res3.certificate
    r.add("bottleneck q=3 Hamming: certified not separable",
          res3.verdict == "not_separable" and cert is not None and cert.verify())
    rank = Metric.rank(8)
    from .gf import field

    F = field(8)
    a = 2  # the class of x, a root of x^3 + x + 1
    a2, a4 = F.mul(a, a), F.mul(F.mul(a, a), F.mul(a, a))
    lines = [[tuple(F.mul(c, x) for x in (1, a, y)) for c in range(8)] for y in (a2, a4)]
    ok_codes = all(corrects_t_errors(L, 1, rank) for L in lines)
    cert8 = obstruction_certificate(lines, 1, 8)
    r.add("bottleneck GF(8) rank: both lines correct one rank error and a certificate verifies",
          ok_codes and cert8 is not None and cert8.verify())
    net5 = figure5_network(2)
    res5 = check_separable(net5, 2, 2, H2)
    ctx = res5.contexts[0]
    lemma_pts = [0b000, 0b011, 0b101, 0b110]
    lemma_ok, filtered = True, 0
    for ti in range(2):
        tabs = ctx.tables_by_terminal[ti]
        vals = tabs[:, lemma_pts]
        distinct = np.array([len(set(v)) == 4 for v in vals.tolist()])
        comp = np.all(tabs[:, :4] != tabs[:, 7 - np.arange(4)], axis=1)
        lemma_ok &= bool(np.all(ctx.fails[ti][~distinct] >= 0))
        filtered += int((distinct & comp).sum())
    r.add("figure5 lemma: tables with a repeated value on 000,011,101,110 all show a collision", lemma_ok,
          f"filtered tables={filtered}")
    r.add("figure5 not separable", res5.verdict == "not_separable",
          f"verdict={res5.verdict}, passing f={len(ctx.passing(0))}, passing g={len(ctx.passing(1))}")
    if res5.witness is not None:
        ok = all(check_unambiguous(net5, res5.witness, OuterCode(c, 2)) is True for c in res5.codes)
        r.add("figure5 universal code re-verified through the channel", ok)


def criterion_10(r: CriterionReport):
    rng = random.Random(10)
    # fanout monotone in t and U
    mono = True
    for t in (1, 2):
        for q in (2, 3):
            net = family_e(t, q)
            plan = family_e_construct(t, q)
            U = sorted(net.vulnerable)
            for _ in range(5):
                x = tuple(rng.randrange(q) for _ in range(net.n_source_edges))
                small = fanout(net, plan.code, x, "T", vulnerable=U[:-1], power=t)
                big = fanout(net, plan.code, x, "T", vulnerable=U, power=t)
                less = fanout(net, plan.code, x, "T", power=t - 1)
                full = fanout(net, plan.code, x, "T", power=t)
                mono &= small <= big and less <= full
    r.add("fanout monotone in t and U", mono)
    # witness replay
    net = diamond(3)
    replay = True
    for _ in range(30):
        tab = np.array([[rng.randrange(3)] for _ in range(9)])
        code = NetworkCode(net, 3, {"V2": tab})
        words = rng.sample(list(itertools.product(range(3), repeat=3)), 2)
        w = check_unambiguous(net, code, OuterCode(tuple(words), 3))
        if w is not True:
            replay &= w.replay(net, code)
    r.add("collision witnesses replay", replay)
    # search monotone in M
    seq = [joint_search(diamond(3), M, 3).status for M in (1, 2, 3, 4)]
    r.add("joint search monotone in M", seq == ["feasible", "feasible", "infeasible", "infeasible"], f"{seq}")
    # relabeling invariance
    inv = True
    for _ in range(10):
        perm = list(range(3))
        rng.shuffle(perm)
        tab = np.array([[rng.randrange(3)] for _ in range(9)])
        code = NetworkCode(net, 3, {"V2": tab})
        words = rng.sample(list(itertools.product(range(3), repeat=3)), 2)
        ptab = np.zeros_like(tab)
        for u in itertools.product(range(3), repeat=2):
            pu = tuple(perm[s] for s in u)
            ptab[pu[0] * 3 + pu[1]] = perm[tab[u[0] * 3 + u[1], 0]]
        pcode = NetworkCode(net, 3, {"V2": ptab})
        pwords = tuple(tuple(perm[s] for s in w) for w in words)
        a = check_unambiguous(net, code, OuterCode(tuple(words), 3)) is True
        b = check_unambiguous(net, pcode, OuterCode(pwords, 3)) is True
        inv &= a == b
    r.add("unambiguity invariant under symbol relabeling", inv)
    # corrects_t_errors vs min distance
    agree = True
    for metric, n in ((Metric.hamming(2), 3), (Metric.hamming(3), 2), (Metric.rank(4), 2)):
        words = list(itertools.product(range(metric.q), repeat=n))
        for _ in range(40):
            code = rng.sample(words, rng.randint(2, 4))
            dmin = min(distance(metric, x, y) for x, y in itertools.combinations(code, 2))
            agree &= corrects_t_errors(code, 1, metric) == (dmin >= 3)
    r.add("corrects_t_errors agrees with min distance >= 2t+1", agree)


CRITERIA: dict[int, tuple[str, float, Callable[[CriterionReport], None]]] = {
    1: ("embedded code pairs verify", 40.0, criterion_1),
    2: ("cut-set bound table", 5.0, criterion_2),
    3: ("Family E constructions", 120.0, criterion_3),
    4: ("Diamond capacity by exhaustive search", 300.0, criterion_4),
    5: ("S-family small capacities by exhaustive search", 600.0, criterion_5),
    6: ("MDS codes and A_q(n,3) oracle", 60.0, criterion_6),
    7: ("CNF round trip and internal solver", 300.0, criterion_7),
    8: ("CNF regeneration of Family B lower bounds", 12 * 3600.0, criterion_8),
    9: ("separability verdicts", 1800.0, criterion_9),
    10: ("property checks", 600.0, criterion_10),
}


def run(cid: int) -> CriterionReport:
    if cid not in CRITERIA:
        raise KeyError(f"unknown criterion {cid}; choose from {sorted(CRITERIA)}")
    title, limit, fn = CRITERIA[cid]
    report = CriterionReport(cid, title, limit)
    start = time.monotonic()
    fn(report)
    report.seconds = time.monotonic() - start
    return report
