"""Command-line front end.

Every subcommand prints ``key=value`` lines.  Exit codes: 0 verdict
computed, 1 usage or input error, 2 budget exhausted, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import io
from .channel import check_unambiguous
from .cnf import ATTACK_MODES, encode_cnf
from .constructions import (
    EMBEDDED_IDS,
    OpenCase,
    embedded_code,
    family_e_capacity,
    family_e_construct,
    s_family_bounds,
    s_family_construct,
)
from .netmodel import (
    Network,
    NetworkError,
    bottleneck_network,
    diamond,
    family_b,
    family_e,
    figure1_network,
    figure5_network,
    mu,
    s_family,
    singleton_bound,
)
from .search import REDUCTIONS, joint_search
from .separability import Metric, check_separable, linear_codes

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3

FAMILY_HELP = "diamond, B:s, E:t, S:a,b,s, fig1, restr or fig5"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 means "budget exhausted" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(pairs, out=None):
    out = out or sys.stdout
    for k, v in pairs:
        print(f"{k}={v}", file=out)


def _ints(text: str, n: int, what: str) -> list[int]:
    try:
        vals = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} expects {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} expects {n} comma-separated integers, got {text!r}")
    return vals


def family_network(spec: str, q: int | None) -> Network:
    """Build a named network from a short description like ``S:3,1,2``."""
    name, _, args = spec.partition(":")
    name = name.strip()
    if name == "diamond":
        return diamond(q)
    if name == "fig1":
        return figure1_network(q)
    if name == "restr":
        return bottleneck_network(q)
    if name == "fig5":
        return figure5_network(q)
    if name == "B":
        return family_b(*_ints(args, 1, "B"), q)
    if name == "E":
        return family_e(*_ints(args, 1, "E"), q)
    if name == "S":
        return s_family(*_ints(args, 3, "S"), q)
    raise UsageError(f"unknown family {spec!r}; use {FAMILY_HELP}")


def _load_network(args) -> Network:
    if getattr(args, "network", None) and getattr(args, "family", None):
        raise UsageError("give either --network or --family, not both")
    if getattr(args, "network", None):
        net = io.read_network(args.network)
        if args.q is not None and net.q is not None and args.q != net.q:
            raise UsageError(f"--q {args.q} disagrees with the file's alphabet {net.q}")
        return net if args.q is None else _with_q(net, args.q)
    if getattr(args, "family", None):
        return family_network(args.family, args.q)
    raise UsageError("give --network <file> or --family <name>")


def _with_q(net: Network, q: int) -> Network:
    from dataclasses import replace

    return replace(net, q=q)


def _alphabet(net: Network, q: int | None) -> int:
    q = net.q if q is None else q
    if q is None:
        raise UsageError("alphabet size unknown; pass --q")
    return q


def _summary(net: Network, q: int | None):
    return [
        ("network", net.name or "unnamed"),
        ("q", q if q is not None else "none"),
        ("vertices", len(net.vertices)),
        ("edges", len(net.edges)),
        ("vulnerable", ",".join(e for e in net.edge_order if e in net.vulnerable)),
        ("power", net.power),
    ]


# ---------------------------------------------------------------------------


def cmd_bound(args) -> int:
    net = _load_network(args)
    b = singleton_bound(net)
    pairs = _summary(net, net.q) + [
        ("singleton_bound", b.value),
        ("terminal", b.terminal),
        ("cut", ",".join(b.cut)),
        ("mu", mu(net)),
    ]
    fam, _, rest = (args.family or "").partition(":")
    if net.q is not None and fam == "S":
        rep = s_family_bounds(*_ints(rest, 3, "S"), net.q)
        pairs += [(f"capacity.{k}", v) for k, v in rep.as_dict().items()]
        pairs += [("evidence", str(e)) for e in rep.provenance]
    elif net.q is not None and fam == "E":
        pairs.append(("capacity.size", family_e_capacity(*_ints(rest, 1, "E"), net.q)))
    _emit(pairs)
    return EXIT_OK


def _verdict_lines(net, code, outer):
    verdict = check_unambiguous(net, code, outer)
    pairs = [("size", len(outer)), ("unambiguous", str(verdict is True).lower())]
    if verdict is not True:
        pairs += [(f"witness.{k}", v) for k, v in verdict.as_dict().items()]
        if not verdict.replay(net, code):
            raise AssertionError("collision witness does not replay")
    return verdict is True, pairs


def cmd_verify(args) -> int:
    start = time.monotonic()
    if args.embedded:
        if args.network or args.outer or args.inner:
            raise UsageError("--embedded cannot be combined with files")
        net, outer, code = embedded_code(args.embedded)
        q = code.q
    else:
        if not (args.network and args.outer and args.inner):
            raise UsageError("verify needs --network, --outer and --inner, or --embedded ID")
        net = io.read_network(args.network)
        q = _alphabet(net, args.q)
        outer = io.read_outer(args.outer, q)
        code = io.read_inner(args.inner, net, q)
    _, pairs = _verdict_lines(net, code, outer)
    _emit(_summary(net, q) + pairs + [("seconds", f"{time.monotonic() - start:.2f}")])
    return EXIT_OK


def _write_pair(out_dir: Path, net: Network, outer, code, stem: str, transcript):
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {
        "net": out_dir / f"{stem}.net",
        "outer": out_dir / f"{stem}.code",
        "inner": out_dir / f"{stem}.inner",
        "transcript": out_dir / f"{stem}.txt",
    }
    files["net"].write_text(io.format_network(_with_q(net, code.q)))
    files["outer"].write_text(io.format_outer(outer))
    files["inner"].write_text(io.format_inner(net, code))
    files["transcript"].write_text("".join(f"{k}={v}\n" for k, v in transcript))
    return [(f"file.{k}", str(p)) for k, p in files.items()]


def cmd_construct(args) -> int:
    fam, _, rest = args.family.partition(":")
    q = args.q
    if fam == "E":
        (t,) = _ints(rest, 1, "E")
        plan = family_e_construct(t, q)
        outer, code, net = plan.outer, plan.code, family_e(t, q)
        extra = [("m", plan.m), ("alpha", plan.alpha)]
    elif fam == "S":
        a, b, s = _ints(rest, 3, "S")
        try:
            outer, code = s_family_construct(a, b, s, q, allow_open=args.allow_open)
        except OpenCase as exc:
            raise UsageError(f"{exc}; pass --allow-open to emit the best pair anyway") from None
        net = s_family(a, b, s, q)
        rep = s_family_bounds(a, b, s, q)
        extra = [(f"capacity.{k}", v) for k, v in rep.as_dict().items()]
    else:
        raise UsageError("construct supports E:t and S:a,b,s")
    ok, pairs = _verdict_lines(net, code, outer)
    if not ok:
        raise AssertionError("construction failed verification")
    transcript = [("command", " ".join(sys.argv))] + _summary(net, q) + extra + pairs
    _emit(transcript + _write_pair(Path(args.out_dir), net, outer, code, net.name, transcript))
    return EXIT_OK


def cmd_search(args) -> int:
    net = _load_network(args)
    q = _alphabet(net, args.q)
    reductions = tuple(r for r in args.reductions.split(",") if r) if args.reductions else REDUCTIONS
    res = joint_search(net, args.target, q, method=args.method, reductions=reductions, budget=args.budget)
    pairs = _summary(net, q) + [(k, v) for k, v in res.as_dict().items()] + [("note", n) for n in res.notes]
    if res.feasible:
        ok, vpairs = _verdict_lines(net, res.code, res.outer)
        if not ok:
            raise AssertionError("search returned an ambiguous pair")
        pairs += vpairs
        if args.out_dir:
            pairs += _write_pair(Path(args.out_dir), net, res.outer, res.code,
                                 f"{net.name or 'network'}-M{args.target}", pairs)
    _emit(pairs)
    return EXIT_BUDGET if res.status == "unknown" else EXIT_OK


def cmd_export_cnf(args) -> int:
    net = _load_network(args)
    q = _alphabet(net, args.q)
    reductions = tuple(r for r in args.reductions.split(",") if r) if args.reductions is not None else REDUCTIONS
    inst = encode_cnf(net, args.size, q, attacks=args.attacks, reductions=reductions)
    Path(args.out).write_text(inst.to_dimacs())
    census = inst.var_census()
    _emit(_summary(net, q) + [("size", args.size), ("variables", inst.n_vars), ("clauses", inst.n_clauses())]
          + [(f"census.{k}", v) for k, v in census.items()] + [("file", args.out)])
    return EXIT_OK


def _metric(text: str, q: int) -> Metric:
    if text == "hamming":
        return Metric.hamming(q)
    if text.startswith("rank:"):
        p, m = _ints(text[5:], 2, "rank")
        if p**m != q:
            raise UsageError(f"rank:{p},{m} needs --q {p**m}, got {q}")
        return Metric.rank(q)
    raise UsageError(f"unknown metric {text!r}; use hamming or rank:p,m")


def cmd_separability(args) -> int:
    if args.case == "custom":
        if not args.network:
            raise UsageError("--case custom needs --network")
        net = io.read_network(args.network)
        q = _alphabet(net, args.q)
    else:
        if args.network:
            raise UsageError("--network is only used with --case custom")
        q = args.q if args.q is not None else 2
        net = bottleneck_network(q) if args.case == "restr" else figure5_network(q)
    metric = _metric(args.metric, q)
    M = args.size
    if M is None:
        M = q if args.case == "restr" else 2 if args.case == "notH" else None
        if M is None:
            raise UsageError("--case custom needs --size")
    codes, subset = None, False
    if metric.kind == "rank":
        # the full family of rank codes is out of reach; a certificate on a
        # subfamily still refutes separability, but cannot establish it
        if M != q:
            raise UsageError("rank metric runs use linear codes of size q")
        codes, subset = linear_codes(net.n_source_edges, q, 2 * net.power + 1, metric), True
    res = check_separable(net, q, M, metric, codes=codes, fix_unary=not args.no_fix_unary, budget=args.budget)
    if subset and res.verdict == "separable":
        res.verdict = "unknown"
        res.notes.append("only linear codes were checked")
    _emit(_summary(net, q) + [("metric", str(metric)), ("seconds", f"{res.seconds:.2f}")])
    for line in res.transcript(cap=args.cap):
        print(line)
    if res.certificate is not None and not res.certificate.verify():
        raise AssertionError("obstruction certificate does not verify")
    return EXIT_BUDGET if res.verdict == "unknown" else EXIT_OK


def cmd_reproduce(args) -> int:
    from . import reproduce

    report = reproduce.run(args.criterion)
    for line in report.lines():
        print(line)
    _emit([("criterion", report.cid), ("pass", str(report.ok).lower()),
           ("seconds", f"{report.seconds:.2f}")])
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_network_args(p, q_help="alphabet size"):
    p.add_argument("--network", help="network file")
    p.add_argument("--family", help=f"named network: {FAMILY_HELP}")
    p.add_argument("--q", type=int, help=q_help)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oneshot", description="One-shot capacity tools for adversarial network coding.")
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; all work runs in one thread")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", help="cut-set bound and known capacity bracket")
    _add_network_args(p)
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("verify", help="check an (outer, inner) pair for unambiguity")
    p.add_argument("--network")
    p.add_argument("--outer")
    p.add_argument("--inner")
    p.add_argument("--q", type=int)
    p.add_argument("--embedded", choices=EMBEDDED_IDS, help="verify an embedded pair")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("construct", help="build and verify an explicit pair")
    p.add_argument("--family", required=True, help="E:t or S:a,b,s")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--allow-open", action="store_true", help="emit the best pair even below the upper bound")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("search", help="search for an unambiguous pair of a given size")
    _add_network_args(p)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--method", choices=("auto", "dfs", "cnf"), default="auto")
    p.add_argument("--budget", type=float, help="seconds")
    p.add_argument("--reductions", help=f"comma list from {','.join(REDUCTIONS)} (default all)")
    p.add_argument("--out-dir", help="write the pair found here")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("export-cnf", help="write the constraint model as DIMACS")
    _add_network_args(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--attacks", choices=ATTACK_MODES, default="maximal")
    p.add_argument("--reductions", help="comma list (default all, empty string for none)")
    p.set_defaults(fn=cmd_export_cnf)

    p = sub.add_parser("separability", help="look for a network code that serves every good outer code")
    p.add_argument("--case", choices=("restr", "notH", "custom"), required=True)
    p.add_argument("--metric", default="hamming", help="hamming or rank:p,m")
    p.add_argument("--q", type=int)
    p.add_argument("--size", type=int, help="code size (defaults: q for restr, 2 for notH)")
    p.add_argument("--network", help="network file for --case custom")
    p.add_argument("--no-fix-unary", action="store_true", help="also enumerate single-input vertices")
    p.add_argument("--budget", type=float, help="seconds")
    p.add_argument("--cap", type=int, default=10, help="failures listed in the transcript")
    p.set_defaults(fn=cmd_separability)

    p = sub.add_parser("reproduce", help="run one acceptance check end to end")
    p.add_argument("criterion", type=int, choices=range(1, 11), metavar="criterion-id")
    p.set_defaults(fn=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            parser.error("--threads must be >= 1")
    except SystemExit as exc:
        # argparse exits on --help and on usage errors; hand back the code
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except (UsageError, io.ParseError, NetworkError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
