"""Text formats for networks, outer codes and inner (network) codes.

Network files are line based with ``#`` comments::

    name diamond          # optional
    alphabet 3
    source S
    vertex V1
    terminal T
    edge e1 S V1 vulnerable
    power 1

Outer code files hold one comma-separated codeword per line.  Inner code
files hold blocks ``function <vertex>`` followed by ``<inputs> -> <outputs>``
lines; vertices with equal in- and out-degree may be omitted (identity).
"""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .channel import NetworkCode, OuterCode, tuple_index
from .netmodel import Edge, Network, require_valid

__all__ = [
    "ParseError",
    "format_inner",
    "format_network",
    "format_outer",
    "parse_inner",
    "parse_network",
    "parse_outer",
    "read_inner",
    "read_network",
    "read_outer",
]


class ParseError(ValueError):
    def __init__(self, line: int, msg: str, source: str = ""):
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {msg}")
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int, what: str, source: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(no, f"{what} must be an integer, got {tok!r}", source) from None


def parse_network(text: str, source: str = "") -> Network:
    vertices: list[str] = []
    terminals: list[str] = []
    edges: list[Edge] = []
    vulnerable: set[str] = set()
    src = None
    q = None
    power = 0
    name = ""

    def add_vertex(v):
        if v not in vertices:
            vertices.append(v)

    for no, tok in _lines(text):
        kw, args = tok[0], tok[1:]
        if kw == "alphabet" and len(args) == 1:
            q = _int(args[0], no, "alphabet size", source)
            if q < 2:
                raise ParseError(no, "alphabet needs at least 2 symbols", source)
        elif kw == "vertex" and len(args) == 1:
            add_vertex(args[0])
        elif kw == "source" and len(args) == 1:
            if src is not None:
                raise ParseError(no, "second source line", source)
            src = args[0]
            add_vertex(src)
        elif kw == "terminal" and len(args) == 1:
            terminals.append(args[0])
            add_vertex(args[0])
        elif kw == "edge" and len(args) in (3, 4):
            if len(args) == 4:
                if args[3] != "vulnerable":
                    raise ParseError(no, f"unknown edge flag {args[3]!r}", source)
                vulnerable.add(args[0])
            edges.append(Edge(*args[:3]))
        elif kw == "power" and len(args) == 1:
            power = _int(args[0], no, "power", source)
        elif kw == "name" and args:
            name = " ".join(args)
        else:
            raise ParseError(no, f"cannot parse {' '.join(tok)!r}", source)
    if src is None:
        raise ParseError(0, "no source line", source)
    return require_valid(
        Network(tuple(vertices), tuple(edges), src, tuple(terminals), frozenset(vulnerable), power, q, name)
    )


def format_network(network: Network) -> str:
    out = []
    if network.name:
        out.append(f"name {network.name}")
    if network.q is not None:
        out.append(f"alphabet {network.q}")
    out.append(f"source {network.source}")
    for v in network.vertices:
        if v != network.source and v not in network.terminals:
            out.append(f"vertex {v}")
    for t in network.terminals:
        out.append(f"terminal {t}")
    for e in network.edges:
        flag = " vulnerable" if e.id in network.vulnerable else ""
        out.append(f"edge {e.id} {e.tail} {e.head}{flag}")
    out.append(f"power {network.power}")
    return "\n".join(out) + "\n"


def _word(s: str, no: int, source: str) -> tuple[int, ...]:
    parts = [p.strip() for p in s.replace(" ", "").strip("()").split(",") if p.strip()]
    return tuple(_int(p, no, "symbol", source) for p in parts)


def parse_outer(text: str, q: int, source: str = "") -> OuterCode:
    words = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            words.append(_word(line, no, source))
    if not words:
        raise ParseError(0, "no codewords", source)
    try:
        return OuterCode(tuple(words), q)
    except ValueError as exc:
        raise ParseError(0, str(exc), source) from None


def format_outer(outer: OuterCode) -> str:
    return "".join(",".join(map(str, w)) + "\n" for w in outer.words)


def parse_inner(text: str, network: Network, q: int, source: str = "") -> NetworkCode:
    tables: dict[str, np.ndarray] = {}
    filled: dict[str, np.ndarray] = {}
    cur = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("function"):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in network.intermediates:
                raise ParseError(no, f"bad function header {line!r}", source)
            cur = parts[1]
            if cur in tables:
                raise ParseError(no, f"second block for {cur}", source)
            din, dout = network.in_degree(cur), network.out_degree(cur)
            tables[cur] = np.zeros((q**din, dout), dtype=np.int64)
            filled[cur] = np.zeros(q**din, dtype=bool)
            continue
        if cur is None or "->" not in line:
            raise ParseError(no, f"expected 'function <vertex>' or '<in> -> <out>', got {line!r}", source)
        lhs, rhs = line.split("->", 1)
        u, w = _word(lhs, no, source), _word(rhs, no, source)
        din, dout = network.in_degree(cur), network.out_degree(cur)
        if len(u) != din or len(w) != dout:
            raise ParseError(no, f"{cur} maps {din} symbols to {dout}", source)
        if any(not 0 <= s < q for s in u + w):
            raise ParseError(no, f"symbol outside alphabet of size {q}", source)
        r = tuple_index(u, q)
        if filled[cur][r]:
            raise ParseError(no, f"input {u} of {cur} given twice", source)
        tables[cur][r] = w
        filled[cur][r] = True
    for v, f in filled.items():
        if not f.all():
            raise ParseError(0, f"function {v} misses {int((~f).sum())} inputs", source)
    return NetworkCode(network, q, tables)


def format_inner(network: Network, code: NetworkCode, skip_identity: bool = False) -> str:
    out = []
    q = code.q
    for v in network.intermediates:
        tab = code.tables[v]
        din = network.in_degree(v)
        if skip_identity and din == network.out_degree(v):
            if all(tuple(tab[i]) == u for i, u in enumerate(itertools.product(range(q), repeat=din))):
                continue
        out.append(f"function {v}")
        for i, u in enumerate(itertools.product(range(q), repeat=din)):
            out.append(f"{','.join(map(str, u))} -> {','.join(map(str, tab[i]))}")
    return "\n".join(out) + ("\n" if out else "")


def read_network(path) -> Network:
    p = Path(path)
    return parse_network(p.read_text(), str(p))


def read_outer(path, q: int) -> OuterCode:
    p = Path(path)
    return parse_outer(p.read_text(), q, str(p))


def read_inner(path, network: Network, q: int) -> NetworkCode:
    p = Path(path)
    return parse_inner(p.read_text(), network, q, str(p))
