"""Built-in catalog of named small graphs plus a parametric name grammar.

Names resolve through a tiny grammar so compound descriptions work directly:

    expr  :=  term ('+' term)*          disjoint union
    term  :=  [count] atom              'rG' means r disjoint copies
    atom  :=  'co(' expr ')'  |  '(' expr ')'  |  NAME

NAME is either a fixed catalog entry (bull, gem, net, F_1, ...), an alias, or
a parametric family: P_r, C_r, K_r, K_{1,r} and S_{h,i,j} written with braces,
e.g. "S_{1,1,2}".  Vertex numbering of every fixed entry is fixed and
documented in its ``description`` so downstream certificates are bit-stable.
"""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass, field

from .core import Graph, complement, disjoint_union


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: Graph
    description: str
    aliases: tuple[str, ...] = field(default=())


# -- parametric families -------------------------------------------------


def path_graph(r: int) -> Graph:
    """P_r on vertices 0..r-1 in path order."""
    if r < 1:
        raise CatalogError("P_r needs r >= 1")
    return Graph.from_edges(r, [(i, i + 1) for i in range(r - 1)])


def cycle_graph(r: int) -> Graph:
    """C_r on vertices 0..r-1 in cycle order."""
    if r < 3:
        raise CatalogError("C_r needs r >= 3")
    return Graph.from_edges(r, [(i, (i + 1) % r) for i in range(r)])


def complete_graph(r: int) -> Graph:
    if r < 0:
        raise CatalogError("K_r needs r >= 0")
    return Graph.complete(r)


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves}: centre 0, leaves 1..leaves."""
    if leaves < 0:
        raise CatalogError("K_{1,r} needs r >= 0")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def subdivided_claw(h: int, i: int, j: int) -> Graph:
    """S_{h,i,j}: centre 0 of degree three, leg vertices numbered leg by leg.

    Leg lengths h <= i <= j; the first leg occupies 1..h, the second
    h+1..h+i, the third h+i+1..h+i+j, each a path hanging off the centre.
    """
    if not (1 <= h <= i <= j):
        raise CatalogError("S_{h,i,j} needs 1 <= h <= i <= j")
    edges = []
    nxt = 1
    for leg in (h, i, j):
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


# -- fixed entries --------------------------------------------------------


def _entries() -> list[CatalogEntry]:
    e = []

    def add(name, n, edges, description, aliases=()):
        e.append(CatalogEntry(name, Graph.from_edges(n, edges), description, tuple(aliases)))

    add(
        "bull",
        5,
        [(0, 1), (1, 2), (2, 0), (3, 0), (4, 1)],
        "triangle 0,1,2 with pendants 3-0 and 4-1",
    )
    add(
        "net",
        6,
        [(0, 1), (1, 2), (2, 0), (3, 0), (4, 1), (5, 2)],
        "triangle 0,1,2 with pendants 3-0, 4-1, 5-2",
    )
    add(
        "house",
        5,
        [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)],
        "cycle 0-1-2-3 with roof vertex 4 adjacent to 2 and 3",
    )
    add(
        "gem",
        5,
        [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
        "path 0-1-2-3 plus dominating vertex 4; equals co(P_1+P_4)",
    )
    add(
        "diamond",
        4,
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
        "K_4 minus the edge 2-3; equals co(2P_1+P_2)",
    )
    add(
        "paw",
        4,
        [(0, 1), (1, 2), (2, 0), (3, 0)],
        "triangle 0,1,2 with pendant 3-0; equals co(P_1+P_3)",
    )
    add(
        "F_1",
        6,
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (5, 3)],
        "K_4 on 0..3 with pendants 4-0 and 5-3",
    )
    add(
        "F_2",
        6,
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (5, 2), (5, 3)],
        "K_4 on 0..3, pendant 4-0, vertex 5 adjacent to 2 and 3",
    )
    add(
        "F_3",
        6,
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (5, 1)],
        "K_4 on 0..3, vertex 4 adjacent to 0 and 1, pendant 5-1",
    )
    add(
        "F_4",
        7,
        [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (4, 0), (5, 3)],
        "diamond on 0..3 (0-3 the degree-3 pair), pendants 4-0 and 5-3, isolated 6",
    )
    add(
        "F_5",
        7,
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (5, 1), (6, 3)],
        "K_4 on 0..3, vertex 4 adjacent to 0 and 1, pendants 5-1 and 6-3",
    )
    add(
        "Q",
        6,
        [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 1), (5, 2)],
        "triangle 0,1,2; vertex 3 adjacent to 0,1; pendants 4-1 and 5-2",
    )
    add(
        "X_1",
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0)],
        "cycle 0..4 with pendant 5-0",
    )
    add(
        "X_2",
        7,
        [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0), (6, 0)],
        "triangle 0,1,2; vertices 3,4,5 each adjacent to one triangle edge pair; pendant 6-0",
    )
    add(
        "X_3",
        6,
        [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 4), (0, 1)],
        "cycle 1-2-3-4-5 with chord 1-4 and pendant 0-1",
    )
    add(
        "A",
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4)],
        "path 0-1-2-3-4-5 with rung 1-4",
    )
    add(
        "d-A",
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4), (2, 4)],
        "the A graph plus the diagonal 2-4",
    )
    add(
        "d-domino",
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4), (2, 4)],
        "cycle 0..5 with rung 1-4 and diagonal 2-4",
    )
    add(
        "xbull",
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (5, 1), (5, 2)],
        "path 0-1-2-3-4 with vertex 5 adjacent to 1 and 2",
    )
    # complements of fixed entries that carry their own catalog names
    by_name = {entry.name: entry.graph for entry in e}
    e.append(
        CatalogEntry(
            "co-Q",
            complement(by_name["Q"]),
            "complement of Q on the same vertex ids",
        )
    )
    return e


_FIXED: dict[str, CatalogEntry] = {}
_ALIASES: dict[str, str] = {}
for _entry in _entries():
    _FIXED[_entry.name] = _entry
    for _a in _entry.aliases:
        _ALIASES[_a] = _entry.name
_ALIASES.update(
    {
        "claw": "K_{1,3}",
        "chair": "S_{1,1,2}",
        "co-chair": "co(S_{1,1,2})",
        "co-gem": "P_1+P_4",
        "triangle": "K_3",
        "co-F_4": "co(F_4)",
        "co-F_5": "co(F_5)",
    }
)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9-]*(?:_\{[0-9]+(?:,[0-9]+)*\}|_[0-9]+)?")
_PARAM_RE = {
    "P": re.compile(r"P_([0-9]+)$"),
    "C": re.compile(r"C_([0-9]+)$"),
    "K": re.compile(r"K_([0-9]+)$"),
    "star": re.compile(r"K_\{1,([0-9]+)\}$"),
    "S": re.compile(r"S_\{([0-9]+),([0-9]+),([0-9]+)\}$"),
}


def catalog_names() -> list[str]:
    """Fixed entry names plus alias names (parametric families excluded)."""
    return sorted(_FIXED) + sorted(_ALIASES)


def catalog_entry(name: str) -> CatalogEntry:
    if name in _FIXED:
        return _FIXED[name]
    raise CatalogError(f"no fixed catalog entry named {name!r}")


def _resolve_base(name: str) -> Graph:
    if name in _FIXED:
        return _FIXED[name].graph
    if name in _ALIASES:
        return catalog_lookup(_ALIASES[name])
    m = _PARAM_RE["star"].match(name)
    if m:
        return star_graph(int(m.group(1)))
    m = _PARAM_RE["P"].match(name)
    if m:
        return path_graph(int(m.group(1)))
    m = _PARAM_RE["C"].match(name)
    if m:
        return cycle_graph(int(m.group(1)))
    m = _PARAM_RE["K"].match(name)
    if m:
        return complete_graph(int(m.group(1)))
    m = _PARAM_RE["S"].match(name)
    if m:
        return subdivided_claw(*(int(x) for x in m.groups()))
    candidates = catalog_names() + ["P_r", "C_r", "K_r", "K_{1,r}", "S_{h,i,j}"]
    near = difflib.get_close_matches(name, candidates, n=4, cutoff=0.45)
    hint = f"; nearest matches: {', '.join(near)}" if near else ""
    raise CatalogError(f"unknown graph name {name!r}{hint}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise CatalogError(f"{message} at position {self.pos} in {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Graph:
        g = self.term()
        while self.peek() == "+":
            self.pos += 1
            g = disjoint_union(g, self.term())
        return g

    def term(self) -> Graph:
        self.skip_ws()
        count = 1
        m = re.match(r"[0-9]+", self.text[self.pos :])
        if m:
            count = int(m.group(0))
            self.pos += m.end()
            if count < 1:
                self.error("copy count must be positive")
        g = self.atom()
        out = g
        for _ in range(count - 1):
            out = disjoint_union(out, g)
        return out

    def atom(self) -> Graph:
        self.skip_ws()
        rest = self.text[self.pos :]
        if rest.startswith("co("):
            self.pos += 3
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return complement(inner)
        if rest.startswith("("):
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        m = _NAME_RE.match(rest)
        if not m:
            self.error("expected a graph name")
        name = m.group(0)
        # a bare name followed by '(' is only valid for the 'co' keyword
        self.pos += m.end()
        return _resolve_base(name)


def catalog_lookup(name: str) -> Graph:
    """Resolve a catalog name, alias, or compound description to its graph."""
    p = _Parser(name)
    g = p.expr()
    p.skip_ws()
    if p.pos != len(p.text):
        p.error("unexpected trailing text")
    return g
