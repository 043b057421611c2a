"""Classification oracles: boundedness of clique-width for H-free subclasses.

Three hosts are covered: chordal graphs, weakly chordal graphs, and split
graphs.  Verdicts carry the catalog name of the rule that fired so results
are auditable, an explicit bound only where one is known, and Open status
exactly for the finitely many undecided patterns.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import catalog_lookup
from .core import Graph, complement
from .iso import induced_subgraph_isomorphic, is_complete_graph, is_edgeless, is_isomorphic

BOUNDED = "Bounded"
UNBOUNDED = "Unbounded"
OPEN = "Open"


@dataclass(frozen=True)
class ClassificationVerdict:
    status: str
    bound: int | None
    rule: str
    witness: tuple[int, ...] | None = None


# the maximal graphs of the chordal-host classification, with the explicit
# bounds known for them (None where only boundedness is known)
_CHORDAL_MAXIMAL: list[tuple[str, int | None]] = [
    ("bull", 3),
    ("P_1+P_4", 8),
    ("co(P_1+P_4)", 3),
    ("co(K_{1,3}+2P_1)", None),
    ("P_1+co(P_1+P_3)", None),
    ("P_1+co(2P_1+P_2)", None),
    ("co(S_{1,1,2})", 4),
]

_CHORDAL_OPEN = ["F_1", "F_2"]
_SPLIT_OPEN = ["F_4", "F_5"]


def classify_chordal(h: Graph) -> ClassificationVerdict:
    """Boundedness of clique-width for the class of h-free chordal graphs."""
    for name in _CHORDAL_OPEN:
        if is_isomorphic(h, catalog_lookup(name)):
            return ClassificationVerdict(OPEN, None, name)
    matches: list[tuple[str, int | None]] = []
    if is_complete_graph(h):
        matches.append((f"K_{h.n}", None))
    for name, bound in _CHORDAL_MAXIMAL:
        w = induced_subgraph_isomorphic(h, catalog_lookup(name))
        if w is not None:
            matches.append((name, bound))
    if matches:
        # several bullets may apply; report the smallest stated bound
        stated = [b for _, b in matches if b is not None]
        best = min(stated) if stated else None
        rule = matches[0][0]
        if best is not None:
            rule = next(name for name, b in matches if b == best)
        return ClassificationVerdict(BOUNDED, best, rule)
    return ClassificationVerdict(UNBOUNDED, None, "not-under-any-bounded-case")


def classify_weakly_chordal(h: Graph) -> ClassificationVerdict:
    """Bounded iff h embeds in P_4; never Open."""
    p4 = catalog_lookup("P_4")
    if h.n == 0 or induced_subgraph_isomorphic(h, p4) is not None:
        return ClassificationVerdict(BOUNDED, None, "induced-subgraph-of-P_4")
    return ClassificationVerdict(UNBOUNDED, None, "not-an-induced-subgraph-of-P_4")


def classify_split(h: Graph) -> ClassificationVerdict:
    """Boundedness of clique-width for the class of h-free split graphs.

    Split graphs are closed under complementation, so the verdict looks at h
    and its complement symmetrically.
    """
    co_h = complement(h)
    for name in _SPLIT_OPEN:
        target = catalog_lookup(name)
        if is_isomorphic(h, target):
            return ClassificationVerdict(OPEN, None, name)
        if is_isomorphic(co_h, target):
            return ClassificationVerdict(OPEN, None, f"co({name})")
    if is_edgeless(h):
        return ClassificationVerdict(BOUNDED, None, f"{h.n}P_1")
    if is_edgeless(co_h):
        return ClassificationVerdict(BOUNDED, None, f"co({h.n}P_1)")
    for name in _SPLIT_OPEN:
        target = catalog_lookup(name)
        if induced_subgraph_isomorphic(h, target) is not None:
            return ClassificationVerdict(BOUNDED, None, f"induced-in-{name}")
        if induced_subgraph_isomorphic(co_h, target) is not None:
            return ClassificationVerdict(BOUNDED, None, f"complement-induced-in-{name}")
    return ClassificationVerdict(UNBOUNDED, None, "not-under-any-bounded-case")


def format_verdict(v: ClassificationVerdict) -> str:
    bound = str(v.bound) if v.bound is not None else "-"
    return f"{v.status} bound={bound} rule={v.rule}"
