"""The clique-width expression calculus.

An expression is a tree over four node kinds: a labelled single vertex, the
disjoint union of two labelled graphs, the join of every label-i vertex to
every label-j vertex (i != j), and a relabelling i -> j (i != j).  Evaluation,
width measurement, the s-expression text form, and module substitution all
live here.  The s-expression grammar is bit-exact:

    (v L VID)   leaf: vertex VID with label L
    (u E E)     disjoint union
    (j L L E)   join of the two labels inside E
    (r L L E)   rename first label to second inside E

with single spaces between tokens, decimal integers, no trailing whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .core import Graph


class ExprError(ValueError):
    pass


class ExprParseError(ExprError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class Leaf:
    label: int
    vertex: int


@dataclass(frozen=True)
class Union:
    left: "CwExpression"
    right: "CwExpression"


@dataclass(frozen=True)
class Join:
    i: int
    j: int
    child: "CwExpression"


@dataclass(frozen=True)
class Rename:
    i: int
    j: int
    child: "CwExpression"


CwExpression = Leaf | Union | Join | Rename


def postorder(e: CwExpression) -> Iterator[CwExpression]:
    """Iterative post-order walk (expressions can be deep)."""
    stack: list[tuple[CwExpression, bool]] = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded or isinstance(node, Leaf):
            yield node
            continue
        stack.append((node, True))
        if isinstance(node, Union):
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            stack.append((node.child, False))


@dataclass(frozen=True)
class LabelledGraph:
    """Evaluation result: vertex set, edge set and one label per vertex.

    Vertex ids come from the expression's leaves and need not be dense.
    """

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    labels: Mapping[int, int]

    def to_graph(self) -> Graph:
        if self.vertices != tuple(range(len(self.vertices))):
            raise ExprError("vertex ids are not dense 0..n-1")
        return Graph.from_edges(len(self.vertices), sorted(self.edges))


def evaluate(e: CwExpression) -> LabelledGraph:
    """Bottom-up evaluation of the four operations.

    Raises on a duplicate leaf vertex id and on joins/renames with i = j.
    """
    results: list[tuple[dict[int, int], set[tuple[int, int]]]] = []
    for node in postorder(e):
        if isinstance(node, Leaf):
            if node.label < 1:
                raise ExprError(f"labels are positive integers, got {node.label}")
            results.append(({node.vertex: node.label}, set()))
        elif isinstance(node, Union):
            lab_r, edges_r = results.pop()
            lab_l, edges_l = results.pop()
            overlap = lab_l.keys() & lab_r.keys()
            if overlap:
                raise ExprError(f"duplicate leaf vertex ids {sorted(overlap)}")
            lab_l.update(lab_r)
            edges_l.update(edges_r)
            results.append((lab_l, edges_l))
        elif isinstance(node, Join):
            if node.i == node.j:
                raise ExprError("join needs two distinct labels")
            lab, edges = results[-1]
            side_i = [v for v, l in lab.items() if l == node.i]
            side_j = [v for v, l in lab.items() if l == node.j]
            for u in side_i:
                for w in side_j:
                    edges.add((u, w) if u < w else (w, u))
        else:
            if node.i == node.j:
                raise ExprError("rename needs two distinct labels")
            lab, _ = results[-1]
            for v, l in lab.items():
                if l == node.i:
                    lab[v] = node.j
    lab, edges = results.pop()
    return LabelledGraph(tuple(sorted(lab)), frozenset(edges), dict(lab))


def labels_of(e: CwExpression) -> frozenset[int]:
    """Every label mentioned anywhere in the expression."""
    out = set()
    for node in postorder(e):
        if isinstance(node, Leaf):
            out.add(node.label)
        elif isinstance(node, (Join, Rename)):
            out.add(node.i)
            out.add(node.j)
    return frozenset(out)


def width(e: CwExpression) -> int:
    """Number of distinct labels appearing anywhere in the expression."""
    return len(labels_of(e))


def leaf_vertices(e: CwExpression) -> list[int]:
    return [node.vertex for node in postorder(e) if isinstance(node, Leaf)]


def validate(e: CwExpression, g: Graph) -> bool:
    """True iff evaluation yields exactly g's vertex ids and edge set."""
    res = evaluate(e)
    if res.vertices != tuple(range(g.n)):
        return False
    return res.edges == frozenset(g.edges())


# ----------------------------------------------------------------------
# text form


def serialize(e: CwExpression) -> str:
    parts: list[str] = []
    # iterative pre-order with explicit closing markers
    stack: list[object] = [e]
    while stack:
        item = stack.pop()
        if item is None:
            parts.append(")")
            continue
        node = item
        if isinstance(node, Leaf):
            parts.append(f"(v {node.label} {node.vertex})")
        elif isinstance(node, Union):
            parts.append("(u")
            stack.extend([None, node.right, node.left])
        elif isinstance(node, Join):
            parts.append(f"(j {node.i} {node.j}")
            stack.extend([None, node.child])
        else:
            parts.append(f"(r {node.i} {node.j}")
            stack.extend([None, node.child])
    # single spaces between tokens; closing parens attach directly
    out = []
    for i, p in enumerate(parts):
        if i and p != ")":
            out.append(" ")
        out.append(p)
    return "".join(out)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ExprParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in " ()\t\n":
            self.pos += 1
        if start == self.pos:
            raise ExprParseError("expected a token", self.pos)
        return self.text[start : self.pos]

    def integer(self) -> int:
        w = self.word()
        try:
            return int(w)
        except ValueError:
            raise ExprParseError(f"expected an integer, got {w!r}", self.pos) from None


def parse_expr(text: str) -> CwExpression:
    """Parse the s-expression grammar; errors carry the offending position."""
    toks = _Tokens(text)

    def node() -> CwExpression:
        toks.expect("(")
        kind = toks.word()
        if kind == "v":
            label, vid = toks.integer(), toks.integer()
            out: CwExpression = Leaf(label, vid)
        elif kind == "u":
            left = node()
            right = node()
            out = Union(left, right)
        elif kind == "j":
            i, j = toks.integer(), toks.integer()
            out = Join(i, j, node())
        elif kind == "r":
            i, j = toks.integer(), toks.integer()
            out = Rename(i, j, node())
        else:
            raise ExprParseError(f"unknown node kind {kind!r}", toks.pos)
        toks.expect(")")
        return out

    result = node()
    toks.skip_ws()
    if toks.pos != len(toks.text):
        raise ExprParseError("trailing text after expression", toks.pos)
    return result


# ----------------------------------------------------------------------
# module substitution


def relabel(e: CwExpression, mapping: Mapping[int, int]) -> CwExpression:
    """Rewrite every label through an injective total mapping."""
    img = list(mapping.values())
    if len(set(img)) != len(img):
        raise ExprError("relabelling must be injective")

    def conv(l: int) -> int:
        return mapping.get(l, l)

    rebuilt: list[CwExpression] = []
    for node in postorder(e):
        if isinstance(node, Leaf):
            rebuilt.append(Leaf(conv(node.label), node.vertex))
        elif isinstance(node, Union):
            right = rebuilt.pop()
            left = rebuilt.pop()
            rebuilt.append(Union(left, right))
        elif isinstance(node, Join):
            rebuilt.append(Join(conv(node.i), conv(node.j), rebuilt.pop()))
        else:
            rebuilt.append(Rename(conv(node.i), conv(node.j), rebuilt.pop()))
    return rebuilt.pop()


def canonicalize_labels(e: CwExpression) -> CwExpression:
    """Map the labels of ``e`` onto 1..width(e) in ascending order."""
    mapping = {l: i + 1 for i, l in enumerate(sorted(labels_of(e)))}
    if all(k == v for k, v in mapping.items()):
        return e
    return relabel(e, mapping)


def substitute_modules(
    quotient_expr: CwExpression, parts: Mapping[int, CwExpression]
) -> CwExpression:
    """Replace each leaf of the quotient by a whole expression.

    Every part is post-composed with the renames that collapse each of its
    surviving labels onto the leaf's label (ascending label order, one rename
    per surviving label), so later quotient operations treat the substituted
    vertices exactly like the leaf they replace.  Labels of the quotient and
    of every part are first canonicalized onto 1..w, which makes the width of
    the result exactly max(width(quotient), max part width).
    """
    q = canonicalize_labels(quotient_expr)
    qleaves = set(leaf_vertices(q))
    if qleaves != set(parts.keys()):
        missing = qleaves - set(parts.keys())
        extra = set(parts.keys()) - qleaves
        raise ExprError(
            f"parts do not match quotient leaves (missing {sorted(missing)}, extra {sorted(extra)})"
        )
    canon_parts = {v: canonicalize_labels(p) for v, p in parts.items()}

    all_leaves: list[int] = []
    for p in canon_parts.values():
        all_leaves.extend(leaf_vertices(p))
    if len(all_leaves) != len(set(all_leaves)):
        raise ExprError("part expressions share leaf vertex ids")

    def plug(leaf: Leaf) -> CwExpression:
        part = canon_parts[leaf.vertex]
        surviving = sorted(set(evaluate(part).labels.values()))
        out = part
        for l in surviving:
            if l != leaf.label:
                out = Rename(l, leaf.label, out)
        return out

    rebuilt: list[CwExpression] = []
    for node in postorder(q):
        if isinstance(node, Leaf):
            rebuilt.append(plug(node))
        elif isinstance(node, Union):
            right = rebuilt.pop()
            left = rebuilt.pop()
            rebuilt.append(Union(left, right))
        elif isinstance(node, Join):
            rebuilt.append(Join(node.i, node.j, rebuilt.pop()))
        else:
            rebuilt.append(Rename(node.i, node.j, rebuilt.pop()))
    return rebuilt.pop()
