"""Constructive k-expression builders with certified bounds.

Every builder verifies its class preconditions (they are never trusted),
produces an expression, and returns a BuildReport whose two invariants are
asserted on every run: the measured width is within the claimed bound and the
expression validates against the input graph.  The composite builders
decompose along the modular decomposition tree, dispatch per prime quotient,
and recombine with module substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import catalog
from ._cliquetree import CliqueTreeBuilder
from ._dhtree import dh_component_expr
from .core import Graph, bits, induced_subgraph
from .expr import (
    CwExpression,
    Join,
    Leaf,
    Rename,
    Union,
    relabel,
    substitute_modules,
    validate,
    width,
)
from .iso import induced_subgraph_isomorphic
from .recognize import (
    KWeb,
    MDNode,
    Peo,
    Spider,
    chordal_peo,
    detect_kweb,
    detect_spider,
    find_hole,
    kweb_matches,
    max_clique_chordal,
    modular_decomposition,
    pruning_sequence,
    spider_matches,
)


class BuilderError(ValueError):
    """Violated precondition or an input outside the builder's class.

    ``witness`` carries the offending structure when one was found: an
    induced cycle, an embedding of a forbidden graph, or a vertex set.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class BuildReport:
    expression: CwExpression
    claimed_bound: int
    rule: str
    dispatch_trace: tuple[tuple[int, str], ...] = field(default=())


def _finish(
    g: Graph, expr: CwExpression, bound: int, rule: str, trace=()
) -> BuildReport:
    w = width(expr)
    if w > bound:
        raise AssertionError(f"builder {rule} exceeded its bound: width {w} > {bound}")
    if not validate(expr, g):
        raise AssertionError(f"builder {rule} produced a non-validating expression")
    return BuildReport(expr, bound, rule, tuple(trace))


def _require_chordal(g: Graph, rule: str) -> Peo:
    peo = chordal_peo(g)
    if peo is None:
        raise BuilderError(f"{rule}: input is not chordal", witness=find_hole(g))
    return peo


def _require_free(g: Graph, name: str, rule: str) -> None:
    emb = induced_subgraph_isomorphic(catalog.catalog_lookup(name), g)
    if emb is not None:
        raise BuilderError(f"{rule}: input contains an induced {name}", witness=emb)


def _fold_union(parts: list[CwExpression]) -> CwExpression:
    out = parts[0]
    for p in parts[1:]:
        out = Union(out, p)
    return out


# ----------------------------------------------------------------------
# forests


def _tree_expr(g: Graph, root: int, parent: int) -> CwExpression:
    """Subtree of ``root``: root labelled 2, everything below labelled 1."""
    children = [w for w in g.neighbors(root) if w != parent]
    if not children:
        return Leaf(2, root)
    acc: CwExpression = Leaf(3, root)
    for c in children:
        acc = Rename(2, 1, Join(3, 2, Union(acc, _tree_expr(g, c, root))))
    return Rename(3, 2, acc)


def build_forest_expr(g: Graph) -> BuildReport:
    """Any forest gets a 3-label expression, one rooted tree at a time."""
    comps = g.components()
    if g.num_edges != g.n - len(comps):
        raise BuilderError("build_forest_expr: input has a cycle")
    parts = [_tree_expr(g, bits(c)[0], -1) for c in comps]
    return _finish(g, _fold_union(parts), 3, "forest<=3")


# ----------------------------------------------------------------------
# cographs


def _cograph_node_expr(node: MDNode) -> CwExpression:
    if node.kind == "leaf":
        return Leaf(1, node.leaf_vertex())
    if node.kind == "prime":
        raise BuilderError("build_cograph_expr: prime quotient encountered")
    parts = [_cograph_node_expr(ch) for ch in node.children]
    if node.kind == "parallel":
        return _fold_union(parts)
    acc = parts[0]
    for p in parts[1:]:
        acc = Rename(2, 1, Join(1, 2, Union(acc, Rename(1, 2, p))))
    return acc


def build_cograph_expr(g: Graph) -> BuildReport:
    md = modular_decomposition(g)
    expr = _cograph_node_expr(md.root)
    return _finish(g, expr, 2, "cograph<=2")


# ----------------------------------------------------------------------
# k-webs


def _kweb_graph_of(w: KWeb) -> Graph:
    n = 2 * w.k
    edges = []
    for a in range(w.k):
        for b in range(a + 1, w.k):
            edges.append((w.xs[a], w.xs[b]))
            edges.append((w.ys[a], w.ys[b]))
    for i in range(1, w.k + 1):
        for j in range(i + 1, w.k + 1):
            edges.append((w.xs[i - 1], w.ys[j - 1]))
    return Graph.from_edges(n, edges)


def kweb_expr(w: KWeb) -> CwExpression:
    """Grow the web from its top pair downward: a new x joins everything
    built so far, a new y joins only the previous ys; x keeps label 1 and y
    label 2 throughout."""
    k = w.k
    expr: CwExpression = Union(Leaf(1, w.xs[k - 1]), Leaf(2, w.ys[k - 1]))
    for i in range(k - 2, -1, -1):
        expr = Rename(3, 1, Join(3, 2, Join(3, 1, Union(expr, Leaf(3, w.xs[i])))))
        expr = Rename(3, 2, Join(3, 2, Union(expr, Leaf(3, w.ys[i]))))
    return expr


def build_kweb_expr(w: KWeb) -> BuildReport:
    if not kweb_matches(_kweb_graph_of(w), w):
        raise BuilderError("build_kweb_expr: value violates the k-web invariants")
    g = _kweb_graph_of(w)
    expr = kweb_expr(w)
    report = _finish(g, expr, 3, "kweb<=3")
    # the construction's inductive invariant: X ends labelled 1, Y labelled 2
    from .expr import evaluate

    labels = evaluate(expr).labels
    assert all(labels[x] == 1 for x in w.xs) and all(labels[y] == 2 for y in w.ys)
    return report


# ----------------------------------------------------------------------
# thick spiders


def _thick_spider_graph_of(s: Spider) -> Graph:
    n = 2 * len(s.body) + len(s.rest)
    ids = sorted(s.body | s.feet | s.rest)
    if ids != list(range(n)):
        raise BuilderError("spider vertex ids must be dense 0..n-1")
    edges = []
    feet = sorted(s.feet)
    nonmate = {kf: kb for kb, kf in s.matching}
    for a in range(len(feet)):
        for b in range(a + 1, len(feet)):
            edges.append((feet[a], feet[b]))
    for kf in feet:
        for kb in sorted(s.body):
            if kb != nonmate[kf]:
                edges.append((kf, kb))
    for r in sorted(s.rest):
        for kf in feet:
            edges.append((r, kf))
    return Graph.from_edges(n, edges)


def thick_spider_expr(s: Spider) -> CwExpression:
    """The four-label pairwise recursion: each step unions in the next
    foot/body pair on labels 3 and 4, joins the new foot to all previous
    bodies and feet and the new body to all previous feet, then folds 3 and 4
    back onto 1 and 2.  A rest vertex is joined to every foot at the end."""
    pairs = sorted(((kf, kb) for kb, kf in s.matching))
    (i1, k1) = pairs[0]
    expr: CwExpression = Union(Leaf(1, i1), Leaf(2, k1))
    for ij, kj in pairs[1:]:
        core = Union(expr, Union(Leaf(3, ij), Leaf(4, kj)))
        expr = Rename(3, 1, Rename(4, 2, Join(1, 3, Join(1, 4, Join(2, 3, core)))))
    if s.rest:
        (x,) = s.rest
        expr = Join(1, 4, Union(expr, Leaf(4, x)))
    return expr


def build_thick_spider_expr(s: Spider) -> BuildReport:
    if s.kind != "thick":
        raise BuilderError("build_thick_spider_expr: thin spider passed")
    if len(s.rest) > 1:
        raise BuilderError("build_thick_spider_expr: more than one rest vertex")
    g = _thick_spider_graph_of(s)
    if not spider_matches(g, s):
        raise BuilderError("build_thick_spider_expr: value violates the spider invariants")
    return _finish(g, thick_spider_expr(s), 4, "thick-spider<=4")


# ----------------------------------------------------------------------
# distance-hereditary graphs


def build_dh_expr(g: Graph) -> BuildReport:
    parts = []
    for comp in g.components():
        sub, idmap = induced_subgraph(g, bits(comp))
        back = {new: old for old, new in idmap.items()}
        seq = pruning_sequence(sub)
        if seq is None:
            raise BuilderError(
                "build_dh_expr: component is not distance-hereditary",
                witness=tuple(sorted(idmap)),
            )
        expr = dh_component_expr(sub, seq)
        parts.append(relabel_vertices(expr, back))
    return _finish(g, _fold_union(parts), 3, "distance-hereditary<=3")


def relabel_vertices(e: CwExpression, vmap: dict[int, int]) -> CwExpression:
    """Rewrite leaf vertex ids through a total injective map."""
    from .expr import postorder

    rebuilt: list[CwExpression] = []
    for node in postorder(e):
        if isinstance(node, Leaf):
            rebuilt.append(Leaf(node.label, vmap[node.vertex]))
        elif isinstance(node, Union):
            right = rebuilt.pop()
            left = rebuilt.pop()
            rebuilt.append(Union(left, right))
        elif isinstance(node, Join):
            rebuilt.append(Join(node.i, node.j, rebuilt.pop()))
        else:
            rebuilt.append(Rename(node.i, node.j, rebuilt.pop()))
    return rebuilt.pop()


# ----------------------------------------------------------------------
# maximum degree two


def build_maxdeg2_expr(g: Graph) -> BuildReport:
    if any(g.degree(v) > 2 for v in range(g.n)):
        bad = next(v for v in range(g.n) if g.degree(v) > 2)
        raise BuilderError("build_maxdeg2_expr: degree-3 vertex present", witness=bad)
    parts = []
    for comp in g.components():
        vs = bits(comp)
        if len(vs) == 1:
            parts.append(Leaf(1, vs[0]))
            continue
        degs = {v: (g.rows[v] & comp).bit_count() for v in vs}
        if all(d == 2 for d in degs.values()):
            # cycle: walk from the smallest vertex toward its smaller neighbour
            start = vs[0]
            walk = [start]
            prev = -1
            cur = start
            while True:
                nxts = [w for w in g.neighbors(cur) if w != prev]
                nxt = min(nxts)
                if nxt == start:
                    break
                walk.append(nxt)
                prev, cur = cur, nxt
            expr: CwExpression = Leaf(1, walk[0])
            expr = Join(1, 3, Union(expr, Leaf(3, walk[1])))
            for v in walk[2:]:
                expr = Rename(4, 3, Rename(3, 2, Join(3, 4, Union(expr, Leaf(4, v)))))
            parts.append(Join(1, 3, expr))
        else:
            ends = [v for v in vs if degs[v] <= 1]
            parts.append(_tree_expr(g, min(ends), -1))
    return _finish(g, _fold_union(parts), 4, "max-degree-2<=4")


# ----------------------------------------------------------------------
# chordal graphs via clique trees


def build_cliquetree_expr(g: Graph) -> BuildReport:
    peo = _require_chordal(g, "build_cliquetree_expr")
    omega = len(max_clique_chordal(g, peo)) if g.n else 0
    if omega <= 1:
        expr = _fold_union([Leaf(1, v) for v in range(g.n)]) if g.n else None
        if expr is None:
            raise BuilderError("build_cliquetree_expr: empty graph")
        return _finish(g, expr, 1, "clique-tree")
    if omega == 2:
        rep = build_forest_expr(g)
        return _finish(g, rep.expression, 3, "clique-tree")
    bound = 3 * 2 ** (omega - 2)
    parts = []
    for comp in g.components():
        sub, idmap = induced_subgraph(g, bits(comp))
        back = {new: old for old, new in idmap.items()}
        if sub.num_edges == sub.n * (sub.n - 1) // 2:
            # single-bag component: build the clique directly on two labels
            acc: CwExpression = Leaf(1, 0)
            for v in range(1, sub.n):
                acc = Rename(2, 1, Join(1, 2, Union(acc, Leaf(2, v))))
            parts.append(relabel_vertices(acc, back))
            continue
        builder = CliqueTreeBuilder(sub)
        parts.append(relabel_vertices(builder.build(), back))
    return _finish(g, _fold_union(parts), bound, "clique-tree")


# ----------------------------------------------------------------------
# composite: bull-free chordal


def _md_compose(
    g: Graph,
    node: MDNode,
    prime_route,
    trace: list[tuple[int, str]],
    counter: list[int],
) -> CwExpression:
    """Recursive modular composition: quotient expression per node kind,
    children substituted back in."""
    nid = counter[0]
    counter[0] += 1
    if node.kind == "leaf":
        trace.append((nid, "leaf"))
        return Leaf(1, node.leaf_vertex())
    parts = {
        i: _md_compose(g, ch, prime_route, trace, counter)
        for i, ch in enumerate(node.children)
    }
    m = len(node.children)
    if node.kind == "parallel":
        trace.append((nid, "parallel"))
        quotient_expr = _fold_union([Leaf(1, i) for i in range(m)])
    elif node.kind == "series":
        trace.append((nid, "series"))
        acc: CwExpression = Leaf(1, 0)
        for i in range(1, m):
            acc = Rename(2, 1, Join(1, 2, Union(acc, Leaf(2, i))))
        quotient_expr = acc
    else:
        route, quotient_expr = prime_route(node.quotient)
        trace.append((nid, route))
    return substitute_modules(quotient_expr, parts)


def build_bullfree_chordal(g: Graph) -> BuildReport:
    """Width-3 expressions for bull-free chordal graphs.

    Prime quotients of such graphs are triangle-free (hence forests) or
    k-webs; anything else is a contract violation and raises.
    """
    _require_chordal(g, "build_bullfree_chordal")
    _require_free(g, "bull", "build_bullfree_chordal")
    if g.n == 0:
        raise BuilderError("build_bullfree_chordal: empty graph")

    def prime_route(q: Graph):
        if q.num_edges == q.n - len(q.components()):
            return "prime-forest", build_forest_expr(q).expression
        w = detect_kweb(q)
        if w is not None:
            return "prime-kweb", kweb_expr(w)
        raise BuilderError(
            "build_bullfree_chordal: prime quotient is neither a forest nor a k-web"
        )

    md = modular_decomposition(g)
    trace: list[tuple[int, str]] = []
    expr = _md_compose(g, md.root, prime_route, trace, [0])
    return _finish(g, expr, 3, "bull-free-chordal<=3", trace)


# ----------------------------------------------------------------------
# composite: co-chair-free chordal


def build_cochair_chordal(g: Graph) -> BuildReport:
    """Width-4 expressions for co(S_{1,1,2})-free chordal graphs.

    Prime quotients are thick spiders (with at most one rest vertex) or
    diamond-free, and diamond-free chordal graphs are distance-hereditary, so
    each quotient goes through the spider recursion or the pruning-sequence
    replay.
    """
    _require_chordal(g, "build_cochair_chordal")
    _require_free(g, "co(S_{1,1,2})", "build_cochair_chordal")
    if g.n == 0:
        raise BuilderError("build_cochair_chordal: empty graph")
    diamond = catalog.catalog_lookup("diamond")

    def prime_route(q: Graph):
        s = detect_spider(q, prime=True)
        if s is not None and s.kind == "thick":
            return "prime-thick-spider", thick_spider_expr(s)
        if induced_subgraph_isomorphic(diamond, q) is not None:
            raise BuilderError(
                "build_cochair_chordal: prime quotient is neither a thick spider nor diamond-free"
            )
        seq_parts = []
        for comp in q.components():
            sub, idmap = induced_subgraph(q, bits(comp))
            back = {new: old for old, new in idmap.items()}
            seq = pruning_sequence(sub)
            if seq is None:
                raise BuilderError(
                    "build_cochair_chordal: diamond-free quotient is not distance-hereditary"
                )
            seq_parts.append(relabel_vertices(dh_component_expr(sub, seq), back))
        return "prime-distance-hereditary", _fold_union(seq_parts)

    md = modular_decomposition(g)
    trace: list[tuple[int, str]] = []
    expr = _md_compose(g, md.root, prime_route, trace, [0])
    return _finish(g, expr, 4, "co-chair-free-chordal<=4", trace)


# ----------------------------------------------------------------------
# dispatcher


def build_auto(g: Graph) -> BuildReport:
    """Run the recognizers and pick the tightest applicable builder."""
    candidates: list[BuildReport] = []

    def attempt(fn, *args):
        try:
            candidates.append(fn(*args))
        except (BuilderError, ValueError):
            pass

    if g.num_edges == g.n - len(g.components()):
        attempt(build_forest_expr, g)
    attempt(build_cograph_expr, g)
    w = detect_kweb(g)
    if w is not None:
        attempt(build_kweb_expr, w)
    s = detect_spider(g)
    if s is not None and s.kind == "thick" and len(s.rest) <= 1:
        attempt(build_thick_spider_expr, s)
    attempt(build_dh_expr, g)
    if all(g.degree(v) <= 2 for v in range(g.n)):
        attempt(build_maxdeg2_expr, g)
    if chordal_peo(g) is not None:
        attempt(build_bullfree_chordal, g)
        attempt(build_cochair_chordal, g)
        attempt(build_cliquetree_expr, g)
    if not candidates:
        raise BuilderError("build_auto: no applicable builder for this input")
    best = min(candidates, key=lambda r: (r.claimed_bound, width(r.expression)))
    return best
