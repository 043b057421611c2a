"""Recognizers and structural decompositions used by the expression builders.

Covers chordality (maximum cardinality search + elimination-order check with
a shortest-hole counter-witness), simplicial vertices, maximum cliques of
chordal graphs, split partitions, modular decomposition, k-webs, spiders,
distance-hereditary pruning sequences, and the weakly chordal test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Graph, bits, complement, induced_subgraph, mask_of
from .iso import induced_subgraph_isomorphic


# ----------------------------------------------------------------------
# chordality


@dataclass(frozen=True)
class Peo:
    """A perfect elimination ordering: each vertex's later neighbours in
    ``order`` form a clique."""

    order: tuple[int, ...]


def is_valid_peo(g: Graph, order: tuple[int, ...]) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    later = [0] * g.n
    for i, v in enumerate(order):
        m = 0
        for w in g.neighbors(v):
            if pos[w] > i:
                m |= 1 << w
        later[v] = m
    for v in order:
        m = later[v]
        if not m:
            continue
        # classic check: it suffices that the earliest later neighbour u
        # sees all the other later neighbours of v
        u = min(bits(m), key=lambda w: pos[w])
        if (m & ~(1 << u)) & ~g.rows[u]:
            return False
    return True


def _mcs_order(g: Graph) -> tuple[int, ...]:
    """Maximum cardinality search; returns a candidate elimination order."""
    weight = [0] * g.n
    visited = 0
    rev = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if visited >> v & 1:
                continue
            if best == -1 or weight[v] > weight[best]:
                best = v
        rev.append(best)
        visited |= 1 << best
        for w in g.neighbors(best):
            if not visited >> w & 1:
                weight[w] += 1
    rev.reverse()
    return tuple(rev)


def chordal_peo(g: Graph) -> Peo | None:
    """A perfect elimination ordering iff ``g`` is chordal, else None.

    When None, :func:`find_hole` yields an induced cycle of length >= 4 as
    the counter-witness.
    """
    order = _mcs_order(g)
    if is_valid_peo(g, order):
        return Peo(order)
    return None


def find_hole(g: Graph) -> tuple[int, ...] | None:
    """A shortest induced cycle of length >= 4, or None if ``g`` is chordal.

    For every vertex v and non-adjacent neighbour pair x, y, a shortest x-y
    path avoiding N[v] minus {x, y} closes into an induced cycle through v;
    minimising over all anchors finds a shortest hole.
    """
    best: tuple[int, ...] | None = None
    for v in range(g.n):
        nb = g.neighbors(v)
        closed = g.rows[v] | (1 << v)
        for ai in range(len(nb)):
            for bi in range(ai + 1, len(nb)):
                x, y = nb[ai], nb[bi]
                if g.has_edge(x, y):
                    continue
                allowed = ~(closed & ~(1 << x) & ~(1 << y))
                # BFS from x to y inside `allowed`
                prev = {x: -1}
                frontier = [x]
                found = False
                while frontier and not found:
                    nxt = []
                    for u in frontier:
                        for w in bits(g.rows[u] & allowed):
                            if w in prev:
                                continue
                            prev[w] = u
                            if w == y:
                                found = True
                                break
                            nxt.append(w)
                        if found:
                            break
                    frontier = nxt
                if not found:
                    continue
                path = [y]
                while path[-1] != x:
                    path.append(prev[path[-1]])
                cycle = tuple([v] + path[::-1])
                if best is None or len(cycle) < len(best):
                    best = cycle
    return best


def is_chordal(g: Graph) -> bool:
    return chordal_peo(g) is not None


def simplicial_vertices(g: Graph) -> frozenset[int]:
    """Exactly the vertices whose neighbourhood induces a complete graph."""
    return frozenset(v for v in range(g.n) if g.is_clique(g.rows[v]))


def max_clique_chordal(g: Graph, peo: Peo) -> frozenset[int]:
    """A maximum clique of a chordal graph from its elimination ordering.

    Every maximal clique is some vertex plus its later neighbours; among the
    maximum-size candidates the lexicographically smallest vertex set is
    returned so results are reproducible.
    """
    if not is_valid_peo(g, peo.order):
        raise ValueError("invalid perfect elimination ordering for this graph")
    pos = {v: i for i, v in enumerate(peo.order)}
    best: list[int] | None = None
    for i, v in enumerate(peo.order):
        cand = [v] + [w for w in g.neighbors(v) if pos[w] > i]
        cand.sort()
        if best is None or len(cand) > len(best) or (len(cand) == len(best) and cand < best):
            best = cand
    return frozenset(best if best is not None else [])


def clique_number_chordal(g: Graph) -> int:
    peo = chordal_peo(g)
    if peo is None:
        raise ValueError("graph is not chordal")
    return len(max_clique_chordal(g, peo)) if g.n else 0


# ----------------------------------------------------------------------
# split graphs


@dataclass(frozen=True)
class SplitPartition:
    clique: frozenset[int]
    independent: frozenset[int]


def split_partition(g: Graph) -> SplitPartition | None:
    """A (K, I) split partition iff one exists.

    Degree-sequence construction: with degrees d_1 >= ... >= d_n and m the
    largest index with d_m >= m-1, the top-m vertices form the clique side
    exactly when the degree sums balance.
    """
    if g.n == 0:
        return SplitPartition(frozenset(), frozenset())
    verts = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in verts]
    m = 0
    for i, d in enumerate(degs, start=1):
        if d >= i - 1:
            m = i
    left = sum(degs[:m])
    right = m * (m - 1) + sum(degs[m:])
    if left != right:
        return None
    k = frozenset(verts[:m])
    i_side = frozenset(verts[m:])
    # when the balance holds, the top-m vertices form a clique for any
    # tie-break, so these checks are invariants rather than filters
    assert g.is_clique(mask_of(k)), "degree balance held but clique side failed"
    assert g.is_independent(mask_of(i_side)), "degree balance held but independent side failed"
    return SplitPartition(k, i_side)


def split_obstruction(g: Graph) -> tuple[str, tuple[int, ...]] | None:
    """For a non-split graph, one forbidden configuration among C_4, C_5, 2P_2.

    Returns (name, vertices) where the vertex tuple lists the witness in the
    pattern's own vertex order; None when the graph is split.
    """
    from .catalog import catalog_lookup

    if split_partition(g) is not None:
        return None
    for name in ("C_4", "C_5", "2P_2"):
        w = induced_subgraph_isomorphic(catalog_lookup(name), g)
        if w is not None:
            return name, tuple(w[u] for u in sorted(w))
    raise AssertionError("non-split graph without a C_4, C_5 or 2P_2 witness")


# ----------------------------------------------------------------------
# modular decomposition


@dataclass(frozen=True)
class MDNode:
    """Node of a modular decomposition tree.

    ``kind`` is one of leaf/series/parallel/prime; ``vertices`` is the node's
    vertex set sorted; prime nodes carry their quotient graph whose vertex i
    corresponds to ``children[i]``.
    """

    kind: str
    vertices: tuple[int, ...]
    children: tuple["MDNode", ...] = ()
    quotient: Graph | None = None

    def leaf_vertex(self) -> int:
        assert self.kind == "leaf"
        return self.vertices[0]


@dataclass(frozen=True)
class ModularDecompositionTree:
    root: MDNode

    def to_lines(self) -> list[str]:
        """One record per node, preorder: ``node <id> <kind> parent=<pid> vertices=<csv>``."""
        out = []
        counter = [0]

        def walk(node: MDNode, parent: int):
            nid = counter[0]
            counter[0] += 1
            vs = ",".join(map(str, node.vertices))
            out.append(f"node {nid} {node.kind} parent={parent} vertices={vs}")
            for ch in node.children:
                walk(ch, nid)

        walk(self.root, -1)
        return out


def _min_module_closure(g: Graph, seed: int) -> int:
    """Smallest module containing the vertex set ``seed`` (a bitmask).

    A vertex adjacent to some but not all of the current set must join it.
    Maintained incrementally: Zc tracks outside vertices complete to the set,
    Ze those anti-complete; everything else is swallowed.
    """
    full = g.full_mask()
    s = seed
    outside = full & ~s
    first = bits(seed)
    zc = outside
    ze = outside
    for v in first:
        zc &= g.rows[v]
        ze &= ~g.rows[v]
    queue = outside & ~zc & ~ze
    while queue:
        s |= queue
        zc &= ~queue
        ze &= ~queue
        added = queue
        queue = 0
        for v in bits(added):
            splitters = (zc & ~g.rows[v]) | (ze & g.rows[v])
            zc &= ~splitters
            ze &= ~splitters
            queue |= splitters
    return s


def modular_decomposition(g: Graph) -> ModularDecompositionTree:
    """Modular decomposition tree with quotients attached at prime nodes.

    Simple cubic-ish algorithm: recurse on components (parallel), then
    co-components (series); in the connected co-connected case the maximal
    strong modules are recovered by merging minimal modules of vertex pairs.
    """
    if g.n < 1:
        raise ValueError("modular decomposition needs at least one vertex")

    def _build_local(h: Graph, ids: list[int]) -> MDNode:
        if h.n == 1:
            return MDNode("leaf", (ids[0],))
        comps = h.components()
        if len(comps) > 1:
            children = tuple(_sub_build(h, c, ids) for c in comps)
            verts = tuple(sorted(v for ch in children for v in ch.vertices))
            return MDNode("parallel", verts, children)
        co = complement(h)
        cocomps = co.components()
        if len(cocomps) > 1:
            children = tuple(_sub_build(h, c, ids) for c in cocomps)
            verts = tuple(sorted(v for ch in children for v in ch.vertices))
            return MDNode("series", verts, children)
        # connected and co-connected: merge minimal modules of pairs
        parent = list(range(h.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        full = h.full_mask()
        for x in range(h.n):
            for y in range(x + 1, h.n):
                if find(x) == find(y):
                    continue
                m = _min_module_closure(h, (1 << x) | (1 << y))
                if m == full:
                    continue
                members = bits(m)
                r = find(members[0])
                for v in members[1:]:
                    parent[find(v)] = r
        groups: dict[int, int] = {}
        for v in range(h.n):
            r = find(v)
            groups[r] = groups.get(r, 0) | (1 << v)
        classes = sorted(groups.values(), key=lambda m: m & -m)
        children = tuple(_sub_build(h, c, ids) for c in classes)
        reps = [bits(c)[0] for c in classes]
        qedges = []
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if h.has_edge(reps[i], reps[j]):
                    qedges.append((i, j))
        quotient = Graph.from_edges(len(reps), qedges)
        verts = tuple(sorted(v for ch in children for v in ch.vertices))
        return MDNode("prime", verts, children, quotient)

    def _sub_build(h: Graph, cmask: int, ids: list[int]) -> MDNode:
        sub, idmap = induced_subgraph(h, bits(cmask))
        sub_ids = [0] * sub.n
        for old, new in idmap.items():
            sub_ids[new] = ids[old]
        return _build_local(sub, sub_ids)

    return ModularDecompositionTree(_build_local(g, list(range(g.n))))


def is_module(g: Graph, mmask: int) -> bool:
    """Definitional test: every outside vertex complete or anti-complete to it."""
    size = mmask.bit_count()
    for v in bits(g.full_mask() & ~mmask):
        inter = (g.rows[v] & mmask).bit_count()
        if inter not in (0, size):
            return False
    return True


def is_prime(g: Graph) -> bool:
    """Only trivial modules; graphs on <= 2 vertices are vacuously prime."""
    if g.n <= 2:
        return True
    full = g.full_mask()
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if _min_module_closure(g, (1 << x) | (1 << y)) != full:
                return False
    return True


# ----------------------------------------------------------------------
# k-webs


@dataclass(frozen=True)
class KWeb:
    """Two k-cliques X, Y with the staircase rule: x_i ~ y_j iff i < j."""

    k: int
    xs: tuple[int, ...]
    ys: tuple[int, ...]


def kweb_graph(k: int) -> tuple[Graph, KWeb]:
    """Definitional k-web on ids x_i = i-1, y_j = k+j-1."""
    if k < 1:
        raise ValueError("k-web needs k >= 1")
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            edges.append((i, j))
            edges.append((k + i, k + j))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            edges.append((i - 1, k + j - 1))
    g = Graph.from_edges(2 * k, edges)
    return g, KWeb(k, tuple(range(k)), tuple(range(k, 2 * k)))


def kweb_matches(g: Graph, w: KWeb) -> bool:
    """Definitional validator, independent of the recognizer."""
    if w.k < 1 or len(w.xs) != w.k or len(w.ys) != w.k:
        return False
    vs = list(w.xs) + list(w.ys)
    if sorted(vs) != list(range(g.n)):
        return False
    for a in range(w.k):
        for b in range(a + 1, w.k):
            if not g.has_edge(w.xs[a], w.xs[b]) or not g.has_edge(w.ys[a], w.ys[b]):
                return False
    for i in range(1, w.k + 1):
        for j in range(1, w.k + 1):
            expect = i < j
            if g.has_edge(w.xs[i - 1], w.ys[j - 1]) != expect:
                return False
    return True


def detect_kweb(g: Graph) -> KWeb | None:
    """Recover the (xs, ys) orderings iff ``g`` is a k-web with k >= 2.

    The complement of a k-web is connected and bipartite, which pins the two
    clique sides; the staircase forces strictly increasing cross-degrees, so
    sorting by cross-degree (ties by vertex id) is canonical.
    """
    if g.n < 4 or g.n % 2:
        return None
    co = complement(g)
    if len(co.components()) != 1:
        return None
    # 2-colour the complement
    color = [-1] * g.n
    color[0] = 0
    queue = [0]
    while queue:
        v = queue.pop()
        for w in co.neighbors(v):
            if color[w] == -1:
                color[w] = 1 - color[v]
                queue.append(w)
            elif color[w] == color[v]:
                return None
    side0 = [v for v in range(g.n) if color[v] == 0]
    side1 = [v for v in range(g.n) if color[v] == 1]
    if len(side0) != len(side1):
        return None
    k = len(side0)
    for xs_cand, ys_cand in ((side0, side1), (side1, side0)):
        ymask = mask_of(ys_cand)
        xmask = mask_of(xs_cand)
        xs = sorted(xs_cand, key=lambda v: (-(g.rows[v] & ymask).bit_count(), v))
        ys = sorted(ys_cand, key=lambda v: ((g.rows[v] & xmask).bit_count(), v))
        w = KWeb(k, tuple(xs), tuple(ys))
        if kweb_matches(g, w):
            return w
    return None


# ----------------------------------------------------------------------
# spiders


@dataclass(frozen=True)
class Spider:
    """Body/feet/rest partition with the induced matching between body and feet.

    thin: body is a clique, feet independent, rest complete to the body and
    anti-complete to the feet, and the body-feet edges are exactly the
    matching.  thick: the complement satisfies the thin conditions.
    ``matching`` pairs (body vertex, foot).
    """

    kind: str
    body: frozenset[int]
    feet: frozenset[int]
    rest: frozenset[int]
    matching: tuple[tuple[int, int], ...]


def spider_matches(g: Graph, s: Spider) -> bool:
    """Definitional validator (independent of the recognizer)."""
    if s.kind not in ("thin", "thick"):
        return False
    h = g if s.kind == "thin" else complement(g)
    k, i, r = mask_of(s.body), mask_of(s.feet), mask_of(s.rest)
    if k & i or k & r or i & r or (k | i | r) != g.full_mask():
        return False
    p = len(s.body)
    if p < 2 or len(s.feet) != p or len(s.matching) != p:
        return False
    if not h.is_clique(k) or not h.is_independent(i):
        return False
    for v in bits(r):
        if (h.rows[v] & k) != k or h.rows[v] & i:
            return False
    match_feet = set()
    match_bodies = set()
    for kb, kf in s.matching:
        if kb not in s.body or kf not in s.feet:
            return False
        match_bodies.add(kb)
        match_feet.add(kf)
        if (h.rows[kf] & k) != (1 << kb):
            return False
        if (h.rows[kb] & i) != (1 << kf):
            return False
    return len(match_feet) == p and len(match_bodies) == p


def _detect_thin(g: Graph) -> Spider | None:
    feet = [v for v in range(g.n) if g.degree(v) == 1]
    if len(feet) < 2:
        return None
    body = []
    matching = []
    for f in feet:
        b = g.neighbors(f)[0]
        body.append(b)
        matching.append((b, f))
    if len(set(body)) != len(feet):
        return None
    bmask = mask_of(body)
    fmask = mask_of(feet)
    if bmask & fmask:
        return None
    if not g.is_clique(bmask):
        return None
    rest = g.full_mask() & ~bmask & ~fmask
    for v in bits(rest):
        if (g.rows[v] & bmask) != bmask or g.rows[v] & fmask:
            return None
    for b in body:
        if (g.rows[b] & fmask).bit_count() != 1:
            return None
    return Spider(
        "thin",
        frozenset(body),
        frozenset(feet),
        frozenset(bits(rest)),
        tuple(sorted(matching)),
    )


def detect_spider(g: Graph, prime: bool = False) -> Spider | None:
    """A Spider value iff the graph matches the definition; thin tried first.

    With ``prime=True`` the caller asserts the input is prime, in which case
    a matched spider must have at most one rest vertex; a larger rest then
    signals a contract violation and raises.
    """
    s = _detect_thin(g)
    if s is None:
        co = _detect_thin(complement(g))
        if co is not None:
            s = Spider("thick", co.body, co.feet, co.rest, co.matching)
    if s is None:
        return None
    if prime and len(s.rest) > 1:
        raise ValueError("prime input yielded a spider with more than one rest vertex")
    return s


def thin_spider_graph(p: int, rest: int = 0) -> Graph:
    """Definitional thin spider: body 0..p-1, feet p..2p-1 (i matched to p+i),
    rest vertices 2p..2p+rest-1 forming an independent set."""
    if p < 2:
        raise ValueError("spider needs body size >= 2")
    edges = []
    for a in range(p):
        for b in range(a + 1, p):
            edges.append((a, b))
        edges.append((a, p + a))
    for r in range(rest):
        for a in range(p):
            edges.append((2 * p + r, a))
    return Graph.from_edges(2 * p + rest, edges)


def thick_spider_graph(p: int, rest: int = 0) -> Graph:
    return complement(thin_spider_graph(p, rest))


# ----------------------------------------------------------------------
# distance-hereditary pruning sequences

PRUNE_PENDANT = "pendant"
PRUNE_TRUE_TWIN = "true-twin"
PRUNE_FALSE_TWIN = "false-twin"


@dataclass(frozen=True)
class PruneStep:
    vertex: int
    reason: str
    anchor: int


@dataclass(frozen=True)
class PruningSequence:
    """Pendant/twin eliminations ending at the single vertex ``last``."""

    steps: tuple[PruneStep, ...]
    last: int

    def to_lines(self) -> list[str]:
        out = [f"prune {s.vertex} {s.reason} {s.anchor}" for s in self.steps]
        out.append(f"root {self.last}")
        return out


def _prune_candidate(g: Graph, alive: int, v: int) -> tuple[str, int] | None:
    row = g.rows[v] & alive
    if row.bit_count() == 1:
        return PRUNE_PENDANT, row.bit_length() - 1
    for w in bits(alive & ~(1 << v)):
        roww = g.rows[w] & alive
        if row & ~(1 << w) == roww & ~(1 << v) and (row >> w) & 1:
            return PRUNE_TRUE_TWIN, w
    for w in bits(alive & ~(1 << v)):
        roww = g.rows[w] & alive
        if row == roww and not (row >> w) & 1:
            return PRUNE_FALSE_TWIN, w
    return None


def pruning_sequence(g: Graph) -> PruningSequence | None:
    """A pendant/twin elimination sequence iff ``g`` is distance-hereditary.

    The input must be connected; disconnected graphs are handled per
    component by callers.  Scanning is by ascending vertex id with true twins
    preferred over false twins, so sequences are reproducible.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if not g.is_connected():
        raise ValueError("pruning sequences are defined for connected graphs")
    alive = g.full_mask()
    steps = []
    while alive.bit_count() > 1:
        found = None
        for v in bits(alive):
            cand = _prune_candidate(g, alive, v)
            if cand is not None:
                found = PruneStep(v, cand[0], cand[1])
                break
        if found is None:
            return None
        steps.append(found)
        alive &= ~(1 << found.vertex)
    return PruningSequence(tuple(steps), alive.bit_length() - 1)


def verify_pruning_sequence(g: Graph, seq: PruningSequence) -> bool:
    """Replay the eliminations, checking each stated reason at its own step."""
    alive = g.full_mask()
    for s in seq.steps:
        if not alive >> s.vertex & 1 or not alive >> s.anchor & 1 or s.vertex == s.anchor:
            return False
        row = g.rows[s.vertex] & alive
        arow = g.rows[s.anchor] & alive
        if s.reason == PRUNE_PENDANT:
            if row != 1 << s.anchor:
                return False
        elif s.reason == PRUNE_TRUE_TWIN:
            if not row >> s.anchor & 1:
                return False
            if row & ~(1 << s.anchor) != arow & ~(1 << s.vertex):
                return False
        elif s.reason == PRUNE_FALSE_TWIN:
            if row >> s.anchor & 1 or row != arow:
                return False
        else:
            return False
        alive &= ~(1 << s.vertex)
    return alive == 1 << seq.last


def is_distance_hereditary(g: Graph) -> bool:
    """Per-component pruning-sequence existence."""
    for comp in g.components():
        sub, _ = induced_subgraph(g, bits(comp))
        if pruning_sequence(sub) is None:
            return False
    return True


# ----------------------------------------------------------------------
# weakly chordal


def _has_long_hole(g: Graph, minlen: int) -> bool:
    """Exhaustive search for an induced cycle of length >= minlen.

    Intended for small n (the subset scan is 2^n); an induced cycle is a
    subset whose induced subgraph is connected and 2-regular.
    """
    n = g.n
    for mask in range(1 << n):
        if mask.bit_count() < minlen:
            continue
        ok = True
        for v in bits(mask):
            if (g.rows[v] & mask).bit_count() != 2:
                ok = False
                break
        if not ok:
            continue
        vs = bits(mask)
        comp = 1 << vs[0]
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.rows[v] & mask
            frontier = nxt & ~comp
            comp |= frontier
        if comp == mask:
            return True
    return False


def is_weakly_chordal(g: Graph) -> bool:
    """True iff neither the graph nor its complement has an induced cycle of
    length at least 5.  Exhaustive; intended for n <= 16."""
    if g.n > 20:
        raise ValueError("weakly chordal test is exhaustive; n capped at 20")
    return not _has_long_hole(g, 5) and not _has_long_hole(complement(g), 5)
