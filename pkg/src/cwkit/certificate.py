"""Structural decomposition certificates for co(K_{1,3}+2P_1)-free chordal graphs.

The engine replays the structural argument on a concrete 2-connected member:
take a maximum clique K (at least 7 vertices, else the graph is already
K_7-free); every remaining vertex sits in S, the set of vertices with at
least two neighbours in K, and splits into S_1/S_2 by its number of
non-neighbours in K.  Five structural claims are asserted at runtime:

  1. adjacent S_2 vertices share their non-neighbour pair;
  2. non-adjacent S_2 vertices share a non-neighbour;
  3. an S_1-S_2 edge forces a common non-neighbour;
  4. S_1 is independent;
  5. the subgraph on S is a forest.

Then either S contains two independent edges, in which case two clique
vertices are deleted and one bipartite complementation splits the graph into
a clique and a forest, or S is 2P_2-free, in which case at most two deletions
inside S and at most two inside K followed by one bipartite complementation
leave a split graph whose independent side has at most one clique neighbour
per vertex.  Certificates are line-oriented and replayable by an independent
verifier.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import catalog_lookup
from .core import Graph, bits, induced_subgraph, is_two_connected, mask_of
from .iso import induced_subgraph_isomorphic
from .recognize import (
    chordal_peo,
    find_hole,
    is_valid_peo,
    max_clique_chordal,
    split_partition,
)

CASE_SMALL_CLIQUE = "small-clique"
CASE_2P2_IN_S = "2P2-in-S"
CASE_S_2P2_FREE = "S-2P2-free"

LEAF_CLIQUE = "clique"
LEAF_FOREST = "forest"
LEAF_K7_FREE = "K_7-free-chordal"
LEAF_SPLIT_BOUNDED = "split-bounded-attachment"


@dataclass(frozen=True)
class MaxCliqueStep:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class SPartitionStep:
    s1: tuple[int, ...]
    s2: tuple[int, ...]


@dataclass(frozen=True)
class VertexDeleteStep:
    vertices: tuple[int, ...]
    reason: str


@dataclass(frozen=True)
class BipartiteComplementStep:
    side_s: tuple[int, ...]
    side_t: tuple[int, ...]
    reason: str


@dataclass(frozen=True)
class CaseTagStep:
    tag: str


@dataclass(frozen=True)
class BlockSplitStep:
    cut_vertices: tuple[int, ...]


Step = (
    MaxCliqueStep
    | SPartitionStep
    | VertexDeleteStep
    | BipartiteComplementStep
    | CaseTagStep
    | BlockSplitStep
)


@dataclass(frozen=True)
class DecompositionCertificate:
    steps: tuple[Step, ...]
    leaves: tuple[tuple[tuple[int, ...], str], ...]

    def to_lines(self) -> list[str]:
        def csv(vs) -> str:
            return ",".join(map(str, vs))

        out = []
        for s in self.steps:
            if isinstance(s, MaxCliqueStep):
                out.append(f"max-clique {csv(s.vertices)}")
            elif isinstance(s, SPartitionStep):
                out.append(f"s-partition {csv(s.s1)}|{csv(s.s2)}")
            elif isinstance(s, VertexDeleteStep):
                out.append(f"delete {csv(s.vertices)} {s.reason}")
            elif isinstance(s, BipartiteComplementStep):
                out.append(f"bipcomp {csv(s.side_s)}|{csv(s.side_t)} {s.reason}")
            elif isinstance(s, CaseTagStep):
                out.append(f"case {s.tag}")
            else:
                out.append(f"block-split {csv(s.cut_vertices)}")
        for vs, kind in self.leaves:
            out.append(f"leaf {csv(vs)} {kind}")
        return out


class DecompositionError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _claim(condition: bool, message: str, witness) -> None:
    if not condition:
        raise DecompositionError(f"claim violated: {message}", witness)


def decompose_cok13_2p1(g: Graph) -> DecompositionCertificate:
    """Run the decomposition on a 2-connected class member (n <= 2 allowed
    as a degenerate block) and emit the certificate."""
    peo = chordal_peo(g)
    if peo is None:
        raise DecompositionError("input is not chordal", witness=find_hole(g))
    forbidden = catalog_lookup("co(K_{1,3}+2P_1)")
    emb = induced_subgraph_isomorphic(forbidden, g)
    if emb is not None:
        raise DecompositionError(
            "input contains an induced co(K_{1,3}+2P_1)", witness=emb
        )
    if g.n > 2 and not is_two_connected(g):
        raise DecompositionError("input is not 2-connected; decompose blocks instead")

    steps: list[Step] = []
    all_vs = tuple(range(g.n))
    if g.n <= 2:
        return DecompositionCertificate(
            (CaseTagStep(CASE_SMALL_CLIQUE),), ((all_vs, LEAF_K7_FREE),)
        )
    kclique = max_clique_chordal(g, peo)
    k = len(kclique)
    if k <= 6:
        return DecompositionCertificate(
            (CaseTagStep(CASE_SMALL_CLIQUE),), ((all_vs, LEAF_K7_FREE),)
        )
    kmask = mask_of(kclique)
    steps.append(MaxCliqueStep(tuple(sorted(kclique))))

    svert = [
        v
        for v in range(g.n)
        if not kmask >> v & 1 and (g.rows[v] & kmask).bit_count() >= 2
    ]
    smask = mask_of(svert)
    stray = [v for v in range(g.n) if not (kmask | smask) >> v & 1]
    _claim(not stray, "every vertex lies in K or has >= 2 neighbours in K", tuple(stray))

    def non_nbrs_in_k(v: int) -> list[int]:
        return bits(kmask & ~g.rows[v])

    s1, s2 = [], []
    for v in svert:
        missing = len(non_nbrs_in_k(v))
        _claim(
            missing in (1, 2),
            "an S vertex has one or two non-neighbours in K",
            (v, missing),
        )
        (s1 if missing == 1 else s2).append(v)
    steps.append(SPartitionStep(tuple(s1), tuple(s2)))

    # claims about the structure of S
    for i, t in enumerate(s2):
        for t2 in s2[i + 1 :]:
            if g.has_edge(t, t2):
                _claim(
                    set(non_nbrs_in_k(t)) == set(non_nbrs_in_k(t2)),
                    "adjacent S_2 vertices share their non-neighbour pair",
                    (t, t2),
                )
            else:
                _claim(
                    bool(set(non_nbrs_in_k(t)) & set(non_nbrs_in_k(t2))),
                    "non-adjacent S_2 vertices share a non-neighbour",
                    (t, t2),
                )
    for s in s1:
        for t in s2:
            if g.has_edge(s, t):
                _claim(
                    bool(set(non_nbrs_in_k(s)) & set(non_nbrs_in_k(t))),
                    "an S_1-S_2 edge forces a common non-neighbour in K",
                    (s, t),
                )
    for i, u in enumerate(s1):
        for w in s1[i + 1 :]:
            _claim(not g.has_edge(u, w), "S_1 is independent", (u, w))
    s_edges = [(u, v) for u, v in g.edges() if smask >> u & 1 and smask >> v & 1]
    _claim(
        _is_forest_on(g, smask),
        "the subgraph induced on S is a forest",
        tuple(s_edges[:6]),
    )

    if _find_2p2_inside(g, smask) is not None:
        return _case_two_edges(g, steps, kmask, smask)
    return _case_sparse(g, steps, kmask, smask, s2)


def _is_forest_on(g: Graph, mask: int) -> bool:
    vs = bits(mask)
    edges = sum(1 for u in vs for v in bits(g.rows[u] & mask) if v > u)
    comps = 0
    seen = 0
    for v in vs:
        if seen >> v & 1:
            continue
        comps += 1
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.rows[u] & mask
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
    return edges == len(vs) - comps


def _find_2p2_inside(g: Graph, mask: int) -> tuple[int, int, int, int] | None:
    vs = bits(mask)
    edges = [(u, v) for u in vs for v in bits(g.rows[u] & mask) if v > u]
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1 :]:
            if len({a, b, c, d}) == 4:
                if not (
                    g.has_edge(a, c)
                    or g.has_edge(a, d)
                    or g.has_edge(b, c)
                    or g.has_edge(b, d)
                ):
                    return a, b, c, d
    return None


def _edge_components(g: Graph, mask: int) -> list[int]:
    """Connected components of the induced subgraph that contain an edge."""
    out = []
    seen = 0
    for v in bits(mask):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.rows[u] & mask
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        has_edge = any(g.rows[u] & comp for u in bits(comp))
        if has_edge:
            out.append(comp)
    return out


def _case_two_edges(
    g: Graph, steps: list, kmask: int, smask: int
) -> DecompositionCertificate:
    steps.append(CaseTagStep(CASE_2P2_IN_S))
    cur_s = smask
    if len(_edge_components(g, cur_s)) < 2:
        # one tree holds both edges; remove its unique path cut vertex
        chosen = None
        for v in bits(cur_s):
            if len(_edge_components(g, cur_s & ~(1 << v))) >= 2:
                chosen = v
                break
        _claim(chosen is not None, "a single S deletion separates two edges", None)
        steps.append(VertexDeleteStep((chosen,), "separate-two-S-edges"))
        cur_s &= ~(1 << chosen)
    comps = _edge_components(g, cur_s)
    d1 = min(comps, key=lambda c: c & -c)
    d1_edges = sorted(
        (u, v) for u in bits(d1) for v in bits(g.rows[u] & d1) if v > u
    )
    u, v = d1_edges[0]
    t = None
    for cand in (min(u, v), max(u, v)):
        if (kmask & ~g.rows[cand]).bit_count() == 2:
            t = cand
            break
    _claim(t is not None, "an S-edge has an endpoint with two K non-neighbours", (u, v))
    a, b = bits(kmask & ~g.rows[t])
    k_rest = kmask & ~(1 << a) & ~(1 << b)
    outside_d1 = cur_s & ~d1
    for w in bits(k_rest):
        _claim(
            outside_d1 & ~g.rows[w] == 0,
            "K minus the pair is complete to S outside the chosen component",
            (w, tuple(bits(outside_d1 & ~g.rows[w]))),
        )
    for w in bits(k_rest):
        _claim(
            d1 & ~g.rows[w] == 0,
            "K minus the pair is complete to the chosen component",
            (w, tuple(bits(d1 & ~g.rows[w]))),
        )
    steps.append(VertexDeleteStep((a, b), "non-neighbour-pair-of-S2-edge-endpoint"))
    steps.append(
        BipartiteComplementStep(
            tuple(bits(k_rest)), tuple(bits(cur_s)), "split-off-clique-from-forest"
        )
    )
    leaves = (
        (tuple(bits(k_rest)), LEAF_CLIQUE),
        (tuple(bits(cur_s)), LEAF_FOREST),
    )
    return DecompositionCertificate(tuple(steps), leaves)


def _case_sparse(
    g: Graph, steps: list, kmask: int, smask: int, s2: list[int]
) -> DecompositionCertificate:
    steps.append(CaseTagStep(CASE_S_2P2_FREE))
    cur_s = smask
    comps = _edge_components(g, cur_s)
    _claim(len(comps) <= 1, "a 2P_2-free forest has at most one edge component", None)
    if comps:
        d = comps[0]
        inner = [v for v in bits(d) if (g.rows[v] & d).bit_count() >= 2]
        if not inner:
            inner = [min(bits(d))]
        _claim(
            len(inner) <= 2,
            "the edge component is a path of two vertices, a star or a double-star",
            tuple(inner),
        )
        steps.append(VertexDeleteStep(tuple(sorted(inner)), "flatten-S-component"))
        for v in inner:
            cur_s &= ~(1 << v)
    cur_k = kmask
    s2_alive = [v for v in s2 if cur_s >> v & 1]
    if s2_alive:
        s = min(s2_alive)
        k1, k2 = bits(kmask & ~g.rows[s])
        steps.append(VertexDeleteStep((k1, k2), "non-neighbour-pair-of-an-S2-vertex"))
        cur_k &= ~(1 << k1) & ~(1 << k2)
    for v in bits(cur_s):
        missing = (cur_k & ~g.rows[v]).bit_count()
        _claim(
            missing <= 1,
            "after the K deletions every S vertex misses at most one K vertex",
            (v, missing),
        )
    steps.append(
        BipartiteComplementStep(
            tuple(bits(cur_k)), tuple(bits(cur_s)), "invert-K-S-attachments"
        )
    )
    leaves = ((tuple(sorted(bits(cur_k) + bits(cur_s))), LEAF_SPLIT_BOUNDED),)
    return DecompositionCertificate(tuple(steps), leaves)


# ----------------------------------------------------------------------
# verification


def _leaf_test(g_rows: list[int], alive: int, vs: tuple[int, ...], kind: str) -> bool:
    vmask = mask_of(vs)
    if vmask & ~alive:
        return False
    sub_edges = []
    for u in vs:
        for v in bits(g_rows[u] & vmask):
            if v > u:
                sub_edges.append((u, v))
    idmap = {v: i for i, v in enumerate(sorted(vs))}
    sub = Graph.from_edges(len(vs), [(idmap[u], idmap[v]) for u, v in sub_edges])
    if kind == LEAF_CLIQUE:
        return sub.num_edges == sub.n * (sub.n - 1) // 2
    if kind == LEAF_FOREST:
        return sub.num_edges == sub.n - len(sub.components())
    if kind == LEAF_K7_FREE:
        peo = chordal_peo(sub)
        if peo is None:
            return False
        return len(max_clique_chordal(sub, peo)) <= 6 if sub.n else True
    if kind == LEAF_SPLIT_BOUNDED:
        return _split_bounded_attachment(sub)
    return False


def _split_bounded_attachment(sub: Graph) -> bool:
    part = split_partition(sub)
    if part is None:
        return False

    def ok(clique: frozenset[int], independent: frozenset[int]) -> bool:
        km = mask_of(clique)
        return all((sub.rows[v] & km).bit_count() <= 1 for v in independent)

    if ok(part.clique, part.independent):
        return True
    # the split partition is ambiguous on boundary vertices; try single moves
    for v in part.clique:
        k2 = part.clique - {v}
        i2 = part.independent | {v}
        if sub.is_clique(mask_of(k2)) and sub.is_independent(mask_of(i2)) and ok(k2, i2):
            return True
    for v in part.independent:
        k2 = part.clique | {v}
        i2 = part.independent - {v}
        if sub.is_clique(mask_of(k2)) and sub.is_independent(mask_of(i2)) and ok(k2, i2):
            return True
    return False


def verify_certificate(g: Graph, cert: DecompositionCertificate) -> bool:
    """Replay the steps from ``g`` and check the leaves; fully independent of
    the decomposition engine's internal state."""
    rows = list(g.rows)
    alive = g.full_mask()
    last_k: tuple[int, ...] | None = None
    try:
        for step in cert.steps:
            if isinstance(step, CaseTagStep):
                if step.tag not in (CASE_SMALL_CLIQUE, CASE_2P2_IN_S, CASE_S_2P2_FREE):
                    return False
            elif isinstance(step, MaxCliqueStep):
                kmask = mask_of(step.vertices)
                if kmask & ~alive:
                    return False
                cur, idmap = _current_graph(rows, alive)
                if not cur.is_clique(mask_of(idmap[v] for v in step.vertices)):
                    return False
                peo = chordal_peo(cur)
                if peo is None:
                    return False
                if len(max_clique_chordal(cur, peo)) != len(step.vertices):
                    return False
                last_k = step.vertices
            elif isinstance(step, SPartitionStep):
                if last_k is None:
                    return False
                kmask = mask_of(last_k)
                smask_ = mask_of(step.s1) | mask_of(step.s2)
                if (kmask | smask_) != alive or kmask & smask_:
                    return False
                for v in step.s1:
                    if (kmask & ~rows[v]).bit_count() != 1:
                        return False
                for v in step.s2:
                    if (kmask & ~rows[v]).bit_count() != 2:
                        return False
                if any((rows[v] & kmask).bit_count() < 2 for v in step.s1 + step.s2):
                    return False
            elif isinstance(step, VertexDeleteStep):
                dmask = mask_of(step.vertices)
                if dmask & ~alive or not step.vertices:
                    return False
                alive &= ~dmask
            elif isinstance(step, BipartiteComplementStep):
                smask_ = mask_of(step.side_s)
                tmask_ = mask_of(step.side_t)
                if smask_ & tmask_ or (smask_ | tmask_) & ~alive:
                    return False
                for u in bits(smask_):
                    rows[u] ^= tmask_
                for v in bits(tmask_):
                    rows[v] ^= smask_
            elif isinstance(step, BlockSplitStep):
                pass
            else:
                return False
        covered = 0
        for vs, kind in cert.leaves:
            vmask = mask_of(vs)
            if vmask & covered:
                return False
            covered |= vmask
            if not _leaf_test(rows, alive, vs, kind):
                return False
        if covered != alive:
            return False
        # leaves must be mutually disconnected in the final graph
        for vs, _ in cert.leaves:
            vmask = mask_of(vs)
            for u in vs:
                if rows[u] & alive & ~vmask:
                    return False
        return True
    except (ValueError, KeyError, IndexError):
        return False


def _current_graph(rows: list[int], alive: int) -> tuple[Graph, dict[int, int]]:
    vs = bits(alive)
    idmap = {v: i for i, v in enumerate(vs)}
    edges = []
    for u in vs:
        for v in bits(rows[u] & alive):
            if v > u:
                edges.append((idmap[u], idmap[v]))
    return Graph.from_edges(len(vs), edges), idmap


def decompose_blockwise(
    g: Graph,
) -> list[tuple[tuple[int, ...], DecompositionCertificate]]:
    """Split a (not necessarily 2-connected) member into blocks and certify
    each in block-local vertex ids; returns (original block vertices, cert)."""
    from .core import blocks

    if g.n == 0:
        return []
    blks, _ = blocks(g)
    out = []
    for vs, _kind in sorted(blks, key=lambda b: sorted(b[0])):
        sub, idmap = induced_subgraph(g, vs)
        out.append((tuple(sorted(vs)), decompose_cok13_2p1(sub)))
    return out
