"""Immutable simple undirected graphs on dense vertex ids, stored as bit rows.

Vertex ids are always 0..n-1.  The adjacency row of a vertex is a Python int
used as a bitmask, which keeps all set operations (neighbourhood tests,
complementation, clique checks) cheap and allocation-free.  Everything in this
module is a pure function over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 4096


def _bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph with adjacency stored as one bitmask per vertex.

    Invariants: the adjacency relation is symmetric, the diagonal is empty and
    vertex ids are dense.  ``Graph.__post_init__`` enforces all three, so every
    constructed value is valid.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.n > MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} exceeds cap {MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError("adjacency rows do not match vertex count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row of vertex {u} mentions out-of-range vertices")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
        for u in range(self.n):
            for v in _bits(self.rows[u]):
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    # -- construction -------------------------------------------------

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << v) for v in range(n)))

    # -- basic queries -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def neighbors(self, u: int) -> list[int]:
        return bits(self.rows[u])

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.rows[u] >> (u + 1) << (u + 1)
            for v in _bits(row):
                out.append((u, v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_clique(self, mask: int) -> bool:
        """True iff the vertices of ``mask`` are pairwise adjacent."""
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if rest & ~self.rows[v]:
                return False
        return True

    def is_independent(self, mask: int) -> bool:
        for v in _bits(mask):
            if self.rows[v] & mask:
                return False
        return True

    def components(self) -> list[int]:
        """Connected components as vertex masks, ordered by smallest member."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(comp)
            seen |= comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


# -- transformation operators ------------------------------------------


def complement(g: Graph) -> Graph:
    """Complement on the same vertex ids; an involution."""
    full = g.full_mask()
    return Graph(g.n, tuple((full ^ row ^ (1 << v)) for v, row in enumerate(g.rows)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; the vertex ids of ``h`` are shifted up by ``g.n``."""
    rows = list(g.rows) + [row << g.n for row in h.rows]
    return Graph(g.n + h.n, tuple(rows))


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the complement of ``s``, ids compacted.

    Returns the new graph together with the old-id -> new-id map of the
    surviving vertices, so callers can keep referring to them unambiguously.
    """
    smask = mask_of(s)
    if smask & ~g.full_mask():
        raise ValueError("vertex id out of range")
    keep = [v for v in range(g.n) if not smask >> v & 1]
    idmap = {old: new for new, old in enumerate(keep)}
    rows = []
    for old in keep:
        row = 0
        for w in _bits(g.rows[old] & ~smask):
            row |= 1 << idmap[w]
        rows.append(row)
    return Graph(len(keep), tuple(rows)), idmap


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``s``; companion of :func:`delete_vertices`."""
    smask = mask_of(s)
    return delete_vertices(g, bits(g.full_mask() & ~smask))


def subgraph_complement(g: Graph, s: Iterable[int]) -> Graph:
    """Flip every adjacency with both ends in ``s``; an involution for fixed s."""
    smask = mask_of(s)
    if smask & ~g.full_mask():
        raise ValueError("vertex id out of range")
    rows = list(g.rows)
    for v in _bits(smask):
        rows[v] ^= smask & ~(1 << v)
    return Graph(g.n, tuple(rows))


def bipartite_complement(g: Graph, s: Iterable[int], t: Iterable[int]) -> Graph:
    """Flip exactly the adjacencies with one end in ``s`` and the other in ``t``."""
    smask = mask_of(s)
    tmask = mask_of(t)
    if smask & tmask:
        raise ValueError("the two sides must be disjoint")
    if (smask | tmask) & ~g.full_mask():
        raise ValueError("vertex id out of range")
    rows = list(g.rows)
    for v in _bits(smask):
        rows[v] ^= tmask
    for v in _bits(tmask):
        rows[v] ^= smask
    return Graph(g.n, tuple(rows))


# -- blocks ------------------------------------------------------------

BLOCK_2CONNECTED = "2-connected"
BLOCK_BRIDGE = "bridge"
BLOCK_ISOLATED = "isolated"


def blocks(g: Graph) -> tuple[list[tuple[frozenset[int], str]], frozenset[int]]:
    """Blocks of ``g`` plus its cut-vertex set.

    A block is a maximal 2-connected subgraph, a bridge, or an isolated
    vertex.  Iterative Hopcroft-Tarjan DFS; blocks are reported with the
    vertex set of the component and a kind tag.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut = set()
    out: list[tuple[frozenset[int], str]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        if g.rows[root] == 0:
            out.append((frozenset([root]), BLOCK_ISOLATED))
            disc[root] = timer
            timer += 1
            continue
        stack = [(root, -1, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    block_vs = set()
                    while True:
                        e = edge_stack.pop()
                        block_vs.update(e)
                        if e == (u, v):
                            break
                    kind = BLOCK_BRIDGE if len(block_vs) == 2 else BLOCK_2CONNECTED
                    out.append((frozenset(block_vs), kind))

    # a vertex lying in two or more blocks is exactly a cut-vertex
    seen_in: dict[int, int] = {}
    for vs, _ in out:
        for v in vs:
            seen_in[v] = seen_in.get(v, 0) + 1
    for v, c in seen_in.items():
        if c >= 2:
            cut.add(v)
    return out, frozenset(cut)


def is_two_connected(g: Graph) -> bool:
    """At least three vertices, connected, and without cut-vertices."""
    if g.n < 3 or not g.is_connected():
        return False
    _, cuts = blocks(g)
    return not cuts
