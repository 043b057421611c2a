"""Exact induced-subgraph isomorphism by deterministic backtracking.

The search maps pattern vertices one at a time in a fixed
most-constrained-first order, so returned witnesses are reproducible.
Candidates are pruned by degree and by a sorted neighbour-degree domination
test before the exact adjacency consistency check.
"""

from __future__ import annotations

from .core import Graph


def _pattern_order(h: Graph) -> list[int]:
    """Static order: seed with the max-degree vertex, then greedily append the
    vertex with the most already-placed neighbours (ties: degree, then id)."""
    if h.n == 0:
        return []
    order = [max(range(h.n), key=lambda v: (h.degree(v), -v))]
    placed = {order[0]}
    while len(order) < h.n:
        best = None
        best_key = None
        for v in range(h.n):
            if v in placed:
                continue
            back = sum(1 for w in h.neighbors(v) if w in placed)
            key = (back, h.degree(v), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


def _neighbor_degree_sig(g: Graph, v: int) -> list[int]:
    return sorted((g.degree(w) for w in g.neighbors(v)), reverse=True)


def _sig_dominates(big: list[int], small: list[int]) -> bool:
    """Greedy check that the sorted list ``big`` pointwise covers ``small``."""
    it = iter(big)
    for need in small:
        for have in it:
            if have >= need:
                break
        else:
            return False
    return True


def induced_subgraph_isomorphic(h: Graph, g: Graph) -> dict[int, int] | None:
    """An injective map witnessing that ``h`` is an induced subgraph of ``g``.

    Exact: returns a map iff one exists, else None.  The map sends pattern
    vertex ids to host vertex ids and is the lexicographically first witness
    along the fixed search order.
    """
    if h.n > g.n:
        return None
    if h.n == 0:
        return {}
    hsig = {u: _neighbor_degree_sig(h, u) for u in range(h.n)}
    gsig = {v: _neighbor_degree_sig(g, v) for v in range(g.n)}
    candidates: dict[int, list[int]] = {}
    for u in range(h.n):
        cands = [
            v
            for v in range(g.n)
            if g.degree(v) >= h.degree(u) and _sig_dominates(gsig[v], hsig[u])
        ]
        if not cands:
            return None
        candidates[u] = cands

    order = _pattern_order(h)
    mapping: dict[int, int] = {}
    used = [False] * g.n

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        u = order[idx]
        for v in candidates[u]:
            if used[v]:
                continue
            ok = True
            for u2, v2 in mapping.items():
                if h.has_edge(u, u2) != g.has_edge(v, v2):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used[v] = True
            if extend(idx + 1):
                return True
            del mapping[u]
            used[v] = False
        return False

    if extend(0):
        return dict(sorted(mapping.items()))
    return None


def contains_induced(g: Graph, h: Graph) -> bool:
    return induced_subgraph_isomorphic(h, g) is not None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(map(g.degree, range(g.n))) != sorted(map(h.degree, range(h.n))):
        return False
    return induced_subgraph_isomorphic(h, g) is not None


def is_complete_graph(g: Graph) -> bool:
    return g.num_edges == g.n * (g.n - 1) // 2


def is_edgeless(g: Graph) -> bool:
    return g.num_edges == 0


__all__ = [
    "induced_subgraph_isomorphic",
    "contains_induced",
    "is_isomorphic",
    "is_complete_graph",
    "is_edgeless",
]
