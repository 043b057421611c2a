"""Three-label expression construction for distance-hereditary graphs.

A pruning sequence is replayed in reverse to grow a split tree whose internal
components are stars and triangles: re-adding a pendant hangs a star with the
anchor at its centre, a false twin hangs a star with the anchor and the twin
as its leaves, and a true twin hangs a triangle.  Every tree edge then cuts
the graph along a complete bipartite "boundary x boundary" interface, so a
piece can be assembled with its boundary on label 2, everything else on
label 1, and label 3 as staging: at a triangle component boundaries pool, at
a star entered at its centre they pool without joins, and at a star entered
at a leaf only the centre's boundary survives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Graph
from .expr import CwExpression, Join, Leaf, Rename, Union
from .recognize import (
    PRUNE_FALSE_TWIN,
    PRUNE_PENDANT,
    PRUNE_TRUE_TWIN,
    PruningSequence,
)

# ports are ("v", vertex_id) or ("e", node_id, port_index)
_STAR = "star"  # port 0 is the centre
_CLIQUE = "clique"


@dataclass
class _Node:
    kind: str
    ports: list[tuple]
    ident: int = field(default=-1)


def _split_tree(seq: PruningSequence) -> tuple[dict[int, _Node], dict[int, tuple[int, int]]]:
    nodes: dict[int, _Node] = {}
    loc: dict[int, tuple[int, int]] = {}
    if not seq.steps:
        raise ValueError("split tree needs at least two vertices")
    base = seq.steps[-1]
    nodes[0] = _Node(_CLIQUE, [("v", seq.last), ("v", base.vertex)], 0)
    loc[seq.last] = (0, 0)
    loc[base.vertex] = (0, 1)
    next_id = 1
    for step in reversed(seq.steps[:-1]):
        cnode, cport = loc[step.anchor]
        nid = next_id
        next_id += 1
        if step.reason == PRUNE_PENDANT:
            node = _Node(_STAR, [("v", step.anchor), ("v", step.vertex), ("e", cnode, cport)], nid)
            loc[step.anchor] = (nid, 0)
            loc[step.vertex] = (nid, 1)
        elif step.reason == PRUNE_FALSE_TWIN:
            node = _Node(_STAR, [("e", cnode, cport), ("v", step.anchor), ("v", step.vertex)], nid)
            loc[step.anchor] = (nid, 1)
            loc[step.vertex] = (nid, 2)
        elif step.reason == PRUNE_TRUE_TWIN:
            node = _Node(_CLIQUE, [("e", cnode, cport), ("v", step.anchor), ("v", step.vertex)], nid)
            loc[step.anchor] = (nid, 1)
            loc[step.vertex] = (nid, 2)
        else:
            raise ValueError(f"unknown prune reason {step.reason!r}")
        nodes[nid] = node
        back_port = 2 if step.reason == PRUNE_PENDANT else 0
        nodes[cnode].ports[cport] = ("e", nid, back_port)
    return nodes, loc


def _piece(nodes: dict[int, _Node], node_id: int, enter: int) -> CwExpression:
    """Expression for the subtree behind (node_id, enter); boundary labelled 2."""
    node = nodes[node_id]

    def sub(idx: int) -> CwExpression:
        port = node.ports[idx]
        if port[0] == "v":
            return Leaf(2, port[1])
        return _piece(nodes, port[1], port[2])

    others = [i for i in range(len(node.ports)) if i != enter]
    if node.kind == _CLIQUE:
        acc = sub(others[0])
        for idx in others[1:]:
            acc = Rename(3, 2, Join(2, 3, Union(acc, Rename(2, 3, sub(idx)))))
        return acc
    if enter == 0:
        # entered at the centre: leaf pieces pool without joins
        acc = sub(others[0])
        for idx in others[1:]:
            acc = Union(acc, sub(idx))
        return acc
    # entered at a leaf: join every other leaf piece to the centre and retire it
    acc = sub(0)
    for idx in others:
        if idx == 0:
            continue
        acc = Rename(3, 1, Join(2, 3, Union(acc, Rename(2, 3, sub(idx)))))
    return acc


def dh_component_expr(g: Graph, seq: PruningSequence) -> CwExpression:
    """A width <= 3 expression for a connected distance-hereditary graph,
    built by reverse replay of its pruning sequence."""
    if g.n == 1:
        return Leaf(1, seq.last)
    nodes, loc = _split_tree(seq)
    rn, rp = loc[seq.last]
    rest = _piece(nodes, rn, rp)
    return Join(2, 3, Union(rest, Leaf(3, seq.last)))
