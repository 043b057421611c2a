"""Bounded-label expression construction for chordal graphs via clique trees.

The clique tree (junction tree of maximal cliques) is rooted, and every
vertex is created at the highest bag containing it.  A subtree piece exposes
its vertices grouped into classes by their pending adjacency: the set of
not-yet-created bag vertices they still have to be joined to.  Pendings are
subsets of the child separator, every separator is a clique, and pieces of
different children share no edges, so a bag is assembled by interleaving two
actions: creating a bag vertex (staged on a fresh label, joined to every
class that pends on it) and merging a child piece (classes with equal
pendings fuse; the rest are joined to already-created targets and then
folded).  Bag vertices still pended by unmerged children keep an individual
label until their last pending child arrives.

The number of simultaneously alive classes depends on the action order, so
each bag plans its order by a memoized search minimising the peak, with a
greedy fallback for very wide bags.  The resulting width is checked by the
caller against the clique-number bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Graph, bits, mask_of
from .expr import CwExpression, Join, Leaf, Rename, Union
from .recognize import Peo, chordal_peo, is_valid_peo


# ----------------------------------------------------------------------
# clique tree construction


def maximal_cliques_chordal(g: Graph, peo: Peo) -> list[int]:
    """Maximal cliques as masks: candidates v + later neighbours, filtered."""
    pos = {v: i for i, v in enumerate(peo.order)}
    cands = set()
    for i, v in enumerate(peo.order):
        m = 1 << v
        for w in g.neighbors(v):
            if pos[w] > i:
                m |= 1 << w
        cands.add(m)
    out = []
    for m in cands:
        if not any(m != other and m & other == m for other in cands):
            out.append(m)
    out.sort(key=lambda m: tuple(bits(m)))
    return out


def clique_tree(bags: list[int]) -> list[tuple[int, int]]:
    """Max-weight spanning tree on separator sizes (a valid junction tree).

    Prim from bag 0 with deterministic tie-breaking; assumes the bags cover a
    connected graph.
    """
    q = len(bags)
    if q <= 1:
        return []
    in_tree = {0}
    edges = []
    while len(in_tree) < q:
        best = None
        for j in range(q):
            if j in in_tree:
                continue
            for i in sorted(in_tree):
                w = (bags[i] & bags[j]).bit_count()
                key = (w, -i, -j)
                if best is None or key > best[0]:
                    best = (key, i, j)
        _, i, j = best
        edges.append((i, j))
        in_tree.add(j)
    return edges


# ----------------------------------------------------------------------
# per-bag order planning

_CAP_STATES = 250_000


def _plan_bag(
    w_verts: tuple[int, ...],
    parent_sep: frozenset[int],
    child_sigs: list[frozenset[frozenset[int]]],
) -> list[tuple[str, int]]:
    """Action order ("create", vertex) / ("merge", child index) minimising the
    peak number of simultaneously alive classes."""
    groups: dict[frozenset[frozenset[int]], list[int]] = {}
    for idx, sigs in enumerate(child_sigs):
        groups.setdefault(sigs, []).append(idx)
    gkeys = sorted(groups, key=lambda s: sorted(tuple(sorted(p)) for p in s))
    gmembers = [groups[k] for k in gkeys]
    gtotals = [len(m) for m in gmembers]
    gpend = [frozenset(v for p in k for v in p) for k in gkeys]
    wset = set(w_verts)

    def class_count(cmask: int, rem: tuple[int, ...]) -> int:
        created = {w_verts[i] for i in range(len(w_verts)) if cmask >> i & 1}
        residuals = set()
        retired = False
        identities = 0
        for gi in range(len(gkeys)):
            if rem[gi] < gtotals[gi]:
                for p in gkeys[gi]:
                    residuals.add(p - created)
        for w in created:
            if any(rem[gi] > 0 and w in gpend[gi] for gi in range(len(gkeys))):
                identities += 1
            else:
                retired = True
        if retired:
            residuals.add(frozenset((wset - created)) | parent_sep)
        return len(residuals), residuals, identities

    def transient_merge(gi: int, cmask: int, rem: tuple[int, ...]) -> int:
        created = {w_verts[i] for i in range(len(w_verts)) if cmask >> i & 1}
        base, residuals, identities = class_count(cmask, rem)
        extra = 0
        for p in gkeys[gi]:
            if (p & created) or (p not in residuals):
                extra += 1
        return base + identities + extra

    memo: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[str, int] | None]] = {}
    visits = [0]

    def solve(cmask: int, rem: tuple[int, ...]) -> tuple[int, tuple[str, int] | None]:
        key = (cmask, rem)
        if key in memo:
            return memo[key]
        visits[0] += 1
        if visits[0] > _CAP_STATES:
            raise _PlanOverflow()
        if cmask == (1 << len(w_verts)) - 1 and all(r == 0 for r in rem):
            base, _, identities = class_count(cmask, rem)
            memo[key] = (base + identities, None)
            return memo[key]
        best: tuple[int, tuple[str, int] | None] | None = None
        base, _, identities = class_count(cmask, rem)
        for i in range(len(w_verts)):
            if cmask >> i & 1:
                continue
            t = base + identities + 1
            sub, _ = solve(cmask | (1 << i), rem)
            peak = max(t, sub)
            if best is None or peak < best[0]:
                best = (peak, ("create", i))
        for gi in range(len(gkeys)):
            if rem[gi] == 0:
                continue
            t = transient_merge(gi, cmask, rem)
            rem2 = tuple(r - 1 if j == gi else r for j, r in enumerate(rem))
            sub, _ = solve(cmask, rem2)
            peak = max(t, sub)
            if best is None or peak < best[0]:
                best = (peak, ("group", gi))
        memo[key] = best
        return best

    def greedy() -> list[tuple[str, int]]:
        cmask = 0
        rem = list(gtotals)
        plan: list[tuple[str, int]] = []
        while cmask != (1 << len(w_verts)) - 1 or any(rem):
            base, _, identities = class_count(cmask, tuple(rem))
            options: list[tuple[int, int, tuple[str, int]]] = []
            for i in range(len(w_verts)):
                if not cmask >> i & 1:
                    options.append((base + identities + 1, 0, ("create", i)))
            for gi in range(len(gkeys)):
                if rem[gi]:
                    options.append(
                        (transient_merge(gi, cmask, tuple(rem)), 1, ("group", gi))
                    )
            options.sort()
            _, _, act = options[0]
            plan.append(act)
            if act[0] == "create":
                cmask |= 1 << act[1]
            else:
                rem[act[1]] -= 1
        return plan

    try:
        plan: list[tuple[str, int]] = []
        cmask = 0
        rem = tuple(gtotals)
        solve(cmask, rem)
        while True:
            _, act = memo[(cmask, rem)]
            if act is None:
                break
            plan.append(act)
            if act[0] == "create":
                cmask |= 1 << act[1]
            else:
                rem = tuple(r - 1 if j == act[1] else r for j, r in enumerate(rem))
    except _PlanOverflow:
        plan = greedy()

    # expand group actions to concrete children, creates to vertex ids
    queues = [list(m) for m in gmembers]
    out: list[tuple[str, int]] = []
    for kind, arg in plan:
        if kind == "create":
            out.append(("create", w_verts[arg]))
        else:
            out.append(("merge", queues[arg].pop(0)))
    return out


class _PlanOverflow(Exception):
    pass


# ----------------------------------------------------------------------
# execution


class _LabelPool:
    def __init__(self) -> None:
        self.in_use: set[int] = set()
        self.peak = 0

    def alloc(self) -> int:
        l = 1
        while l in self.in_use:
            l += 1
        self.in_use.add(l)
        self.peak = max(self.peak, len(self.in_use))
        return l

    def free(self, l: int) -> None:
        self.in_use.discard(l)


def _retarget(expr: CwExpression, mapping: dict[int, int], alive: set[int]) -> CwExpression:
    """Apply an injective relabelling of the currently alive labels by
    stacking renames, never transiently fusing two alive classes."""
    pending = {s: t for s, t in mapping.items() if s != t}
    alive_now = set(alive)
    guard = 0
    while pending:
        guard += 1
        if guard > 10_000:
            raise AssertionError("retarget did not terminate")
        progressed = False
        for s in sorted(pending):
            t = pending[s]
            if t not in alive_now:
                expr = Rename(s, t, expr)
                alive_now.discard(s)
                alive_now.add(t)
                del pending[s]
                progressed = True
                break
        if progressed:
            continue
        # every target is alive: a cycle; park one class on a spare label
        s = min(pending)
        spare = 1
        blocked = alive_now | set(pending.values())
        while spare in blocked:
            spare += 1
        expr = Rename(s, spare, expr)
        alive_now.discard(s)
        alive_now.add(spare)
        pending[spare] = pending.pop(s)
    return expr


@dataclass
class _Piece:
    expr: CwExpression
    classes: dict[frozenset[int], int]  # pending set -> label


class CliqueTreeBuilder:
    """Builds an expression for one connected chordal graph."""

    def __init__(self, g: Graph):
        self.g = g
        peo = chordal_peo(g)
        if peo is None:
            raise ValueError("input graph is not chordal")
        self.peo = peo
        self.bags = maximal_cliques_chordal(g, peo)
        edges = clique_tree(self.bags)
        self.adj: dict[int, list[int]] = {i: [] for i in range(len(self.bags))}
        for i, j in edges:
            self.adj[i].append(j)
            self.adj[j].append(i)
        self.width_peak = 0

    def build(self) -> CwExpression:
        piece = self._process(0, -1)
        assert set(piece.classes) <= {frozenset()}, "root left pending classes"
        return piece.expr

    def _process(self, bag_idx: int, parent_idx: int) -> _Piece:
        bag = self.bags[bag_idx]
        parent_sep: frozenset[int] = (
            frozenset(bits(bag & self.bags[parent_idx])) if parent_idx >= 0 else frozenset()
        )
        children = [j for j in self.adj[bag_idx] if j != parent_idx]
        kid_pieces = [self._process(c, bag_idx) for c in children]
        w_verts = tuple(sorted(bits(bag & ~mask_of(parent_sep))))
        plan = _plan_bag(
            w_verts, parent_sep, [frozenset(p.classes.keys()) for p in kid_pieces]
        )
        return self._execute(bag_idx, parent_sep, w_verts, kid_pieces, plan)

    def _execute(
        self,
        bag_idx: int,
        parent_sep: frozenset[int],
        w_verts: tuple[int, ...],
        kid_pieces: list[_Piece],
        plan: list[tuple[str, int]],
    ) -> _Piece:
        pool = _LabelPool()
        acc: CwExpression | None = None
        classes: dict[frozenset[int], int] = {}
        identity: dict[int, int] = {}
        created: set[int] = set()
        merged: set[int] = set()
        kid_pend = [frozenset(v for p in piece.classes for v in p) for piece in kid_pieces]

        def retire_ready() -> None:
            nonlocal acc
            for w in sorted(identity):
                if any(i not in merged and w in kid_pend[i] for i in range(len(kid_pieces))):
                    continue
                lab = identity.pop(w)
                sig = frozenset(set(w_verts) - created) | parent_sep
                if sig in classes:
                    acc = Rename(lab, classes[sig], acc)
                    pool.free(lab)
                else:
                    classes[sig] = lab

        for kind, arg in plan:
            if kind == "create":
                w = arg
                l = pool.alloc()
                leaf = Leaf(l, w)
                acc = leaf if acc is None else Union(acc, leaf)
                for p in sorted(classes, key=lambda p: classes[p]):
                    if w in p:
                        acc = Join(l, classes[p], acc)
                for w2 in sorted(identity):
                    # earlier created bag vertices are all adjacent to w
                    acc = Join(l, identity[w2], acc)
                new_classes: dict[frozenset[int], int] = {}
                for p in sorted(classes, key=lambda p: classes[p]):
                    lab = classes[p]
                    p2 = p - {w}
                    if p2 in new_classes:
                        acc = Rename(lab, new_classes[p2], acc)
                        pool.free(lab)
                    else:
                        new_classes[p2] = lab
                classes = new_classes
                created.add(w)
                if any(
                    i not in merged and w in kid_pend[i] for i in range(len(kid_pieces))
                ):
                    identity[w] = l
                else:
                    # the bag is a clique, so w pends on every uncreated bag vertex
                    sig = frozenset(set(w_verts) - created) | parent_sep
                    if sig in classes:
                        acc = Rename(l, classes[sig], acc)
                        pool.free(l)
                    else:
                        classes[sig] = l
                retire_ready()
            else:
                piece = kid_pieces[arg]
                mapping: dict[int, int] = {}
                transients: list[tuple[frozenset[int], int]] = []
                for p in sorted(piece.classes, key=lambda p: piece.classes[p]):
                    lc = piece.classes[p]
                    if not (p & created) and p in classes:
                        mapping[lc] = classes[p]
                    else:
                        t = pool.alloc()
                        mapping[lc] = t
                        transients.append((p, t))
                child_expr = _retarget(piece.expr, mapping, set(piece.classes.values()))
                acc = child_expr if acc is None else Union(acc, child_expr)
                for p, t in transients:
                    for w in sorted(p & created):
                        assert w in identity, "created target must still be individual"
                        acc = Join(t, identity[w], acc)
                    p2 = p - created
                    if p2 in classes:
                        acc = Rename(t, classes[p2], acc)
                        pool.free(t)
                    else:
                        classes[p2] = t
                merged.add(arg)
                retire_ready()

        assert not identity, "identity classes left after processing"
        assert created == set(w_verts)
        assert all(p <= parent_sep for p in classes), "pending outside the separator"
        self.width_peak = max(self.width_peak, pool.peak)
        return _Piece(acc, classes)
