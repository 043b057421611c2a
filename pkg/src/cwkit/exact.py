"""Exact decision "cw(G) <= k" with an expression witness, for small graphs.

Forward reachability over solver states.  A state is the meaning of a
subexpression: the set S of built vertices, the partition of S into at most k
label classes, and the set of edges already built.  Transitions are leaf
addition (new singleton class), rename (merge two classes), join between two
classes (permitted only when every cross pair is an edge of G, and marking
all of them built), and union of two states on disjoint built sets.

Two feasibility prunes are applied when classes form or merge:

  A. two vertices sharing a class must have identical neighbourhoods outside
     S (classes never split, and future joins treat them identically);
  B. a class may not contain an unbuilt edge of G (joins need two distinct
     labels, so an edge inside a class can never be built later).

States are canonicalized (classes sorted by smallest member) and memoized;
the built edge set is part of the key because identical labellings with
different built edges are genuinely different futures.  Witnesses are
reconstructed through parent links on first reach.  Exponential by design;
the hard vertex cap keeps it honest.
"""

from __future__ import annotations

from .core import Graph, bits
from .expr import CwExpression, Join, Leaf, Rename, Union, validate

MAX_N = 12

# parent records: ("leaf", v, parent_key_or_None)
#                 ("join", ci, cj, parent_key)
#                 ("ren", ci, cj, parent_key)
#                 ("uni", mask1, key1, mask2, key2)

_Classes = tuple[int, ...]
_Key = tuple[_Classes, int]


def _canon(classes: list[int]) -> _Classes:
    return tuple(sorted(classes, key=lambda m: m & -m))


class _Search:
    def __init__(self, g: Graph, k: int):
        self.g = g
        self.k = k
        self.n = g.n
        self.edge_index: dict[tuple[int, int], int] = {}
        for idx, (u, v) in enumerate(g.edges()):
            self.edge_index[(u, v)] = idx
            self.edge_index[(v, u)] = idx
        self.all_edges = (1 << len(g.edges())) - 1
        self.full = g.full_mask()
        # states[mask][key] = parent record
        self.states: list[dict[_Key, tuple]] = [dict() for _ in range(1 << self.n)]

    def _edge_bit(self, u: int, v: int) -> int:
        return 1 << self.edge_index[(u, v)]

    def _class_ok_outside(self, cls: int, mask: int) -> bool:
        """Prune A for one class against the complement of ``mask``."""
        out = ~mask
        members = bits(cls)
        ref = self.g.rows[members[0]] & out
        for v in members[1:]:
            if self.g.rows[v] & out != ref:
                return False
        return True

    def _merged_ok(self, ca: int, cb: int, mask: int, built: int) -> bool:
        """Prunes A and B for the union of two existing classes."""
        ra = self.g.rows[bits(ca)[0]] & ~mask
        rb = self.g.rows[bits(cb)[0]] & ~mask
        if ra != rb:
            return False
        for u in bits(ca):
            row = self.g.rows[u] & cb
            for v in bits(row):
                if not built & self._edge_bit(u, v):
                    return False
        return True

    def _pair_alive(self, ca: int, cb: int, built: int) -> bool:
        """Prune C: a class pair with an unbuilt edge across it must be fully
        adjacent, otherwise the joining operation is forever illegal."""
        nonedge = False
        unbuilt = False
        for u in bits(ca):
            if cb & ~self.g.rows[u]:
                nonedge = True
            for v in bits(cb & self.g.rows[u]):
                if not built & self._edge_bit(u, v):
                    unbuilt = True
                    break
            if nonedge and unbuilt:
                return False
        return not (nonedge and unbuilt)

    def _all_pairs_alive(self, classes: _Classes, built: int) -> bool:
        for a in range(len(classes)):
            for b in range(a + 1, len(classes)):
                if not self._pair_alive(classes[a], classes[b], built):
                    return False
        return True

    def _matchings(self, cl1, cl2, mask: int, built: int, min_size: int):
        """All partial injective class matchings whose pairs pass the merge
        prunes and that fuse at least ``min_size`` pairs."""
        compat = {ca: [cb for cb in cl2 if self._merged_ok(ca, cb, mask, built)] for ca in cl1}
        c1 = list(cl1)
        out: list[tuple[tuple[int, int], ...]] = []

        def rec(i: int, used: set[int], cur: list[tuple[int, int]]):
            if len(cur) + (len(c1) - i) < min_size:
                return
            if i == len(c1):
                out.append(tuple(cur))
                return
            ca = c1[i]
            rec(i + 1, used, cur)
            for cb in compat[ca]:
                if cb not in used:
                    cur.append((ca, cb))
                    used.add(cb)
                    rec(i + 1, used, cur)
                    used.discard(cb)
                    cur.pop()

        rec(0, set(), [])
        return out

    def run(self) -> CwExpression | None:
        if self.n == 0:
            raise ValueError("no expression represents the empty graph")
        order = sorted(range(1, 1 << self.n), key=lambda m: (m.bit_count(), m))
        for v in range(self.n):
            self.states[1 << v][((1 << v,), 0)] = ("leaf", v, None)
        for mask in order:
            table = self.states[mask]
            # pull leaf additions from mask minus one vertex
            for v in bits(mask):
                prev_mask = mask & ~(1 << v)
                if not prev_mask:
                    continue
                vbit = 1 << v
                for key in self.states[prev_mask]:
                    classes, built = key
                    if len(classes) + 1 > self.k:
                        continue
                    if not all(self._pair_alive(vbit, c, built) for c in classes):
                        continue
                    nkey = (_canon(list(classes) + [vbit]), built)
                    if nkey not in table:
                        table[nkey] = ("leaf", v, key)
            # pull unions over submask pairs; requiring the low bit on one
            # side visits each unordered pair once.  Two classes may fuse at
            # a union (the sides reuse a label), so all partial injective
            # matchings that pass the merge prunes are enumerated.
            low = mask & -mask
            sub = (mask - 1) & mask
            while sub:
                if sub & low:
                    other = mask ^ sub
                    t1, t2 = self.states[sub], self.states[other]
                    if t1 and t2:
                        for key1 in t1:
                            cl1, b1 = key1
                            for key2 in t2:
                                cl2, b2 = key2
                                need = len(cl1) + len(cl2) - self.k
                                built = b1 | b2
                                for match in self._matchings(cl1, cl2, mask, built, max(0, need)):
                                    lookup = dict(match)
                                    matched_right = set(lookup.values())
                                    merged = [
                                        (ca | lookup[ca]) if ca in lookup else ca
                                        for ca in cl1
                                    ] + [c for c in cl2 if c not in matched_right]
                                    canon = _canon(merged)
                                    nkey = (canon, built)
                                    if nkey not in table and self._all_pairs_alive(canon, built):
                                        table[nkey] = ("uni", sub, key1, other, key2, match)
                sub = (sub - 1) & mask
            # close under joins and renames within this mask
            queue = list(table.keys())
            while queue:
                key = queue.pop()
                classes, built = key
                m = len(classes)
                for a in range(m):
                    ca = classes[a]
                    for b in range(a + 1, m):
                        cb = classes[b]
                        # join: every cross pair must be a G-edge, some new
                        new_bits = 0
                        feasible = True
                        for u in bits(ca):
                            if cb & ~self.g.rows[u]:
                                feasible = False
                                break
                            for v in bits(cb):
                                eb = self._edge_bit(u, v)
                                if not built & eb:
                                    new_bits |= eb
                        if feasible and new_bits:
                            nkey = (classes, built | new_bits)
                            if nkey not in table:
                                table[nkey] = ("join", ca, cb, key)
                                queue.append(nkey)
                        # rename: merge the two classes
                        if self._merged_ok(ca, cb, mask, built):
                            rest = [classes[t] for t in range(m) if t not in (a, b)]
                            merged_cls = ca | cb
                            if all(self._pair_alive(merged_cls, c, built) for c in rest):
                                nkey = (_canon(rest + [merged_cls]), built)
                                if nkey not in table:
                                    table[nkey] = ("ren", ca, cb, key)
                                    queue.append(nkey)
            if mask == self.full:
                for key in table:
                    if key[1] == self.all_edges:
                        return self._reconstruct(self.full, key)
        return None

    def _reconstruct(self, mask: int, key: _Key) -> CwExpression:
        label_of = {cls: i + 1 for i, cls in enumerate(key[0])}
        return self._rebuild(mask, key, label_of)

    def _rebuild(self, mask: int, key: _Key, label_of: dict[int, int]) -> CwExpression:
        record = self.states[mask][key]
        op = record[0]
        if op == "leaf":
            _, v, pkey = record
            leaf = Leaf(label_of[1 << v], v)
            if pkey is None:
                return leaf
            sub = {c: l for c, l in label_of.items() if c != 1 << v}
            return Union(self._rebuild(mask & ~(1 << v), pkey, sub), leaf)
        if op == "join":
            _, ca, cb, pkey = record
            return Join(label_of[ca], label_of[cb], self._rebuild(mask, pkey, label_of))
        if op == "ren":
            _, ca, cb, pkey = record
            merged = ca | cb
            target = label_of[merged]
            used = set(label_of.values())
            free = next(l for l in range(1, self.k + 1) if l not in used)
            sub = {c: l for c, l in label_of.items() if c != merged}
            sub[cb] = target
            sub[ca] = free
            return Rename(free, target, self._rebuild(mask, pkey, sub))
        if op == "uni":
            _, m1, key1, m2, key2, match = record
            lookup = dict(match)
            rev = {cb: ca for ca, cb in match}
            sub1 = {ca: label_of[ca | lookup.get(ca, 0)] for ca in key1[0]}
            sub2 = {cb: label_of[cb | rev.get(cb, 0)] for cb in key2[0]}
            return Union(self._rebuild(m1, key1, sub1), self._rebuild(m2, key2, sub2))
        raise AssertionError(f"unknown parent record {op!r}")


def decide_cw_le(g: Graph, k: int) -> CwExpression | None:
    """A k-expression of ``g`` iff cw(g) <= k; exact, witness validated."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if g.n > MAX_N:
        raise ValueError(f"exact solver is capped at n <= {MAX_N}")
    if g.n == 0:
        raise ValueError("no expression represents the empty graph")
    expr = _Search(g, k).run()
    if expr is not None:
        assert validate(expr, g), "solver produced an invalid witness"
    return expr


def exact_cw(g: Graph, kmax: int) -> int | None:
    """Minimum k <= kmax admitting a k-expression, else None ("exceeds kmax")."""
    for k in range(1, kmax + 1):
        if decide_cw_le(g, k) is not None:
            return k
    return None
