"""Seeded random graph generators for test corpora.

Determinism contract: identical GenSpec values produce byte-identical graphs
on every platform.  The generator is SplitMix64, a pinned 64-bit counter
PRNG (state advances by the golden-gamma constant, output is the finalising
mix), so no stdlib randomness is involved anywhere.

Chordal graphs come from the subtree intersection model: sample a random
host tree, one connected random subtree per vertex, and connect two vertices
iff their subtrees meet.  Split graphs get a random clique/independent split
with attachment probability equal to the density.  H-free chordal sampling
is by rejection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import catalog_lookup
from .core import Graph
from .iso import induced_subgraph_isomorphic

MODEL_CHORDAL = "chordal"
MODEL_SPLIT = "split"
MODEL_HFREE_CHORDAL = "hfree-chordal"

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """The standard splitmix64 sequence; deterministic across platforms."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform in [0, n) by rejection to avoid modulo bias."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            x = self.next_u64()
            if x <= limit:
                return x % n

    def rand01(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.randrange(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def sample_without_replacement(self, n: int, k: int) -> list[int]:
        pool = list(range(n))
        self.shuffle(pool)
        return sorted(pool[:k])

    def binomial(self, m: int, p: float) -> int:
        """Inverse-transform binomial from a single uniform draw."""
        if p <= 0.0 or m == 0:
            return 0
        if p >= 1.0:
            return m
        u = self.rand01()
        pmf = (1.0 - p) ** m
        cdf = pmf
        k = 0
        ratio = p / (1.0 - p)
        while u > cdf and k < m:
            pmf *= (m - k) / (k + 1) * ratio
            k += 1
            cdf += pmf
        return k


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    density: float
    forbidden: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.model not in (MODEL_CHORDAL, MODEL_SPLIT, MODEL_HFREE_CHORDAL):
            raise ValueError(f"unknown model {self.model!r}")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if self.n < 0:
            raise ValueError("n must be non-negative")


def _random_tree(rng: SplitMix64, h: int) -> list[list[int]]:
    """Random labelled tree as adjacency lists (attach each node to a random
    earlier one)."""
    adj: list[list[int]] = [[] for _ in range(h)]
    for v in range(1, h):
        u = rng.randrange(v)
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _random_subtree(rng: SplitMix64, adj: list[list[int]], root: int, size: int) -> int:
    """Grow a connected subtree mask of ``size`` nodes from ``root``."""
    chosen = 1 << root
    frontier = [w for w in adj[root]]
    count = 1
    while count < size and frontier:
        idx = rng.randrange(len(frontier))
        v = frontier.pop(idx)
        if chosen >> v & 1:
            continue
        chosen |= 1 << v
        count += 1
        for w in adj[v]:
            if not chosen >> w & 1:
                frontier.append(w)
    return chosen


def gen_chordal(spec: GenSpec) -> Graph:
    if spec.model != MODEL_CHORDAL:
        raise ValueError("gen_chordal needs the chordal model")
    n = spec.n
    if n == 0:
        return Graph.empty(0)
    rng = SplitMix64(spec.seed)
    h = max(1, 2 * n)
    adj = _random_tree(rng, h)
    roots = rng.sample_without_replacement(h, n)
    rng.shuffle(roots)
    masks = []
    for v in range(n):
        # subtree size interpolates between a single node and the host tree
        extra = rng.binomial(h - 1, spec.density)
        masks.append(_random_subtree(rng, adj, roots[v], 1 + extra))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if masks[u] & masks[v]:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def gen_split(spec: GenSpec) -> Graph:
    if spec.model != MODEL_SPLIT:
        raise ValueError("gen_split needs the split model")
    n = spec.n
    rng = SplitMix64(spec.seed)
    if n == 0:
        return Graph.empty(0)
    k_size = rng.randrange(n + 1)
    ids = list(range(n))
    rng.shuffle(ids)
    clique = ids[:k_size]
    indep = ids[k_size:]
    edges = []
    for i in range(len(clique)):
        for j in range(i + 1, len(clique)):
            edges.append((clique[i], clique[j]))
    for u in indep:
        for w in clique:
            if rng.rand01() < spec.density:
                edges.append((u, w))
    return Graph.from_edges(n, edges)


def gen_hfree_chordal(spec: GenSpec, attempts: int = 200) -> Graph | None:
    """Rejection-sample chordal graphs until the forbidden pattern is absent;
    None when the attempt budget runs out."""
    if spec.model != MODEL_HFREE_CHORDAL:
        raise ValueError("gen_hfree_chordal needs the hfree-chordal model")
    if not spec.forbidden:
        raise ValueError("gen_hfree_chordal needs a forbidden catalog name")
    pattern = catalog_lookup(spec.forbidden)
    for trial in range(attempts):
        sub = GenSpec(MODEL_CHORDAL, spec.n, spec.density, None, (spec.seed * 1_000_003 + trial) & _MASK64)
        g = gen_chordal(sub)
        if induced_subgraph_isomorphic(pattern, g) is None:
            return g
    return None
