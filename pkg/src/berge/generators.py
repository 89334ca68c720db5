"""Instance families: extremal blocks, glued block chains, random hypergraphs.

Randomness comes from SplitMix64 only, seeded explicitly. State advance:
``state += 0x9E3779B97F4A7C15 (mod 2**64)``, output is the standard
SplitMix64 finaliser of the new state. Bounded draws use rejection on the
top multiple of the bound, so streams are reproducible in any language.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, comb

from berge.hypergraph import Hypergraph

MASK = (1 << 64) - 1


class GenerationError(ValueError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next()
            if x < limit:
                return x % bound

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def sample(self, xs, k: int) -> list:
        """``k`` distinct items of ``xs``, in draw order.

        Small draws from large pools pick indices and redraw repeats; otherwise
        a partial Fisher-Yates pass over a copy.
        """
        if len(xs) > 4 * k:
            picked: list[int] = []
            while len(picked) < k:
                j = self.below(len(xs))
                if j not in picked:
                    picked.append(j)
            return [xs[j] for j in picked]
        pool = list(xs)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def _emit(n, edges) -> Hypergraph:
    return Hypergraph(n, tuple(sorted((frozenset(e) for e in edges), key=sorted)))


def complete_blocks(r: int, block_size: int, blocks: int) -> Hypergraph:
    """Disjoint union of ``blocks`` complete r-uniform hypergraphs on ``block_size`` vertices."""
    if r < 2 or block_size < r or blocks < 1:
        raise GenerationError(f"bad parameters r={r} block_size={block_size} blocks={blocks}")
    edges = []
    for b in range(blocks):
        base = b * block_size
        edges.extend(combinations(range(base, base + block_size), r))
    return _emit(blocks * block_size, edges)


def glued_blocks(r: int, block_size: int, blocks: int) -> Hypergraph:
    """Chain of complete blocks where block i and i+1 share exactly one vertex."""
    if r < 2 or block_size < r or blocks < 1:
        raise GenerationError(f"bad parameters r={r} block_size={block_size} blocks={blocks}")
    step = block_size - 1
    edges = []
    for b in range(blocks):
        edges.extend(combinations(range(b * step, b * step + block_size), r))
    return _emit(blocks * block_size - (blocks - 1), edges)


def random_connected(r: int, n: int, m: int, seed: int) -> Hypergraph:
    """Simple connected r-uniform hypergraph with exactly ``m`` edges.

    A random spanning chain is laid first (each edge brings in 1..r-1 new
    vertices and meets the part built so far), then the remaining edges are
    drawn uniformly.
    """
    if r < 2 or n < r:
        raise GenerationError(f"need 2 <= r <= n, got r={r} n={n}")
    lo, hi = ceil((n - 1) / (r - 1)), comb(n, r)
    if not lo <= m <= hi:
        raise GenerationError(f"m={m} outside [{lo}, {hi}]")
    rng = SplitMix64(seed)
    order = list(range(n))
    rng.shuffle(order)
    covered = [order[0]]
    nxt = 1
    edges: set[frozenset[int]] = set()
    while nxt < n:
        todo = n - nxt
        left = m - len(edges)
        ks = [
            k
            for k in range(1, min(r - 1, todo) + 1)
            if r - k <= len(covered) and ceil((todo - k) / (r - 1)) <= left - 1
        ]
        k = ks[rng.below(len(ks))]
        new = order[nxt : nxt + k]
        edges.add(frozenset(rng.sample(covered, r - k) + new))
        covered.extend(new)
        nxt += k
    _fill(rng, r, n, m, edges)
    return _emit(n, edges)


def random_uniform(r: int, n: int, m: int, seed: int) -> Hypergraph:
    """``m`` distinct uniformly drawn r-subsets of ``range(n)``; connectivity not enforced."""
    if r < 2 or n < r or not 0 <= m <= comb(n, r):
        raise GenerationError(f"bad parameters r={r} n={n} m={m}")
    rng = SplitMix64(seed)
    edges: set[frozenset[int]] = set()
    _fill(rng, r, n, m, edges)
    return _emit(n, edges)


def _fill(rng: SplitMix64, r: int, n: int, m: int, edges: set) -> None:
    total = comb(n, r)
    if 2 * m > total:
        rest = [frozenset(c) for c in combinations(range(n), r) if frozenset(c) not in edges]
        edges.update(rng.sample(rest, m - len(edges)))
        return
    attempts = 0
    while len(edges) < m:
        attempts += 1
        if attempts > 1000 * m + 1000:
            raise GenerationError(f"rejection sampling stalled at {len(edges)}/{m} edges")
        edges.add(frozenset(rng.sample(range(n), r)))


FAMILIES = ("complete_blocks", "glued_blocks", "random_connected", "random_surplus")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    r: int
    params: dict = field(default_factory=dict)

    def build(self) -> Hypergraph:
        p = self.params
        if self.family == "complete_blocks":
            return complete_blocks(self.r, p["block_size"], p["blocks"])
        if self.family == "glued_blocks":
            return glued_blocks(self.r, p["block_size"], p["blocks"])
        if self.family == "random_connected":
            return random_connected(self.r, p["n"], p["m"], p.get("seed", 0))
        if self.family == "random_surplus":
            return random_uniform(self.r, p["n"], p["m"], p.get("seed", 0))
        raise GenerationError(f"unknown family {self.family!r}")
