"""Hypergraph model and the structural queries used by the extractor.

Two representations live here:

``Hypergraph``
    Immutable, simple hypergraph on vertices ``0..n-1``. Edge ids are tuple
    indices and never change.

``WorkingHypergraph``
    Mutable structure used mid-recursion. Edges may have mixed sizes, and each
    keeps the id of the root edge it descends from, so a certificate found in
    a transformed hypergraph is also a certificate in the root.

Connectivity is computed on the bipartite vertex/edge incidence structure.
All iteration is in ascending id order so results are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class PreconditionError(ValueError):
    """Input violates an operation's precondition.

    ``clause`` is a short machine-readable reason such as ``"not connected"``.
    """

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        edges = tuple(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise PreconditionError("bad vertex count", str(self.n))
        seen = set()
        for i, e in enumerate(edges):
            if not e:
                raise PreconditionError("empty edge", f"edge {i}")
            if min(e) < 0 or max(e) >= self.n:
                raise PreconditionError("vertex out of range", f"edge {i}")
            if e in seen:
                raise PreconditionError("not simple", f"edge {i} repeats {sorted(e)}")
            seen.add(e)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
        return cls(n, tuple(frozenset(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def r(self) -> int | None:
        """Uniformity witness: the common edge size, or None if sizes differ."""
        sizes = {len(e) for e in self.edges}
        if len(sizes) == 1:
            return sizes.pop()
        return None

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for x in e:
                inc[x].append(i)
        return tuple(tuple(ids) for ids in inc)

    def get_edge(self, eid: int) -> frozenset[int] | None:
        if isinstance(eid, int) and 0 <= eid < len(self.edges):
            return self.edges[eid]
        return None

    def is_connected(self) -> bool:
        return self.n > 0 and len(components(WorkingHypergraph.from_hypergraph(self))) == 1

    def canonical(self) -> Hypergraph:
        """Same hypergraph with edges sorted lexicographically (ids renumbered)."""
        return Hypergraph(self.n, tuple(sorted(self.edges, key=sorted)))


@dataclass
class WorkingHypergraph:
    """Mutable hypergraph whose edges remember their root edge id.

    ``edges`` maps edge id to its current vertex set and ``origin`` maps edge id
    to the id of the root edge it was derived from.
    """

    root: Hypergraph
    vertices: set[int]
    edges: dict[int, frozenset[int]]
    origin: dict[int, int]
    deleted_vertex: int | None = None
    incidence: dict[int, set[int]] = field(init=False, repr=False)

    def __post_init__(self):
        inc: dict[int, set[int]] = {x: set() for x in self.vertices}
        for eid, s in self.edges.items():
            for x in s:
                inc[x].add(eid)
        self.incidence = inc

    @classmethod
    def from_hypergraph(cls, h: Hypergraph) -> WorkingHypergraph:
        return cls(
            root=h,
            vertices=set(range(h.n)),
            edges=dict(enumerate(h.edges)),
            origin={i: i for i in range(h.m)},
        )

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def get_edge(self, eid: int) -> frozenset[int] | None:
        return self.edges.get(eid)

    def sizes(self) -> set[int]:
        return {len(s) for s in self.edges.values()}

    def sub(self, vertices: set[int], edge_ids: Iterable[int]) -> WorkingHypergraph:
        return WorkingHypergraph(
            root=self.root,
            vertices=set(vertices),
            edges={i: self.edges[i] for i in edge_ids},
            origin={i: self.origin[i] for i in edge_ids},
            deleted_vertex=self.deleted_vertex,
        )

    def copy(self) -> WorkingHypergraph:
        return self.sub(self.vertices, self.edges)

    def replace_edge(self, eid: int, new: frozenset[int]) -> None:
        old = self.edges[eid]
        for x in old - new:
            self.incidence[x].discard(eid)
        for x in new - old:
            self.incidence[x].add(eid)
        self.edges[eid] = new

    def remove_edge(self, eid: int) -> None:
        for x in self.edges.pop(eid):
            self.incidence[x].discard(eid)

    def check_invariants(self) -> None:
        """Raise AssertionError if the working-edge invariants are broken."""
        seen: dict[frozenset[int], int] = {}
        origins = set()
        for eid, s in self.edges.items():
            assert len(s) >= 2, f"edge {eid} shrank below 2 vertices"
            assert s <= self.vertices, f"edge {eid} leaves the vertex set"
            assert s not in seen, f"edges {seen.get(s)} and {eid} coincide"
            seen[s] = eid
            o = self.origin[eid]
            assert o not in origins, f"origin {o} used twice"
            origins.add(o)
            assert s <= self.root.edges[o], f"edge {eid} is not inside its origin"


def components(h: WorkingHypergraph) -> list[WorkingHypergraph]:
    """Connected components, ordered by their least vertex."""
    parent = {x: x for x in h.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in h.edges.values():
        it = iter(s)
        a = find(next(it))
        for y in it:
            b = find(y)
            if a != b:
                if b < a:
                    a, b = b, a
                parent[b] = a
    groups: dict[int, set[int]] = {}
    for x in h.vertices:
        groups.setdefault(find(x), set()).add(x)
    edge_groups: dict[int, list[int]] = {root: [] for root in groups}
    for eid, s in h.edges.items():
        edge_groups[find(next(iter(s)))].append(eid)
    order = sorted(groups, key=lambda root: min(groups[root]))
    return [h.sub(groups[root], edge_groups[root]) for root in order]


def delete_vertex(h: WorkingHypergraph, v: int, removed_edge: int) -> WorkingHypergraph:
    """Drop ``removed_edge`` and then delete ``v`` from the vertex set and every edge."""
    if v not in h.vertices:
        raise PreconditionError("vertex absent", str(v))
    if removed_edge not in h.edges or v not in h.edges[removed_edge]:
        raise PreconditionError("edge absent", f"{removed_edge} does not hold {v}")
    edges = {i: (s - {v} if v in s else s) for i, s in h.edges.items() if i != removed_edge}
    return WorkingHypergraph(
        root=h.root,
        vertices=h.vertices - {v},
        edges=edges,
        origin={i: h.origin[i] for i in edges},
        deleted_vertex=v,
    )


def cut_vertices(h: WorkingHypergraph) -> set[int]:
    """Vertices whose deletion (from the vertex set and every edge) disconnects ``h``.

    These are the vertex-side articulation points of the incidence graph;
    found with an iterative Hopcroft-Tarjan low-link pass.
    """
    if h.n == 0:
        return set()
    start = min(h.vertices)
    # incidence-graph nodes: vertex x -> ("v", x); edge i -> ("e", i)
    disc: dict[tuple[str, int], int] = {}
    low: dict[tuple[str, int], int] = {}
    cuts: set[int] = set()
    root = ("v", start)
    disc[root] = low[root] = 0
    counter = 1
    root_children = 0

    def neighbours(node):
        kind, x = node
        if kind == "v":
            return [("e", i) for i in sorted(h.incidence[x])]
        return [("v", y) for y in sorted(h.edges[x])]

    stack = [(root, None, iter(neighbours(root)))]
    while stack:
        node, parent, it = stack[-1]
        advanced = False
        for nxt in it:
            if nxt == parent:
                continue
            if nxt in disc:
                low[node] = min(low[node], disc[nxt])
                continue
            disc[nxt] = low[nxt] = counter
            counter += 1
            if node == root:
                root_children += 1
            stack.append((nxt, node, iter(neighbours(nxt))))
            advanced = True
            break
        if advanced:
            continue
        stack.pop()
        if parent is not None:
            low[parent] = min(low[parent], low[node])
            if parent != root and parent[0] == "v" and low[node] >= disc[parent]:
                cuts.add(parent[1])
    if len(disc) < h.n + h.m:
        raise PreconditionError("not connected")
    if root_children >= 2:
        cuts.add(start)
    return cuts


def split_at_cut_vertex(h: WorkingHypergraph, v0: int) -> list[WorkingHypergraph]:
    """The pieces of ``h`` hanging off ``v0``, each with ``v0`` put back.

    Ordered by least vertex other than ``v0``.
    """
    if v0 not in h.vertices:
        raise PreconditionError("vertex absent", str(v0))
    rest = h.vertices - {v0}
    parent = {x: x for x in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in h.edges.values():
        others = [x for x in s if x != v0]
        a = find(others[0])
        for y in others[1:]:
            b = find(y)
            if a != b:
                parent[b] = a
    groups: dict[int, set[int]] = {}
    for x in rest:
        groups.setdefault(find(x), set()).add(x)
    if len(groups) < 2:
        raise PreconditionError("not a cut vertex", str(v0))
    edge_groups: dict[int, list[int]] = {g: [] for g in groups}
    for eid, s in h.edges.items():
        edge_groups[find(next(x for x in s if x != v0))].append(eid)
    pieces = []
    for g in sorted(groups, key=lambda g: min(groups[g])):
        pieces.append(h.sub(groups[g] | {v0}, edge_groups[g]))
    return pieces


def bfs_route(
    h,
    sources: Iterable[int],
    targets: set[int],
    *,
    skip_edges: frozenset[int] | set[int] = frozenset(),
    skip_vertex: int | None = None,
) -> tuple[list[int], list[int]] | None:
    """Shortest alternating route from any source to the nearest target.

    ``h`` is anything with ``incidence`` (vertex -> edge ids) and ``edges``
    (edge id -> vertex set). Returns ``(vertices, edge_ids)`` or None when no
    target is reachable. ``skip_vertex`` is treated as absent from every edge.
    """
    prev: dict[int, tuple[int, int] | None] = {}
    queue: deque[int] = deque()
    for s in sorted(sources):
        if s in prev or s == skip_vertex:
            continue
        prev[s] = None
        if s in targets:
            return [s], []
        queue.append(s)
    used_edges: set[int] = set()
    while queue:
        x = queue.popleft()
        # a source may sit in no edge at all of a partial incidence map
        for eid in sorted(h.incidence.get(x, ())):
            if eid in skip_edges or eid in used_edges:
                continue
            used_edges.add(eid)
            for y in sorted(h.edges[eid]):
                if y in prev or y == skip_vertex:
                    continue
                prev[y] = (x, eid)
                if y in targets:
                    verts, eids = [y], []
                    while prev[verts[-1]] is not None:
                        px, pe = prev[verts[-1]]
                        eids.append(pe)
                        verts.append(px)
                    return verts[::-1], eids[::-1]
                queue.append(y)
    return None


def connecting_berge_path(h: WorkingHypergraph, a: int, b: int):
    """Shortest Berge path from ``a`` to ``b``."""
    from berge.certificates import BergePath

    if a not in h.vertices or b not in h.vertices:
        raise PreconditionError("vertex absent", f"{a} or {b}")
    if a == b:
        raise PreconditionError("endpoints coincide", str(a))
    route = bfs_route(h, [a], {b})
    if route is None:
        raise PreconditionError("not connected", f"no route {a} -> {b}")
    return BergePath(tuple(route[0]), tuple(route[1]))


def link_is_bridge(h: WorkingHypergraph, u: int, f: int) -> bool:
    """True iff taking ``u`` out of edge ``f`` disconnects ``h``.

    Runs two breadth-first searches in lockstep, one from ``u`` and one from
    ``f``, over the incidence graph minus the ``u``-``f`` link. If either side
    runs dry first the link was a bridge; if they meet it was not. The cost is
    bounded by the smaller side, which keeps repeated shrinking cheap.
    """
    inc, edges = h.incidence, h.edges
    # vertex x encoded as x, edge i as ~i
    seen_a = {u}
    seen_b = {~f}
    qa: deque[int] = deque([u])
    qb: deque[int] = deque([~f])

    def expand(node):
        if node >= 0:
            for i in inc[node]:
                if not (node == u and i == f):
                    yield ~i
        else:
            i = ~node
            for y in edges[i]:
                if not (i == f and y == u):
                    yield y

    while qa and qb:
        for q, mine, other in ((qa, seen_a, seen_b), (qb, seen_b, seen_a)):
            node = q.popleft()
            for nxt in expand(node):
                if nxt in other:
                    return False
                if nxt not in mine:
                    mine.add(nxt)
                    q.append(nxt)
            if not q:
                return True
    return True
