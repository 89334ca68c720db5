"""Constructive extraction of Berge paths and cycles of length r+1.

Given a connected r-uniform hypergraph with at least as many edges as
vertices and a start vertex ``v``, :func:`extract` returns either a Berge
path of length r+1 starting at ``v`` or a Berge cycle of length r+1 through
``v``. The algorithm is an induction on r (then on n):

* r = 2: breadth-first tree from ``v``; any non-tree edge closes a triangle
  through ``v`` or yields a path of length 3.
* a cut vertex exists: split there, keep a piece with e >= n, recurse.
* otherwise: drop ``v`` and its least incident edge ``e``, keep a component
  with e >= n, shrink its r-edges to (r-1)-edges while staying simple and
  connected, recurse one level down, and extend the result back through
  ``e`` and ``v``.

Every decision is appended to a trace; :func:`replay` re-runs the algorithm
against a recorded trace and fails on the first divergence.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace
from typing import Any, Callable, Union

from berge.certificates import (
    BergeCycle,
    BergePath,
    concat,
    cycle_to_rooted_path,
    span_of,
    trim_path,
    verify,
)
from berge.hypergraph import (
    Hypergraph,
    PreconditionError,
    WorkingHypergraph,
    bfs_route,
    components,
    connecting_berge_path,
    cut_vertices,
    delete_vertex,
    link_is_bridge,
    split_at_cut_vertex,
)

Certificate = Union[BergePath, BergeCycle]

BRANCH_KINDS = (
    "BaseCaseR2",
    "CutVertex",
    "Shrink",
    "AllSubsetsCycle",
    "DisconnectingEdgeDeleted",
    "Lemma1",
    "RemoteCycleExtension",
)


class DefectError(RuntimeError):
    """A proof branch was exhausted. Never a legal outcome on valid input."""


class ReplayMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class Step:
    """One branch record. ``info`` holds (name, value) pairs in a fixed order."""

    kind: str
    info: tuple[tuple[str, Any], ...] = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, **dict(self.info)}

    @classmethod
    def from_dict(cls, d: dict) -> Step:
        d = dict(d)
        kind = d.pop("kind")
        return cls(kind, tuple((k, tuple(v) if isinstance(v, list) else v) for k, v in d.items()))

    def label(self) -> str:
        if self.kind == "Lemma1":
            return f"Lemma1.case{dict(self.info)['case']}"
        return self.kind


@dataclass(frozen=True)
class ExtractionResult:
    outcome: Certificate
    trace: tuple[Step, ...]

    @property
    def kind(self) -> str:
        return "cycle" if isinstance(self.outcome, BergeCycle) else "path"


@dataclass
class ShrinkOutcome:
    """Result of one shrinking pass.

    ``kind`` is ``"shrunk"`` (``hypergraph`` is (r-1)-uniform),
    ``"all_subsets"`` (``edge`` has every (r-1)-subset present; ``cycle`` runs
    over its vertices) or ``"fragmented"`` (``edge`` was deleted and
    ``hypergraph`` is the piece to continue on). ``state`` is the component as
    it stood when the pass ended.
    """

    kind: str
    state: WorkingHypergraph
    hypergraph: WorkingHypergraph | None = None
    edge: int | None = None
    cycle: BergeCycle | None = None


class _Run:
    def __init__(self, root: Hypergraph, observer=None, expected=None):
        self.root = root
        self.trace: list[Step] = []
        self.observer = observer
        self.expected = expected

    def record(self, kind: str, **info) -> None:
        st = Step(kind, tuple(info.items()))
        if self.expected is not None:
            i = len(self.trace)
            if i >= len(self.expected) or self.expected[i] != st:
                want = self.expected[i] if i < len(self.expected) else None
                raise ReplayMismatch(f"step {i}: recorded {want}, replay produced {st}")
        self.trace.append(st)

    def observe(self, h: WorkingHypergraph) -> None:
        if self.observer is not None:
            self.observer(h)

    def solve(self, w: WorkingHypergraph, v: int, r: int, cuts=None, force_cut=None) -> Certificate:
        """Path of length r+1 from ``v`` or cycle of length r+1 through ``v`` in ``w``."""
        pending: list[BergePath] = []
        while True:
            self.record("Recurse", r=r, n=w.n, m=w.m)
            self.observe(w)
            if r == 2:
                out = self.base_case(w, v)
                break
            if cuts is None:
                cuts = cut_vertices(w)
            if not cuts:
                out = self.main_branch(w, v, r)
                break
            v0 = force_cut if force_cut is not None else min(cuts)
            force_cut = None
            pieces = split_at_cut_vertex(w, v0)
            idx = next((i for i, p in enumerate(pieces) if p.m >= p.n), None)
            if idx is None:
                raise DefectError(f"no piece at cut vertex {v0} has e >= n")
            chosen = pieces[idx]
            self.record("CutVertex", v0=v0, component=idx)
            if v not in chosen.vertices:
                pending.append(connecting_berge_path(w, v, v0))
                v = v0
            assert chosen.n < w.n
            # a cut vertex of the piece is a cut vertex of w; v0 itself is not one
            w, cuts = chosen, (cuts & chosen.vertices) - {v0}
        for conn in reversed(pending):
            if isinstance(out, BergeCycle):
                rooted = cycle_to_rooted_path(out, conn.vertices[-1])
            else:
                rooted = trim_path(out, r)
            out = trim_path(concat(conn, rooted), r + 1)
        return out

    def base_case(self, g: WorkingHypergraph, v: int) -> Certificate:
        depth = {v: 0}
        parent: dict[int, tuple[int, int]] = {}
        order = [v]
        for x in order:
            for eid in sorted(g.incidence[x]):
                (y,) = g.edges[eid] - {x}
                if y in depth:
                    continue
                depth[y] = depth[x] + 1
                parent[y] = (x, eid)
                if depth[y] == 3:
                    self.record("BaseCaseR2", shape="deep")
                    return _tree_path(parent, y)
                order.append(y)
        tree = {pe for _, pe in parent.values()}
        chord = next((eid for eid in sorted(g.edges) if eid not in tree), None)
        if chord is None:
            raise DefectError("graph with e >= n has no non-tree edge")
        a, b = sorted(g.edges[chord], key=lambda x: (depth[x], x))
        if depth[a] == 1 and depth[b] == 1:
            self.record("BaseCaseR2", shape="triangle")
            return BergeCycle((v, a, b), (parent[a][1], chord, parent[b][1]))
        if depth[a] == 0:
            raise DefectError("non-tree edge at the root")
        self.record("BaseCaseR2", shape="chord")
        if depth[a] == 2:
            b, a = a, b
        # b sits at depth 2 (the lesser one if both do); walk down to it and leave by the chord
        p, pe = parent[b]
        return BergePath((v, p, b, a), (parent[p][1], pe, chord))

    def main_branch(self, w: WorkingHypergraph, v: int, r: int) -> Certificate:
        e = min(w.incidence[v])
        h1 = delete_vertex(w, v, e)
        self.observe(h1)
        comps = components(h1)
        idx = next((i for i, c in enumerate(comps) if c.m >= c.n), None)
        if idx is None:
            raise DefectError("no component with e >= n after deleting v")
        self.record("DeleteVertex", v=v, edge=e, component=idx)
        comp = comps[idx]
        final_sets: dict[int, frozenset[int]] = {}
        while True:
            res = shrink_component(comp, r, record=self.record)
            final_sets.update(res.state.edges)
            self.observe(res.state)
            if res.kind != "fragmented":
                break
            assert res.hypergraph.n < comp.n
            comp = res.hypergraph
        if res.kind == "all_subsets":
            return self.extend_cycle(w, v, e, res.cycle)
        hstar = res.hypergraph
        self.observe(hstar)
        ev = w.edges[e] - {v}
        on_e = sorted(ev & hstar.vertices)
        route = None
        if on_e:
            z = on_e[0]
        else:
            # pieces were split off while shrinking and none of e survived;
            # walk from e to the kept piece through everything else
            rest = {i: s for i, s in final_sets.items() if i not in hstar.edges}
            inc: dict[int, set[int]] = {}
            for i, s in rest.items():
                for x in s:
                    inc.setdefault(x, set()).add(i)
            route = bfs_route(SimpleNamespace(incidence=inc, edges=rest), ev, hstar.vertices)
            if route is None:
                raise DefectError("kept piece unreachable from e")
            z = route[0][-1]
        sub = lift(self.solve(hstar, z, r - 1), hstar)
        if isinstance(sub, BergeCycle):
            return self.extend_cycle(w, v, e, sub)
        if route is None:
            return BergePath((v,) + sub.vertices, (e,) + sub.edge_ids)
        self.record("Approach", length=len(route[1]) + 1)
        lead = BergePath((v,) + tuple(route[0]), (e,) + tuple(route[1]))
        return trim_path(concat(lead, sub), r + 1)

    def extend_cycle(self, w, v: int, e: int, c: BergeCycle) -> Certificate:
        if span_of(w, c.edge_ids) & (w.edges[e] - {v}):
            cert, case = _lemma1(w, v, e, c)
            self.record("Lemma1", case=case)
            return cert
        cert = _remote(w, v, e, c)
        self.record("RemoteCycleExtension")
        return cert


def _tree_path(parent, y) -> BergePath:
    verts, eids = [y], []
    while verts[-1] in parent:
        x, eid = parent[verts[-1]]
        verts.append(x)
        eids.append(eid)
    return BergePath(tuple(verts[::-1]), tuple(eids[::-1]))


def _cycle_from(c: BergeCycle, u: int, h) -> BergePath:
    """Walk all of ``c`` from an off-cycle vertex ``u`` lying in one of its edges."""
    i = next(i for i, eid in enumerate(c.edge_ids) if u in h.get_edge(eid))
    rc = c.rotated(i)
    return BergePath((u,) + rc.vertices[1:] + (rc.vertices[0],), rc.edge_ids)


def _lemma1(h, v: int, e: int, c: BergeCycle) -> tuple[Certificate, int]:
    ev = h.get_edge(e) - {v}
    on_cycle = set(c.vertices)
    meet = span_of(h, c.edge_ids) & ev
    off = sorted(meet - on_cycle)
    if off:
        tail = _cycle_from(c, off[0], h)
        return BergePath((v,) + tail.vertices, (e,) + tail.edge_ids), 1
    rc = c.rotated(c.vertices.index(min(meet)))
    allowed = on_cycle | {v}
    for oc in (rc, rc.reversed()):
        extra = sorted(h.get_edge(oc.edge_ids[-1]) - allowed)
        if extra:
            return BergePath((v,) + oc.vertices + (extra[0],), (e,) + oc.edge_ids), 2
    for oc in (rc, rc.reversed()):
        if v in h.get_edge(oc.edge_ids[-1]):
            return BergeCycle((v,) + oc.vertices, (e,) + oc.edge_ids), 3
    raise DefectError("cycle extension: no case applies")


def _remote(w: WorkingHypergraph, v: int, e: int, c: BergeCycle) -> BergePath:
    r = c.length
    targets = span_of(w, c.edge_ids) - {v}
    route = bfs_route(w, w.edges[e] - {v}, targets, skip_edges={e}, skip_vertex=v)
    if route is None:
        raise DefectError("cycle unreachable from e with v removed")
    verts, eids = route
    if set(eids) & set(c.edge_ids):
        raise DefectError("approach reuses a cycle edge")
    u = verts[-1]
    if u in c.vertices:
        tail = cycle_to_rooted_path(c, u)
    else:
        tail = _cycle_from(c, u, w)
    lead = BergePath((v,) + tuple(verts), (e,) + tuple(eids))
    return trim_path(concat(lead, tail), r + 1)


def shrink_component(comp: WorkingHypergraph, r: int, record=None) -> ShrinkOutcome:
    """Reduce every r-edge of ``comp`` to an (r-1)-edge, or stop at a degenerate edge.

    Each r-edge, in id order, loses its least vertex whose removal keeps the
    component connected and simple. When no vertex qualifies the edge is
    either disconnecting at every vertex (deleted; the pass reports the piece
    to continue on) or has all its (r-1)-subsets present (a cycle of length r
    on its vertices is returned). The input is not modified.
    """
    rec = record or (lambda *a, **k: None)
    s = comp.copy()
    present = {fs: eid for eid, fs in s.edges.items()}
    for f in sorted(i for i, fs in s.edges.items() if len(fs) == r):
        fs = s.edges[f]
        chosen = None
        for u in sorted(fs):
            if fs - {u} not in present and not link_is_bridge(s, u, f):
                chosen = u
                break
        if chosen is not None:
            del present[fs]
            present[fs - {chosen}] = f
            s.replace_edge(f, fs - {chosen})
            rec("Shrink", edge=f, vertex=chosen)
            continue
        verts = sorted(fs)
        if all(link_is_bridge(s, u, f) for u in verts):
            t = s.copy()
            t.remove_edge(f)
            parts = components(t)
            idx = next((i for i, p in enumerate(parts) if p.m >= p.n), None)
            if idx is None:
                raise DefectError(f"no piece with e >= n after deleting edge {f}")
            rec("DisconnectingEdgeDeleted", edge=f, component=idx)
            return ShrinkOutcome("fragmented", s, parts[idx], f)
        if all(fs - {u} in present for u in verts):
            # edge i joins verts[i], verts[i+1]; the subset missing verts[i+2] holds both
            k = len(verts)
            eids = tuple(present[fs - {verts[(i + 2) % k]}] for i in range(k))
            rec("AllSubsetsCycle", edge=f)
            return ShrinkOutcome("all_subsets", s, edge=f, cycle=BergeCycle(tuple(verts), eids))
        raise DefectError(f"edge {f}: no removable vertex, yet not degenerate")
    return ShrinkOutcome("shrunk", s, hypergraph=s)


def lift(cert: Certificate, provenance: WorkingHypergraph) -> Certificate:
    """Rename working edge ids to the root edge ids they came from."""
    eids = tuple(provenance.origin[i] for i in cert.edge_ids)
    return type(cert)(cert.vertices, eids)


def _check_input(h: Hypergraph, v: int | None = None, need: str = "e>=n") -> int:
    r = h.r
    if r is None:
        raise PreconditionError("not uniform")
    if r < 2:
        raise PreconditionError("r < 2")
    if v is not None and not (0 <= v < h.n):
        raise PreconditionError("vertex out of range", str(v))
    if need == "e>=n":
        if not h.is_connected():
            raise PreconditionError("not connected")
        if h.m < h.n:
            raise PreconditionError("e < n")
    elif h.m <= h.n:
        raise PreconditionError("e <= n")
    return r


def _finish(h: Hypergraph, run: _Run, out: Certificate) -> ExtractionResult:
    res = verify(h, out)
    if not res:
        raise DefectError(f"certificate fails verification: {res}")
    return ExtractionResult(out, tuple(run.trace))


def extract(
    h: Hypergraph, v: int, observer: Callable[[WorkingHypergraph], None] | None = None
) -> ExtractionResult:
    """Berge path of length r+1 from ``v``, or Berge cycle of length r+1 through ``v``.

    ``h`` must be simple, r-uniform (r >= 2), connected, with e(h) >= n(h).
    ``observer`` is called with every intermediate working hypergraph.
    """
    r = _check_input(h, v)
    run = _Run(h, observer)
    return _finish(h, run, run.solve(WorkingHypergraph.from_hypergraph(h), v, r))


def replay(h: Hypergraph, v: int, trace) -> ExtractionResult:
    """Re-run :func:`extract`, checking each branch against ``trace``."""
    r = _check_input(h, v)
    run = _Run(h, expected=tuple(trace))
    out = run.solve(WorkingHypergraph.from_hypergraph(h), v, r)
    if len(run.trace) != len(trace):
        raise ReplayMismatch(f"trace has {len(trace)} steps, replay produced {len(run.trace)}")
    return _finish(h, run, out)


def extract_theorem2(h: Hypergraph) -> ExtractionResult:
    """Berge path of length exactly r+1 in any r-uniform ``h`` with e(h) > n(h).

    Works in the least component with more edges than vertices, extracts from
    its least vertex and, if that gives a cycle, opens it into a path.
    """
    r = _check_input(h, need="e>n")
    comp = next(c for c in components(WorkingHypergraph.from_hypergraph(h)) if c.m > c.n)
    run = _Run(h)
    v = min(comp.vertices)
    out = run.solve(comp, v, r)
    if isinstance(out, BergePath):
        return _finish(h, run, trim_path(out, r + 1))
    spanned = span_of(comp, out.edge_ids)
    off = sorted(spanned - set(out.vertices))
    if off:
        run.record("Promote", via="span", vertex=off[0])
        return _finish(h, run, _cycle_from(out, off[0], comp))
    # the cycle is a complete (r+1)-clique; another edge must touch it
    on = set(out.vertices)
    used = set(out.edge_ids)
    g = next((i for i in sorted(comp.edges) if i not in used and comp.edges[i] & on), None)
    if g is None:
        raise DefectError("complete cycle with no attached edge")
    y = min(comp.edges[g] - on)
    x = min(comp.edges[g] & on)
    run.record("Promote", via="attach", edge=g)
    tail = cycle_to_rooted_path(out, x)
    return _finish(h, run, BergePath((y,) + tail.vertices, (g,) + tail.edge_ids))


def base_case_r2(h: Hypergraph, v: int) -> ExtractionResult:
    r = _check_input(h, v)
    if r != 2:
        raise PreconditionError("not a graph", f"r = {r}")
    run = _Run(h)
    return _finish(h, run, run.base_case(WorkingHypergraph.from_hypergraph(h), v))


def cut_vertex_branch(h: Hypergraph, v: int, v0: int) -> ExtractionResult:
    """Run the extraction with the first split forced at cut vertex ``v0``."""
    r = _check_input(h, v)
    w = WorkingHypergraph.from_hypergraph(h)
    cuts = cut_vertices(w)
    if v0 not in cuts:
        raise PreconditionError("not a cut vertex", str(v0))
    run = _Run(h)
    return _finish(h, run, run.solve(w, v, r, cuts=cuts, force_cut=v0))


def _check_extension_input(h, v, e, c):
    s = h.get_edge(e)
    if s is None or v not in s:
        raise PreconditionError("edge does not hold v")
    if not verify(h, c):
        raise PreconditionError("unverified cycle")
    if v in c.vertices or e in c.edge_ids:
        raise PreconditionError("cycle meets v or e")
    return s - {v}


def lemma1_extend(h, v: int, e: int, c: BergeCycle) -> ExtractionResult:
    """Extend a length-r cycle avoiding ``v`` whose span meets ``e - {v}``."""
    ev = _check_extension_input(h, v, e, c)
    if not span_of(h, c.edge_ids) & ev:
        raise PreconditionError("span misses e")
    cert, case = _lemma1(h, v, e, c)
    return ExtractionResult(cert, (Step("Lemma1", (("case", case),)),))


def remote_cycle_extend(h, v: int, e: int, c: BergeCycle) -> ExtractionResult:
    """Reach a length-r cycle from ``v`` via ``e`` when ``e`` misses its span.

    ``h`` must be connected with ``v`` not a cut vertex.
    """
    ev = _check_extension_input(h, v, e, c)
    if span_of(h, c.edge_ids) & ev:
        raise PreconditionError("span meets e")
    w = h if isinstance(h, WorkingHypergraph) else WorkingHypergraph.from_hypergraph(h)
    return ExtractionResult(_remote(w, v, e, c), (Step("RemoteCycleExtension"),))


def finish_after_recursion(h, v: int, e: int, z: int, sub: Certificate) -> ExtractionResult:
    """Turn a lower-level result at ``z`` (a vertex of ``e``) into one at ``v``."""
    s = h.get_edge(e)
    if s is None or v not in s or z not in s or z == v:
        raise PreconditionError("z must lie in e - {v}")
    if e in sub.edge_ids or v in sub.vertices:
        raise PreconditionError("sub-result uses v or e")
    if isinstance(sub, BergePath):
        if sub.start != z:
            raise PreconditionError("sub-path does not start at z")
        return ExtractionResult(BergePath((v,) + sub.vertices, (e,) + sub.edge_ids), ())
    return lemma1_extend(h, v, e, sub)
