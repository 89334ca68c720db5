"""Berge path and cycle certificates and their verifier.

A certificate lists vertices and edge *ids*; the verifier resolves the ids
against whatever hypergraph it is handed (anything with ``get_edge``), so a
certificate can never silently refer to a different edge set.
"""

from __future__ import annotations

from dataclasses import dataclass

from berge.hypergraph import PreconditionError


@dataclass(frozen=True)
class BergePath:
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @property
    def start(self) -> int:
        return self.vertices[0]


@dataclass(frozen=True)
class BergeCycle:
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    def rotated(self, i: int) -> BergeCycle:
        """Same cycle read from position ``i``."""
        return BergeCycle(self.vertices[i:] + self.vertices[:i], self.edge_ids[i:] + self.edge_ids[:i])

    def reversed(self) -> BergeCycle:
        """Same cycle read backwards, still starting at ``vertices[0]``."""
        vs = (self.vertices[0],) + self.vertices[:0:-1]
        es = self.edge_ids[::-1]
        return BergeCycle(vs, es)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    clause: str | None = None
    index: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.clause} at index {self.index}"


_OK = Verdict(True)


def _check_common(h, vertices, edge_ids) -> Verdict:
    seen = set()
    for i, x in enumerate(vertices):
        if x in seen:
            return Verdict(False, "duplicate vertex", i)
        seen.add(x)
    seen = set()
    for i, eid in enumerate(edge_ids):
        if eid in seen:
            return Verdict(False, "duplicate edge", i)
        seen.add(eid)
        if h.get_edge(eid) is None:
            return Verdict(False, "unknown edge", i)
    return _OK


def verify_path(h, p: BergePath) -> Verdict:
    """Check ``p`` against the Berge path definition in ``h``."""
    if len(p.vertices) != len(p.edge_ids) + 1:
        return Verdict(False, "length mismatch", len(p.vertices))
    res = _check_common(h, p.vertices, p.edge_ids)
    if not res:
        return res
    for i, eid in enumerate(p.edge_ids):
        e = h.get_edge(eid)
        if p.vertices[i] not in e or p.vertices[i + 1] not in e:
            return Verdict(False, "pair not in edge", i)
    return _OK


def verify_cycle(h, c: BergeCycle) -> Verdict:
    """Check ``c`` against the Berge cycle definition, wrap-around included."""
    k = len(c.edge_ids)
    if len(c.vertices) != k:
        return Verdict(False, "length mismatch", len(c.vertices))
    if k < 2:
        return Verdict(False, "too short", k)
    res = _check_common(h, c.vertices, c.edge_ids)
    if not res:
        return res
    for i, eid in enumerate(c.edge_ids):
        e = h.get_edge(eid)
        if c.vertices[i] not in e or c.vertices[(i + 1) % k] not in e:
            return Verdict(False, "pair not in edge", i)
    return _OK


def verify(h, cert) -> Verdict:
    if isinstance(cert, BergeCycle):
        return verify_cycle(h, cert)
    return verify_path(h, cert)


def span_of(h, edge_ids) -> set[int]:
    out: set[int] = set()
    for eid in edge_ids:
        out |= h.get_edge(eid)
    return out


def spanned(h, cert: BergePath | BergeCycle) -> frozenset[int]:
    """Union of the certificate's edges in ``h``."""
    res = verify(h, cert)
    if not res:
        raise PreconditionError("unverified certificate", str(res))
    return frozenset(span_of(h, cert.edge_ids))


def trim_path(p: BergePath, k: int) -> BergePath:
    if k > p.length or k < 0:
        raise PreconditionError("trim too long", f"{k} > {p.length}")
    return BergePath(p.vertices[: k + 1], p.edge_ids[:k])


def cycle_to_rooted_path(c: BergeCycle, v: int) -> BergePath:
    """Open the cycle at ``v``: start there and drop the closing edge."""
    if v not in c.vertices:
        raise PreconditionError("vertex not on cycle", str(v))
    rc = c.rotated(c.vertices.index(v))
    return BergePath(rc.vertices, rc.edge_ids[:-1])


def concat(first: BergePath, second: BergePath) -> BergePath:
    """Join two paths where ``first`` ends at ``second``'s start vertex."""
    assert first.vertices[-1] == second.vertices[0]
    return BergePath(first.vertices + second.vertices[1:], first.edge_ids + second.edge_ids)
