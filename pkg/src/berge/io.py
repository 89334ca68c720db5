"""Hypergraph text files and certificate JSON.

Hypergraph file::

    # comment
    r n m
    v v v        (one edge per line, 0-based ids, ascending)

``r`` is 0 for a non-uniform hypergraph. Edge ids are line order, so a file
must not be reordered once certificates refer to it.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from berge.certificates import BergeCycle, BergePath
from berge.extractor import ExtractionResult, Step
from berge.hypergraph import Hypergraph, PreconditionError


class FormatError(ValueError):
    pass


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("missing header")
    try:
        r, n, m = (int(t) for t in lines[0].split())
        edges = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"bad token: {exc}") from None
    if len(edges) != m:
        raise FormatError(f"header says {m} edges, found {len(edges)}")
    for i, e in enumerate(edges):
        if len(set(e)) != len(e):
            raise FormatError(f"edge {i} repeats a vertex")
        if r and len(e) != r:
            raise FormatError(f"edge {i} has {len(e)} vertices, header says r={r}")
    try:
        return Hypergraph.from_edges(n, edges)
    except PreconditionError as exc:
        raise FormatError(str(exc)) from None


def serialize_hypergraph(h: Hypergraph) -> str:
    out = [f"{h.r or 0} {h.n} {h.m}"]
    out.extend(" ".join(map(str, sorted(e))) for e in h.edges)
    return "\n".join(out) + "\n"


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def certificate_dict(h: Hypergraph, res: ExtractionResult) -> dict:
    cert = res.outcome
    d = {
        "kind": res.kind,
        "r": h.r,
        "length": cert.length,
    }
    if isinstance(cert, BergePath):
        d["start_vertex"] = cert.start
    d["vertices"] = list(cert.vertices)
    d["edge_ids"] = list(cert.edge_ids)
    d["edges"] = [sorted(h.edges[i]) for i in cert.edge_ids]
    d["trace"] = [s.to_dict() for s in res.trace]
    return d


def dump_certificate(h: Hypergraph, res: ExtractionResult) -> str:
    return json.dumps(certificate_dict(h, res), indent=1, sort_keys=False) + "\n"


def load_certificate(text: str):
    """Parse certificate JSON into ``(certificate, claims, trace)``.

    ``claims`` keeps the declared length, start vertex and resolved edges so a
    verifier can check them against the hypergraph.
    """
    try:
        d = json.loads(text)
        kind = d["kind"]
        verts = tuple(int(x) for x in d["vertices"])
        eids = tuple(int(x) for x in d["edge_ids"])
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad certificate: {exc}") from None
    if kind == "path":
        cert = BergePath(verts, eids)
    elif kind == "cycle":
        cert = BergeCycle(verts, eids)
    else:
        raise FormatError(f"unknown kind {kind!r}")
    claims = {k: d.get(k) for k in ("r", "length", "start_vertex", "edges")}
    trace = tuple(Step.from_dict(s) for s in d.get("trace", []))
    return cert, claims, trace
