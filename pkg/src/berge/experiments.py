"""Sweeps that exercise the extractor against the oracle and the bounds.

Work is cut into fixed-size chunks independent of the worker count, and each
chunk returns a digest of its certificates and traces; the suite digest
hashes the chunk digests in order. Sequential and parallel runs therefore
produce the same digest whenever they produce the same certificates.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool

from berge.certificates import BergeCycle, BergePath, verify
from berge.extractor import extract, extract_theorem2, replay
from berge.generators import complete_blocks, random_connected, random_uniform
from berge.hypergraph import Hypergraph
from berge.io import certificate_dict
from berge.oracle import (
    check_theorem1_bounds,
    exists_cycle_through,
    exists_path_from,
    longest_berge_path,
)

CHUNK = 256
RANDOM_PAIRS = ((3, 6), (3, 7), (3, 8), (4, 6), (4, 7), (5, 7))
RANDOM_OFFSETS = (0, 1, 3)
SUITES = ("exhaustive-r2", "exhaustive-r3-n5", "random", "bounds")


@dataclass
class SuiteReport:
    suite: str
    instances: int = 0
    extractions: int = 0
    theorem2: int = 0
    oracle_checks: int = 0
    failures: list = field(default_factory=list)
    branches: Counter = field(default_factory=Counter)
    notes: list = field(default_factory=list)
    digest: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, part: dict) -> None:
        self.instances += part["instances"]
        self.extractions += part["extractions"]
        self.theorem2 += part["theorem2"]
        self.oracle_checks += part["oracle_checks"]
        self.failures.extend(part["failures"])
        self.branches.update(part["branches"])

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "extractions": self.extractions,
            "theorem2": self.theorem2,
            "oracle_checks": self.oracle_checks,
            "failures": self.failures[:50],
            "failure_count": len(self.failures),
            "branches": dict(sorted(self.branches.items())),
            "notes": self.notes,
            "digest": self.digest,
            "seconds": round(self.seconds, 3),
        }

    def summary(self) -> str:
        lines = [
            f"suite {self.suite}: {self.instances} instances, {self.extractions} extractions, "
            f"{self.theorem2} e>n path runs, {self.oracle_checks} oracle checks, "
            f"{len(self.failures)} counterexamples, {self.seconds:.1f}s",
            f"  digest {self.digest}",
        ]
        for k, c in sorted(self.branches.items()):
            lines.append(f"  {k:28s} {c}")
        lines.extend(f"  note: {x}" for x in self.notes)
        lines.extend(f"  FAIL {x}" for x in self.failures[:20])
        return "\n".join(lines)


def _contract(h: Hypergraph, v: int, cert) -> str | None:
    r = h.r
    res = verify(h, cert)
    if not res:
        return f"does not verify: {res}"
    if cert.length != r + 1:
        return f"length {cert.length} != {r + 1}"
    if isinstance(cert, BergePath) and cert.start != v:
        return f"path starts at {cert.start}"
    if isinstance(cert, BergeCycle) and v not in cert.vertices:
        return "cycle misses v"
    return None


def _run_chunk(args) -> dict:
    tasks, oracle, do_replay, do_theorem2 = args
    part = dict(instances=0, extractions=0, theorem2=0, oracle_checks=0, failures=[], branches=Counter())
    digest = hashlib.sha256()
    for name, n, edges, vs in tasks:
        h = Hypergraph(n, edges)
        r = h.r
        part["instances"] += 1
        for v in vs:
            tag = f"{name} v={v}"
            try:
                res = extract(h, v)
            except Exception as exc:  # any exception here is a counterexample
                part["failures"].append(f"{tag}: {type(exc).__name__}: {exc}")
                continue
            part["extractions"] += 1
            part["branches"].update(s.label() for s in res.trace)
            bad = _contract(h, v, res.outcome)
            if bad:
                part["failures"].append(f"{tag}: {bad}")
            if do_replay:
                try:
                    again = replay(h, v, res.trace)
                    if again.outcome != res.outcome:
                        part["failures"].append(f"{tag}: replay outcome differs")
                except Exception as exc:
                    part["failures"].append(f"{tag}: replay {type(exc).__name__}: {exc}")
            if oracle:
                part["oracle_checks"] += 1
                has_path = exists_path_from(h, v, r + 1)[0]
                has_cycle = exists_cycle_through(h, v, r + 1)[0]
                if not (has_path or has_cycle):
                    part["failures"].append(f"{tag}: oracle finds neither path nor cycle")
                if res.kind == "path" and not has_path or res.kind == "cycle" and not has_cycle:
                    part["failures"].append(f"{tag}: oracle disagrees with {res.kind} outcome")
            digest.update(json.dumps([name, v, certificate_dict(h, res)], separators=(",", ":")).encode())
        if do_theorem2 and h.m > h.n:
            try:
                res = extract_theorem2(h)
                part["theorem2"] += 1
                part["branches"].update(s.label() for s in res.trace if s.kind == "Promote")
                cert = res.outcome
                if not isinstance(cert, BergePath) or cert.length != r + 1 or not verify(h, cert):
                    part["failures"].append(f"{name}: promoted path invalid")
                digest.update(json.dumps([name, "t2", certificate_dict(h, res)], separators=(",", ":")).encode())
            except Exception as exc:
                part["failures"].append(f"{name}: promotion {type(exc).__name__}: {exc}")
    part["digest"] = digest.hexdigest()
    return part


def _run_tasks(report: SuiteReport, tasks, *, oracle, do_replay, do_theorem2, workers=1) -> SuiteReport:
    start = time.perf_counter()
    chunks = []
    it = iter(tasks)
    while True:
        chunk = list(itertools.islice(it, CHUNK))
        if not chunk:
            break
        chunks.append((chunk, oracle, do_replay, do_theorem2))
    total = hashlib.sha256()
    if workers > 1:
        with Pool(workers) as pool:
            parts = pool.map(_run_chunk, chunks)
    else:
        parts = map(_run_chunk, chunks)
    for part in parts:
        report.merge(part)
        total.update(part["digest"].encode())
    report.digest = total.hexdigest()
    report.seconds += time.perf_counter() - start
    return report


def _task(name: str, h: Hypergraph, vs=None):
    return (name, h.n, h.edges, tuple(range(h.n)) if vs is None else tuple(vs))


def graphs_r2(max_n: int = 7):
    """Connected simple graphs with e >= n: all labelled ones for n <= 6,
    one per isomorphism class (networkx graph atlas) for n = 7."""
    for n in range(3, min(max_n, 6) + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            if bin(mask).count("1") < n:
                continue
            h = Hypergraph(n, tuple(frozenset(p) for i, p in enumerate(pairs) if mask >> i & 1))
            if h.is_connected():
                yield f"r2-n{n}-{mask}", h
    if max_n >= 7:
        import networkx as nx

        for idx, g in enumerate(nx.graph_atlas_g()):
            if g.number_of_nodes() != 7 or g.number_of_edges() < 7 or not nx.is_connected(g):
                continue
            h = Hypergraph.from_edges(7, sorted(tuple(sorted(e)) for e in g.edges())).canonical()
            yield f"r2-atlas{idx}", h


def hypergraphs_r3_n5():
    """All 3-uniform hypergraphs on 5 labelled vertices, connected with e >= 5."""
    triples = list(itertools.combinations(range(5), 3))
    for mask in range(1 << len(triples)):
        h = Hypergraph(5, tuple(frozenset(t) for i, t in enumerate(triples) if mask >> i & 1))
        if h.m >= 5 and h.is_connected():
            yield f"r3-n5-{mask}", h


def instance_seed(base: int, r: int, n: int, m: int, i: int) -> int:
    return (base << 40) ^ (r << 32) ^ (n << 24) ^ (m << 16) ^ i


def random_instances(count: int, seed: int = 0, pairs=RANDOM_PAIRS, offsets=RANDOM_OFFSETS):
    for r, n in pairs:
        for off in offsets:
            m = n + off
            for i in range(count):
                s = instance_seed(seed, r, n, m, i)
                yield f"rand-r{r}-n{n}-m{m}-s{s}", random_connected(r, n, m, s), i % n


def run_exhaustive_r2(max_n: int = 7, workers: int = 1) -> SuiteReport:
    tasks = (_task(name, h) for name, h in graphs_r2(max_n))
    return _run_tasks(SuiteReport("exhaustive-r2"), tasks, oracle=True, do_replay=False, do_theorem2=True, workers=workers)


def run_exhaustive_r3_n5(workers: int = 1) -> SuiteReport:
    tasks = (_task(name, h) for name, h in hypergraphs_r3_n5())
    return _run_tasks(SuiteReport("exhaustive-r3-n5"), tasks, oracle=True, do_replay=False, do_theorem2=True, workers=workers)


def run_random(count: int = 10_000, seed: int = 0, workers: int = 1, pairs=RANDOM_PAIRS) -> SuiteReport:
    tasks = (_task(name, h, [v]) for name, h, v in random_instances(count, seed, pairs))
    return _run_tasks(SuiteReport("random"), tasks, oracle=False, do_replay=True, do_theorem2=True, workers=workers)


def run_bounds(seed: int = 0, count: int = 300) -> SuiteReport:
    """Tightness of the block construction and the edge bounds for other k."""
    rep = SuiteReport("bounds")
    start = time.perf_counter()
    for r in (2, 3, 4, 5):
        for b in (1, 2, 3):
            h = complete_blocks(r, r + 1, b)
            rep.instances += 1
            longest = longest_berge_path(h).longest_path_length
            rep.oracle_checks += 1
            if h.m != h.n or longest != r:
                rep.failures.append(f"K_{r + 1}^({r}) x{b}: e={h.m} n={h.n} longest={longest}")
            else:
                rep.notes.append(f"K_{r + 1}^({r}) x{b}: e = n = {h.n}, longest = {r}")
    # k > r+1 families: disjoint K_k^(r) reach e = (n/k) C(k, r)
    for r, k in ((3, 5), (3, 6), (4, 6)):
        for b in (1, 2):
            h = complete_blocks(r, k, b)
            rep.instances += 1
            res = check_theorem1_bounds([(f"K_{k}^({r}) x{b}", h)], k, r)
            rep.oracle_checks += 1
            if res.violations or res.checked != 1:
                rep.failures.append(f"K_{k}^({r}) x{b}: checked={res.checked} violations={res.violations}")
            elif res.equalities:
                rep.notes.append(f"K_{k}^({r}) x{b}: e = {h.m} = (n/k)C(k,r) with no path of length {k}")
            else:
                rep.failures.append(f"K_{k}^({r}) x{b}: expected equality")
    rng_seed = seed
    for r in (2, 3, 4):
        for n in range(r + 1, 9):
            for i in range(count // 18 + 1):
                rng_seed += 1
                hi = min(2 * n, len(list(itertools.combinations(range(n), r))))
                m = 1 + rng_seed % hi
                h = random_uniform(r, n, m, instance_seed(seed, r, n, m, i))
                rep.instances += 1
                for k in range(3, n + 1):
                    res = check_theorem1_bounds([(f"rand-r{r}-n{n}-m{m}-{i}", h)], k, r)
                    rep.oracle_checks += res.checked
                    rep.failures.extend(f"k={k}: {v}" for v in res.violations)
    digest = hashlib.sha256("\n".join(rep.notes + rep.failures).encode())
    rep.digest = digest.hexdigest()
    rep.seconds = time.perf_counter() - start
    return rep


def run_suite(name: str, *, seed: int = 0, count: int = 10_000, max_n: int = 7, workers: int = 1) -> SuiteReport:
    if name == "exhaustive-r2":
        return run_exhaustive_r2(max_n, workers)
    if name == "exhaustive-r3-n5":
        return run_exhaustive_r3_n5(workers)
    if name == "random":
        return run_random(count, seed, workers)
    if name == "bounds":
        return run_bounds(seed)
    raise ValueError(f"unknown suite {name!r}")
