"""Exhaustive ground truth for Berge paths and cycles at desk scale.

Plain backtracking over alternating vertex/edge sequences with used-vertex and
used-edge sets. Expansion is in ascending id order, so witnesses are
deterministic. The search is budgeted in tree nodes; running out raises
:class:`BudgetExceeded` instead of returning a partial answer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from berge.certificates import BergeCycle, BergePath
from berge.hypergraph import Hypergraph

DEFAULT_BUDGET = int(os.environ.get("BERGE_ORACLE_BUDGET", 2_000_000))


class BudgetExceeded(RuntimeError):
    pass


class _Counter:
    def __init__(self, budget: int):
        if budget <= 0:
            raise ValueError("budget must be positive")
        self.left = budget

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search budget exhausted")


def _reachable(h: Hypergraph, x: int, used_v: set, used_e: set) -> int:
    """Vertices reachable from ``x`` through unused edges, avoiding used vertices."""
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for eid in h.incidence[y]:
            if eid in used_e:
                continue
            for z in h.edges[eid]:
                if z not in seen and z not in used_v:
                    seen.add(z)
                    stack.append(z)
    return len(seen) - 1


def longest_path_from(h: Hypergraph, v: int, budget: int = DEFAULT_BUDGET, _counter=None):
    """Length and witness of a longest Berge path starting at ``v``."""
    counter = _counter or _Counter(budget)
    cap = min(h.n - 1, h.m)
    best = [0, (v,), ()]
    verts, eids = [v], []
    used_v, used_e = {v}, set()

    def dfs(x):
        counter.tick()
        if len(eids) > best[0]:
            best[:] = [len(eids), tuple(verts), tuple(eids)]
            if best[0] == cap:
                return True
        bound = len(eids) + min(_reachable(h, x, used_v, used_e), h.m - len(used_e))
        if bound <= best[0]:
            return False
        for eid in h.incidence[x]:
            if eid in used_e:
                continue
            used_e.add(eid)
            eids.append(eid)
            for y in sorted(h.edges[eid]):
                if y in used_v:
                    continue
                used_v.add(y)
                verts.append(y)
                done = dfs(y)
                verts.pop()
                used_v.discard(y)
                if done:
                    return True
            eids.pop()
            used_e.discard(eid)
        return False

    dfs(v)
    return best[0], BergePath(best[1], best[2])


def exists_path_from(h: Hypergraph, v: int, k: int, budget: int = DEFAULT_BUDGET):
    """Is there a Berge path of length exactly ``k`` starting at ``v``?"""
    counter = _Counter(budget)
    verts, eids = [v], []
    used_v, used_e = {v}, set()

    def dfs(x):
        counter.tick()
        if len(eids) == k:
            return True
        if h.n - len(used_v) < k - len(eids):
            return False
        for eid in h.incidence[x]:
            if eid in used_e:
                continue
            used_e.add(eid)
            eids.append(eid)
            for y in sorted(h.edges[eid]):
                if y in used_v:
                    continue
                used_v.add(y)
                verts.append(y)
                if dfs(y):
                    return True
                verts.pop()
                used_v.discard(y)
            eids.pop()
            used_e.discard(eid)
        return False

    if dfs(v):
        return True, BergePath(tuple(verts), tuple(eids))
    return False, None


def exists_cycle_through(h: Hypergraph, v: int, k: int, budget: int = DEFAULT_BUDGET):
    """Is there a Berge cycle of length exactly ``k`` with ``v`` as a vertex?"""
    if k < 2 or k > h.n:
        return False, None
    counter = _Counter(budget)
    verts, eids = [v], []
    used_v, used_e = {v}, set()

    def dfs(x):
        counter.tick()
        if len(verts) == k:
            for eid in h.incidence[x]:
                if eid not in used_e and v in h.edges[eid]:
                    eids.append(eid)
                    return True
            return False
        for eid in h.incidence[x]:
            if eid in used_e:
                continue
            used_e.add(eid)
            eids.append(eid)
            for y in sorted(h.edges[eid]):
                if y in used_v:
                    continue
                used_v.add(y)
                verts.append(y)
                if dfs(y):
                    return True
                verts.pop()
                used_v.discard(y)
            eids.pop()
            used_e.discard(eid)
        return False

    if dfs(v):
        return True, BergeCycle(tuple(verts), tuple(eids))
    return False, None


@dataclass
class OracleReport:
    longest_path_length: int
    witness: BergePath | None
    per_vertex: dict[int, tuple[int, bool]] = field(default_factory=dict)


def longest_berge_path(
    h: Hypergraph, budget: int = DEFAULT_BUDGET, per_vertex: bool = False, cycle_length: int | None = None
) -> OracleReport:
    """Exact longest Berge path in ``h``.

    With ``per_vertex`` the report also maps each vertex to (longest path
    from it, whether a cycle of ``cycle_length`` passes through it).
    """
    counter = _Counter(budget)
    best_len, best = -1, None
    table = {}
    cap = min(h.n - 1, h.m)
    for v in range(h.n):
        if not per_vertex and best_len == cap:
            break
        length, wit = longest_path_from(h, v, _counter=counter)
        if length > best_len:
            best_len, best = length, wit
        if per_vertex:
            has_cycle = False
            if cycle_length is not None:
                has_cycle = exists_cycle_through(h, v, cycle_length, budget=max(counter.left, 1))[0]
            table[v] = (length, has_cycle)
    if h.n == 0:
        return OracleReport(0, None, table)
    return OracleReport(best_len, best, table)


def theorem1_bound(n: int, k: int, r: int) -> Fraction | None:
    """Edge bound for r-uniform hypergraphs without a Berge path of length ``k``.

    Regimes k > r+1 > 3 and r >= k > 2 have their own bounds;
    k = r+1 > 2 gives e <= n. Returns None outside these regimes.
    """
    if k > r + 1 > 3:
        return Fraction(n, k) * comb(k, r)
    if r >= k > 2:
        return Fraction(n * (k - 1), r + 1)
    if k == r + 1 > 2:
        return Fraction(n)
    return None


@dataclass
class BoundsReport:
    checked: int = 0
    violations: list = field(default_factory=list)
    equalities: list = field(default_factory=list)


def check_theorem1_bounds(instances, k: int, r: int, budget: int = DEFAULT_BUDGET) -> BoundsReport:
    """For every instance with no Berge path of length ``k``, check the edge bound."""
    rep = BoundsReport()
    for name, h in instances:
        bound = theorem1_bound(h.n, k, r)
        if bound is None:
            continue
        longest = longest_berge_path(h, budget).longest_path_length
        if longest >= k:
            continue
        rep.checked += 1
        if h.m > bound:
            rep.violations.append((name, h.n, h.m, bound))
        elif h.m == bound:
            rep.equalities.append((name, h.n, h.m, bound))
    return rep
