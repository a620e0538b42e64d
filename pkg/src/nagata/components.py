"""s-scale components: chains of hops strictly shorter than s inside a set.

Two code paths produce identical partitions: a generic quadratic union-find
for arbitrary metric views, and a Cayley-graph wave search for word-metric
carriers (exact for integer word metrics; every path edge between adjacent
wave territories is checked against the strict budget s-1).
"""
from __future__ import annotations

import math
from typing import Sequence

from .metrics import MetricView


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def groups(self, items: Sequence) -> list:
        out: dict = {}
        for i, it in enumerate(items):
            out.setdefault(self.find(i), []).append(it)
        return list(out.values())


def _components_generic(S: list, s: float, view: MetricView) -> list:
    uf = _UnionFind(len(S))
    d = view.distance
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            if uf.find(i) != uf.find(j) and d(S[i], S[j]) < s:
                uf.union(i, j)
    return uf.groups(S)


def _components_word(S: list, s: float, view: MetricView) -> list:
    """Wave search in the ball subgraph of radius R + ceil((s-1)/2).

    For integer word metrics, d(x, y) < s iff d(x, y) <= ceil(s) - 1 =: k.
    Waves of depth ceil(k/2) from all points of S meet on geodesic
    midpoints; every edge where two territories touch within the budget
    triggers a union, which yields exactly the d<s chain components.
    """
    backend = view.backend
    k = math.ceil(s) - 1
    if k <= 0:
        return [[g] for g in S]
    rho = (k + 1) // 2
    limit = backend.carrier_radius + rho
    table = backend.table.lengths
    if backend.table.radius < limit:
        raise ValueError("length table too small for wave component search")
    mul = backend.model.multiply
    gens = backend.model.generator_elements()
    uf = _UnionFind(len(S))
    label = {g: i for i, g in enumerate(S)}
    depth = {g: 0 for g in S}
    frontier = list(S)
    for d in range(1, rho + 1):
        nxt = []
        for g in frontier:
            lg = label[g]
            for t in gens:
                h = mul(g, t)
                lh = table.get(h)
                if lh is None or lh > limit:
                    continue
                if h in depth:
                    if depth[h] + d <= k:
                        uf.union(lg, label[h])
                else:
                    depth[h] = d
                    label[h] = lg
                    nxt.append(h)
        frontier = nxt
    return uf.groups(S)


def s_scale_components(S: Sequence, s: float, view: MetricView) -> list:
    """Partition of S into components of the graph with edges d < s (strict)."""
    S = list(S)
    if not S:
        return []
    if s <= 0:
        raise ValueError("scale must be positive")
    if len(S) > 64:
        from .metrics import EuclideanBackend, WordMetricBackend
        if isinstance(view.backend, WordMetricBackend):
            return _components_word(S, s, view)
        if isinstance(view.backend, EuclideanBackend):
            return view.backend.components(S, s)
    return _components_generic(S, s, view)


def components_oracle(S: Sequence, s: float, view: MetricView) -> list:
    """Brute-force transitive closure over the full boolean relation.

    Quadratic in |S| with an explicit closure loop; kept deliberately
    independent from the union-find path for oracle-equivalence tests.
    """
    S = list(S)
    n = len(S)
    adj = [[view.distance(S[i], S[j]) < s for j in range(n)] for i in range(n)]
    comp = [None] * n
    out = []
    for i in range(n):
        if comp[i] is not None:
            continue
        stack = [i]
        comp[i] = len(out)
        members = []
        while stack:
            u = stack.pop()
            members.append(S[u])
            for v in range(n):
                if comp[v] is None and adj[u][v]:
                    comp[v] = comp[i]
                    stack.append(v)
        out.append(members)
    return out
