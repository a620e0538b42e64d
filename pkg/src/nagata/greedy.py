"""Heuristic control curves: greedy cluster covers with first-fit coloring.

For each scale s the engine binary-searches the least cluster radius rho
whose cluster graph (edges between clusters within graph distance s-1)
first-fit-colors with at most n+1 colors; the achieved bound is 2*rho.
An upper estimate of the optimal control, labeled heuristic throughout.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .discrete import DiscreteGroupModel
from .words import WordBall


@dataclass
class ControlSample:
    scale: float
    bound: float          # 2 * rho of the least feasible radius
    rho: int
    n_families: int
    failed: bool = False  # no feasible rho under the cap

    def as_tuple(self):
        return (self.scale, self.bound)


class BallGraph:
    """Indexed Cayley graph of a word ball, built once and reused."""

    def __init__(self, model: DiscreteGroupModel, ball: WordBall, radius: int | None = None):
        r = ball.radius if radius is None else radius
        self.nodes = [g for g, l in ball.lengths.items() if l <= r]
        index = {g: i for i, g in enumerate(self.nodes)}
        gens = model.generator_elements()
        nbrs = []
        offsets = [0]
        for g in self.nodes:
            row = []
            for t in gens:
                h = model.multiply(g, t)
                j = index.get(h)
                if j is not None:
                    row.append(j)
            nbrs.extend(row)
            offsets.append(len(nbrs))
        self.neighbors = np.array(nbrs, dtype=np.int64)
        self.offsets = np.array(offsets, dtype=np.int64)

    def __len__(self):
        return len(self.nodes)


def _grow_clusters(graph: BallGraph, rho: int) -> np.ndarray:
    """Partition nodes into BFS clusters of radius rho, seeds in node order."""
    n = len(graph)
    owner = np.full(n, -1, dtype=np.int64)
    nbr, off = graph.neighbors, graph.offsets
    cid = 0
    for seed in range(n):
        if owner[seed] >= 0:
            continue
        owner[seed] = cid
        frontier = [seed]
        for _ in range(rho):
            nxt = []
            for u in frontier:
                for v in nbr[off[u]:off[u + 1]]:
                    if owner[v] < 0:
                        owner[v] = cid
                        nxt.append(int(v))
            if not nxt:
                break
            frontier = nxt
        cid += 1
    return owner


def _first_fit_colors(graph: BallGraph, owner: np.ndarray, s: float,
                      max_colors: int) -> int | None:
    """First-fit color count for the cluster graph, or None when it exceeds
    max_colors (aborts at the first forced extra color)."""
    n = len(graph)
    k = int(np.ceil(s)) - 1
    ncl = int(owner.max()) + 1
    members: list = [[] for _ in range(ncl)]
    for u in range(n):
        members[owner[u]].append(u)
    nbr, off = graph.neighbors, graph.offsets
    stamp = np.full(n, -1, dtype=np.int64)
    color = np.full(ncl, -1, dtype=np.int64)
    used = 0
    for c in range(ncl):
        # owners within graph distance <= k of cluster c
        seen_colors = set()
        frontier = members[c]
        for u in frontier:
            stamp[u] = c
        for _ in range(k):
            nxt = []
            for u in frontier:
                for v in nbr[off[u]:off[u + 1]]:
                    if stamp[v] != c:
                        stamp[v] = c
                        oc = color[owner[v]]
                        if oc >= 0:
                            seen_colors.add(int(oc))
                        nxt.append(int(v))
            frontier = nxt
        col = 0
        while col in seen_colors:
            col += 1
        if col >= max_colors:
            return None
        color[c] = col
        used = max(used, col + 1)
    return used


def empirical_control_curve(model: DiscreteGroupModel, ball: WordBall,
                            n: int, scales, radius: int | None = None,
                            rho_cap: int | None = None) -> list[ControlSample]:
    """Greedy (n+1)-family control samples (scale, achieved bound).

    Heuristic upper estimates only: failures at the rho cap are recorded
    as evidence of higher dimension, never as proof.
    """
    graph = BallGraph(model, ball, radius)
    r = ball.radius if radius is None else radius
    cap = rho_cap if rho_cap is not None else 2 * r
    out = []
    for s in scales:
        lo, hi = 1, cap
        best = None
        while lo <= hi:
            mid = (lo + hi) // 2
            owner = _grow_clusters(graph, mid)
            colors = _first_fit_colors(graph, owner, s, n + 1)
            if colors is not None:
                best = mid
                hi = mid - 1
            else:
                lo = mid + 1
        if best is None:
            out.append(ControlSample(s, float("inf"), cap, n + 1, failed=True))
        else:
            out.append(ControlSample(s, 2.0 * best, best, n + 1))
    return out
