"""Weighted-grid shortest paths: the numerical distance oracle for
continuous models.

Edges join axis neighbors and two-coordinate diagonal steps with component
ratios 1:1 and 2:1; weights are segment lengths under the metric tensor at
the edge midpoint.  The 2:1 steps matter: strongly anisotropic metrics
have cheap cones too narrow for unit diagonals alone.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .continuous import ContinuousGroupModel

PAD_FRACTION = 0.3  # box inflation relative to the query set's diameter


class DisconnectedGridError(RuntimeError):
    pass


def _step_directions(dim: int, ratio2: bool = True) -> list:
    dirs = []
    for i in range(dim):
        e = np.zeros(dim, dtype=int)
        e[i] = 1
        dirs.append(e.copy())
    ratios = [(1, 1), (1, -1)]
    if ratio2:
        ratios += [(1, 2), (1, -2), (2, 1), (2, -1)]
    for i, j in itertools.combinations(range(dim), 2):
        for ri, rj in ratios:
            e = np.zeros(dim, dtype=int)
            e[i], e[j] = ri, rj
            dirs.append(e.copy())
    return dirs


@dataclass
class GridMetricGraph:
    model_name: str
    h: float
    base: np.ndarray
    shape: tuple
    matrix: csr_matrix
    box: tuple
    snapped: bool = False
    n_nodes: int = 0

    def node_of(self, p: Sequence[float]) -> int:
        k = np.round((np.asarray(p, float) - self.base) / self.h).astype(int)
        if np.any(k < 0) or np.any(k >= np.array(self.shape)):
            raise ValueError(f"point {tuple(p)} outside grid box {self.box}")
        err = np.abs(self.base + k * self.h - np.asarray(p, float)).max()
        if err > 1e-9:
            self.snapped = True
        strides = [int(np.prod(self.shape[i + 1:])) for i in range(len(self.shape))]
        return int((k * strides).sum())


def build_grid(model: ContinuousGroupModel, points: Sequence, h: float,
               pad_fraction: float = PAD_FRACTION, ratio2: bool = True) -> GridMetricGraph:
    """Grid graph on the padded bounding box of the query points.

    The lattice is anchored at the first query point so commensurate
    queries (coordinates in h-multiples of each other) land on nodes and
    half-step refinements share the coarse lattice.
    """
    if h <= 0:
        raise ValueError("grid step must be positive")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != model.dim:
        raise ValueError(f"points must be (m, {model.dim})")
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    diam = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            diam = max(diam, float(np.linalg.norm(pts[i] - pts[j])))
    pad = pad_fraction * (diam if diam > 0 else h)
    lo -= pad
    hi += pad
    anchor = pts[0]
    base = anchor - h * np.ceil((anchor - lo) / h - 1e-12)
    ns = np.floor((hi - base) / h + 1e-12).astype(int) + 1
    shape = tuple(int(x) for x in ns)
    n = int(np.prod(ns))
    strides = np.array([int(np.prod(ns[i + 1:])) for i in range(model.dim)])
    multi = np.stack(np.unravel_index(np.arange(n), shape), axis=-1)
    coords = base + multi * h
    rows, cols, weights = [], [], []
    for d in _step_directions(model.dim, ratio2):
        ok = np.all((multi + d >= 0) & (multi + d < ns), axis=1)
        src = np.nonzero(ok)[0]
        if not len(src):
            continue
        dst = src + int((d * strides).sum())
        mids = coords[src] + (d * h) / 2.0
        C = model.coframe(mids)
        delta = (d * h).astype(float)
        w = np.linalg.norm(np.einsum("nij,j->ni", C, delta), axis=1)
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise ValueError("metric produced nonpositive or nonfinite edge weight")
        rows.append(src)
        cols.append(dst)
        weights.append(w)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    weights = np.concatenate(weights)
    matrix = csr_matrix(
        (np.concatenate([weights, weights]),
         (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
        shape=(n, n))
    box = tuple((float(b), float(b + (k - 1) * h)) for b, k in zip(base, shape))
    return GridMetricGraph(model.name, h, base, shape, matrix, box, n_nodes=n)


def grid_distances(model: ContinuousGroupModel, points: Sequence, h: float,
                   pad_fraction: float = PAD_FRACTION) -> tuple[np.ndarray, GridMetricGraph]:
    """All-pairs grid shortest-path distances between the query points."""
    graph = build_grid(model, points, h, pad_fraction)
    idx = [graph.node_of(p) for p in points]
    D = dijkstra(graph.matrix, indices=idx)
    out = D[:, idx]
    if not np.all(np.isfinite(out)):
        raise DisconnectedGridError("grid too small: some query pairs unreachable")
    return out, graph


def grid_distance(model: ContinuousGroupModel, p, q, h: float,
                  pad_fraction: float = PAD_FRACTION) -> float:
    if tuple(p) == tuple(q):
        return 0.0
    D, _ = grid_distances(model, [p, q], h, pad_fraction)
    return float(D[0, 1])


def translated_set_diameter(model: ContinuousGroupModel, points: Sequence,
                            translator, h: float,
                            pad_fraction: float = PAD_FRACTION) -> tuple[float, dict]:
    """Max pairwise grid distance over the right-translated point set."""
    moved = [model.multiply(tuple(p), tuple(translator)) for p in points]
    D, graph = grid_distances(model, moved, h, pad_fraction)
    meta = {
        "translator": tuple(translator),
        "h": h,
        "pad_fraction": pad_fraction,
        "n_nodes": graph.n_nodes,
        "box": graph.box,
        "snapped": graph.snapped,
        "translated_points": [tuple(p) for p in moved],
    }
    return float(D.max()), meta


def interval_points(direction: int, length: float, samples: int = 5,
                    dim: int = 4) -> list:
    """Evenly sampled points of a coordinate interval from the origin."""
    out = []
    for t in np.linspace(0.0, length, samples):
        p = [0.0] * dim
        p[direction] = float(t)
        out.append(tuple(p))
    return out
