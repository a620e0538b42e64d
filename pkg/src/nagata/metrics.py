"""Metric views and the transform toolbox (snowflake, log, min/max, quotient).

A MetricView bundles a finite carrier with a distance oracle and remembers
which transforms produced it.  Word-metric views keep a backend handle so
the cover engine can run graph-based component searches instead of the
generic quadratic scan.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .discrete import DiscreteGroupModel, SubgroupSpec
from .words import WordBall


@dataclass
class WordMetricBackend:
    """True word metric d(g,h) = ell(g^-1 h), backed by a 2R length table."""
    model: DiscreteGroupModel
    table: WordBall          # lengths out to >= 2 * carrier_radius
    carrier_radius: int

    def distance(self, g, h) -> int:
        if g == h:
            return 0
        w = self.model.multiply(self.model.inverse(g), h)
        d = self.table.lengths.get(w)
        if d is None:
            raise KeyError(
                f"difference of carrier elements escapes the length table "
                f"(radius {self.table.radius}); need table radius >= 2*carrier")
        return d


@dataclass
class EuclideanBackend:
    """Euclidean metric on integer lattice points, with vectorized bulk ops."""

    def distance(self, p, q) -> float:
        return math.dist(p, q)

    def components(self, S: list, s: float) -> list:
        """Exact d < s components via cell binning (cells of side s)."""
        pts = np.asarray(S, dtype=float)
        n = len(S)
        cells: dict = {}
        cell_of = np.floor(pts / s).astype(int)
        for i, c in enumerate(map(tuple, cell_of)):
            cells.setdefault(c, []).append(i)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        dim = pts.shape[1]
        offsets = [off for off in _box_offsets(dim)]
        s2 = s * s
        for c, idx in cells.items():
            a = np.array(idx)
            for off in offsets:
                nb = tuple(ci + oi for ci, oi in zip(c, off))
                if nb not in cells or nb < c:
                    continue
                b = np.array(cells[nb]) if nb != c else a
                d2 = ((pts[a][:, None, :] - pts[b][None, :, :]) ** 2).sum(axis=2)
                ii, jj = np.nonzero(d2 < s2 - 1e-12)
                for i, j in zip(ii, jj):
                    x, y = int(a[i]), int(b[j])
                    if x != y:
                        rx, ry = find(x), find(y)
                        if rx != ry:
                            parent[rx] = ry
        groups: dict = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(S[i])
        return list(groups.values())

    def diameter(self, C: list) -> float:
        pts = np.asarray(C, dtype=float)
        best = 0.0
        step = 512
        for lo in range(0, len(pts), step):
            blk = pts[lo:lo + step]
            d2 = ((blk[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
            best = max(best, float(d2.max()))
        return math.sqrt(best)


def _box_offsets(dim: int):
    from itertools import product
    return list(product((-1, 0, 1), repeat=dim))


@dataclass
class MetricView:
    carrier: list
    distance: Callable
    transform_log: list = field(default_factory=list)
    name: str = ""
    backend: WordMetricBackend | None = None

    def check_axioms(self, max_triples: int = 100_000, seed: int = 0) -> None:
        """Metric axioms on sampled (or exhaustive) triples; raises on failure."""
        pts = self.carrier
        n = len(pts)
        if n < 2:
            return
        d = self.distance
        rng = random.Random(seed)
        if n ** 3 <= max_triples:
            triples = [(a, b, c) for a in pts for b in pts for c in pts]
        else:
            triples = [(pts[rng.randrange(n)], pts[rng.randrange(n)], pts[rng.randrange(n)])
                       for _ in range(max_triples)]
        for a, b, c in triples:
            dab, dba = d(a, b), d(b, a)
            if dab != dba:
                raise AssertionError(f"symmetry fails: d{a,b}={dab} d{b,a}={dba}")
            if (dab == 0) != (a == b):
                raise AssertionError(f"identity of indiscernibles fails at {a}, {b}")
            if d(a, c) > dab + d(b, c) + 1e-12:
                raise AssertionError(f"triangle inequality fails on {a}, {b}, {c}")


def word_metric_view(model: DiscreteGroupModel, table: WordBall, radius: int) -> MetricView:
    """View of the radius-R ball under the true word metric.

    The table must extend to at least 2R so differences stay resolvable.
    """
    if table.radius < 2 * radius:
        raise ValueError(f"length table radius {table.radius} < 2*{radius}")
    carrier = [g for g, l in table.lengths.items() if l <= radius]
    backend = WordMetricBackend(model, table, radius)
    return MetricView(carrier, backend.distance,
                      transform_log=[{"transform": "word_metric",
                                      "model": model.name, "radius": radius}],
                      name=f"{model.name}-ball{radius}", backend=backend)


def euclidean_view(points: Sequence, name: str = "euclidean") -> MetricView:
    backend = EuclideanBackend()
    return MetricView(list(points), backend.distance,
                      transform_log=[{"transform": "euclidean"}],
                      name=name, backend=backend)


def _derived(view: MetricView, dist: Callable, entry: dict) -> MetricView:
    return MetricView(list(view.carrier), dist,
                      view.transform_log + [entry],
                      name=view.name, backend=None)


def snowflake(view: MetricView, alpha: float) -> MetricView:
    """d -> d^alpha for 0 < alpha <= 1 (concavity keeps the triangle inequality)."""
    if not 0 < alpha <= 1:
        raise ValueError(f"snowflake exponent must be in (0, 1], got {alpha}")
    base = view.distance
    return _derived(view, lambda a, b: base(a, b) ** alpha,
                    {"transform": "snowflake", "alpha": alpha})


def log_transform(view: MetricView) -> MetricView:
    """d -> log(d + 1); subadditive, so geodesic carriers stay metric."""
    base = view.distance
    return _derived(view, lambda a, b: math.log(base(a, b) + 1.0),
                    {"transform": "log"})


def micro_macro(view: MetricView, mode: str) -> MetricView:
    """min(d, 1) (large-scale functor) or max(d, 1) off-diagonal (small-scale)."""
    base = view.distance
    if mode == "min1":
        dist = lambda a, b: min(base(a, b), 1.0)
    elif mode == "max1":
        dist = lambda a, b: 0.0 if a == b else max(base(a, b), 1.0)
    else:
        raise ValueError(f"mode must be 'min1' or 'max1', got {mode!r}")
    return _derived(view, dist, {"transform": "micro_macro", "mode": mode})


# --- Hausdorff quotient metric ---------------------------------------------

@dataclass
class QuotientNorms:
    subgroup: str
    radius: int
    norms: dict          # coset key -> min word length over the coset, in-ball
    lower_bound_only: dict  # coset key -> True when the min touches the shell


def hausdorff_quotient(ball: WordBall, K: SubgroupSpec,
                       key_diff: Callable | None = None) -> tuple[MetricView, QuotientNorms]:
    """Quotient view: ||gK|| = min word length over the coset inside the ball.

    Cosets whose in-ball minimum sits on the boundary shell {R-1, R} are
    flagged lower-bound-only (the true infimum may lie outside the ball).
    Distances between cosets use the normal-subgroup quotient structure via
    componentwise key differences (override key_diff for anything fancier).
    """
    if not ball.lengths:
        raise ValueError("empty ball")
    norms: dict = {}
    for g, l in ball.lengths.items():
        key = K.coset_key(g)
        if key not in norms or l < norms[key]:
            norms[key] = l
    if not norms:
        raise ValueError("empty coset set")
    flags = {key: (l >= ball.radius - 1) for key, l in norms.items()}
    if key_diff is None:
        key_diff = lambda k1, k2: tuple(b - a for a, b in zip(k1, k2))

    def dist(k1, k2):
        if k1 == k2:
            return 0
        dk = key_diff(k1, k2)
        if dk not in norms:
            raise KeyError(f"coset difference {dk} not represented in the ball")
        return norms[dk]

    carrier = sorted(norms)
    view = MetricView(carrier, dist,
                      transform_log=[{"transform": "hausdorff_quotient",
                                      "model": ball.model_name,
                                      "subgroup": K.name, "radius": ball.radius}],
                      name=f"{ball.model_name}/{K.name}")
    return view, QuotientNorms(K.name, ball.radius, norms, flags)
