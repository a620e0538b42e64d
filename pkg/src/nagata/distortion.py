"""Subgroup distortion scans and the layered quasi-norm comparison."""
from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .discrete import DiscreteGroupModel, SubgroupSpec
from .fitting import FitReport, fit
from .words import WordBall, bfs_ball


@dataclass
class DistortionSample:
    subgroup: str
    ambient_model: str
    radius: int
    pairs: list          # (intrinsic_norm, ambient_norm, boundary_flag)
    degenerate: bool = False

    def fit_pairs(self, include_boundary: bool = False) -> list:
        """(intrinsic, ambient) pairs, boundary shell excluded by default."""
        return [(i, a) for i, a, flag in self.pairs
                if include_boundary or not flag]

    def to_csv(self, fh: io.TextIOBase) -> None:
        w = csv.writer(fh)
        w.writerow(["intrinsic", "ambient", "boundary_flag"])
        for row in sorted(self.pairs):
            w.writerow(row)


def _intrinsic_lengths(H: DiscreteGroupModel, targets: set) -> dict:
    """BFS on the subgroup's own Cayley graph until every target is measured."""
    lengths = {H.identity: 0}
    frontier = [H.identity]
    missing = set(targets) - {H.identity}
    r = 0
    while missing:
        r += 1
        nxt = []
        for g in frontier:
            for s in H.generator_elements():
                h = H.multiply(g, s)
                if h not in lengths:
                    lengths[h] = r
                    nxt.append(h)
                    missing.discard(h)
        if not nxt:
            raise ValueError("subgroup BFS exhausted without reaching all targets")
        frontier = nxt
    return lengths


def subgroup_distortion(ball: WordBall, H: SubgroupSpec) -> DistortionSample:
    """All (||h||_H, ||h||_G) pairs over h in H intersected with the ball.

    Intrinsic norms come from the subgroup's own breadth-first search;
    pairs whose ambient length touches the boundary shell are flagged (the
    shell truncates the sample, not the values, but fits exclude them for
    symmetry with the quotient policy).
    """
    members = [(g, l) for g, l in ball.lengths.items() if H.member(g)]
    targets = {H.pull_back(g) for g, _ in members}
    intrinsic = _intrinsic_lengths(H.intrinsic, targets)
    pairs = []
    for g, l in members:
        if l == 0:
            continue
        pairs.append((intrinsic[H.pull_back(g)], l, l >= ball.radius - 1))
    degenerate = not pairs
    if degenerate:
        warnings.warn(f"H ∩ ball is trivial for subgroup {H.name}; "
                      "distortion sample is degenerate")
    pairs.sort()
    return DistortionSample(H.name, ball.model_name, ball.radius, pairs, degenerate)


def fit_distortion(sample: DistortionSample, model: str) -> FitReport:
    return fit(sample.fit_pairs(), model)


# --- layered quasi-norm -----------------------------------------------------

@dataclass(frozen=True)
class KaridiCoordinates:
    """Lower-central-series layer indices: layer i+1 holds weight-(i+1) coords."""
    name: str
    layers: tuple  # tuple of tuples of 0-based coordinate indices

    def quasi_norm(self, x: Sequence[float]) -> float:
        total = 0.0
        for depth, idxs in enumerate(self.layers, start=1):
            norm = math.sqrt(sum(float(x[i]) ** 2 for i in idxs))
            total += norm ** (1.0 / depth)
        return total

    def arity(self) -> int:
        return sum(len(l) for l in self.layers)


HEISENBERG_LAYERS = KaridiCoordinates("heisenberg", ((0, 1), (2,)))
FILIFORM4_LAYERS = KaridiCoordinates("filiform4", ((0, 1), (2,), (3,)))


def karidi_quasinorm(coords: KaridiCoordinates, p: Sequence[float],
                     q: Sequence[float] | None = None,
                     model: DiscreteGroupModel | None = None) -> float:
    """D(p, q) = D(1, p^-1 q) = sum over layers of ||x_layer||^(1/depth).

    With q omitted, p itself is measured from the identity.  Computing
    p^-1 q needs the group law, so a model must accompany two-point calls.
    """
    if len(p) != coords.arity():
        raise ValueError(f"expected {coords.arity()} coordinates, got {len(p)}")
    if q is None:
        return coords.quasi_norm(p)
    if model is None:
        raise ValueError("two-point quasi-norm needs the group model for p^-1 q")
    diff = model.multiply(model.inverse(tuple(p)), tuple(q))
    return coords.quasi_norm(diff)


@dataclass
class KaridiReport:
    kappa_hat: float
    n_samples: int
    radius: int
    worst_element: tuple
    symmetry_defect: float = 0.0


def karidi_comparison(ball: WordBall, coords: KaridiCoordinates,
                      radius: int | None = None) -> KaridiReport:
    """kappa-hat = max over sampled p with d(1,p) > 1 of max(D/d, d/D).

    A max-ratio estimator, not a regression: the comparison being probed
    is a uniform two-sided bound.
    """
    r = ball.radius if radius is None else radius
    kappa = 0.0
    worst = None
    n = 0
    for g, l in ball.lengths.items():
        if l <= 1 or l > r:
            continue
        D = coords.quasi_norm(g)
        ratio = max(D / l, l / D)
        n += 1
        if ratio > kappa:
            kappa, worst = ratio, g
    if n == 0:
        raise ValueError("no samples beyond distance 1")
    return KaridiReport(kappa, n, r, worst)
