"""Covers and exact linear-control verification.

A Cover is a scale-tagged family-of-families of subsets of a carrier; the
verifier computes exact s-scale component diameters (no estimates) and a
certificate aggregates per-scale verified bounds plus the linearity fit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .components import s_scale_components
from .fitting import FitReport, fit
from .metrics import MetricView

LINEARITY_RESIDUAL = 0.25


class CoverageError(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"cover does not cover carrier; witness point {witness!r}")


@dataclass
class Cover:
    families: list            # list of families; family = list of point lists
    scale: float
    claimed_bound: float
    construction: str
    parameters: dict = field(default_factory=dict)

    @property
    def n_families(self) -> int:
        return len(self.families)

    def all_points(self):
        for fam in self.families:
            for st in fam:
                yield from st

    def to_json(self) -> str:
        return json.dumps({
            "construction": self.construction,
            "scale": self.scale,
            "claimed_bound": self.claimed_bound,
            "parameters": self.parameters,
            "families": [[[list(p) if isinstance(p, tuple) else p for p in st]
                          for st in fam] for fam in self.families],
        })

    @staticmethod
    def from_json(text: str) -> "Cover":
        raw = json.loads(text)
        fams = [[[tuple(p) if isinstance(p, list) else p for p in st]
                 for st in fam] for fam in raw["families"]]
        return Cover(fams, raw["scale"], raw["claimed_bound"],
                     raw["construction"], raw.get("parameters", {}))


def _diameter_allpairs(C: list, dist) -> float:
    best = 0
    for i in range(len(C)):
        for j in range(i + 1, len(C)):
            d = dist(C[i], C[j])
            if d > best:
                best = d
    return best


def _diameter_pruned(C: list, dist) -> float:
    """Exact max pairwise distance via eccentricity pruning.

    Candidates are walked in decreasing anchor distance; a point whose
    upper bound min(d(a, y) + ecc(a)) cannot beat the current max is
    skipped.  Worst case quadratic, in practice a few sweeps.
    """
    def ecc(x):
        best, arg = -1, None
        for y in C:
            d = dist(x, y)
            if d > best:
                best, arg = d, y
        return best, arg

    u = C[0]
    lb = 0
    anchors = []
    for _ in range(4):
        e, v = ecc(u)
        anchors.append((u, e))
        if e > lb:
            lb = e
        if v == u:
            break
        u = v
    order = sorted(C, key=lambda y: max(dist(a, y) for a, _ in anchors), reverse=True)
    for y in order:
        ub = min(dist(a, y) + e for a, e in anchors)
        if ub <= lb:
            break
        e, _ = ecc(y)
        anchors.append((y, e))
        if e > lb:
            lb = e
    return lb


def set_diameter(C: list, view: MetricView, allpairs_cap: int = 800) -> float:
    if len(C) <= 1:
        return 0
    backend = view.backend
    if backend is not None and hasattr(backend, "diameter") and len(C) > 64:
        return backend.diameter(C)
    if len(C) <= allpairs_cap:
        return _diameter_allpairs(C, view.distance)
    return _diameter_pruned(C, view.distance)


@dataclass
class ScaleVerification:
    scale: float
    claimed_bound: float
    verified_bound: float            # max s-component diameter over all families
    interior_bound: float            # same, over components clear of the shell
    per_family: list                 # verified bound per family
    n_components: int
    n_boundary_components: int
    passed: bool                     # verified_bound <= claimed_bound

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in
                ("scale", "claimed_bound", "verified_bound", "interior_bound",
                 "per_family", "n_components", "n_boundary_components", "passed")}


def verify_control(cover: Cover, view: MetricView) -> ScaleVerification:
    """Exact verification of one cover at its scale.

    Components are computed on the union of each family's sets; the bound
    is the exact maximum component diameter.  Verification is refused with
    a witness if any carrier point is uncovered.  Components touching the
    boundary shell (word-ball carriers only) are reported separately; the
    headline bound includes them.
    """
    covered = set()
    carrier = set(view.carrier)
    for fam in cover.families:
        for st in fam:
            for p in st:
                if p not in carrier:
                    raise ValueError(f"cover set contains non-carrier point {p!r}")
            covered.update(st)
    for p in view.carrier:
        if p not in covered:
            raise CoverageError(p)

    backend = view.backend
    shell = None
    if backend is not None:
        R = backend.carrier_radius
        lengths = backend.table.lengths
        shell = lambda g: lengths[g] >= R - 1

    worst = 0
    worst_interior = 0
    per_family = []
    ncomp = 0
    nboundary = 0
    for fam in cover.families:
        union_pts = sorted({p for st in fam for p in st}, key=repr)
        comps = s_scale_components(union_pts, cover.scale, view)
        fam_bound = 0
        for C in comps:
            ncomp += 1
            d = set_diameter(C, view)
            fam_bound = max(fam_bound, d)
            touches = shell is not None and any(shell(g) for g in C)
            if touches:
                nboundary += 1
            else:
                worst_interior = max(worst_interior, d)
        worst = max(worst, fam_bound)
        per_family.append(fam_bound)
    return ScaleVerification(cover.scale, cover.claimed_bound, worst,
                             worst_interior, per_family, ncomp, nboundary,
                             worst <= cover.claimed_bound)


@dataclass
class ControlCertificate:
    carrier: str
    construction: str
    n_families: int
    entries: list                     # ScaleVerification per scale
    fit_report: FitReport | None = None
    linear_fit_passed: bool = False

    def finalize(self) -> "ControlCertificate":
        """Fit the linear control model across all verified scales.

        Pass requires at least 3 octave-spaced scales and a held-out max
        relative residual below 0.25 (intercept unconstrained).
        """
        pts = sorted((e.scale, e.verified_bound) for e in self.entries)
        scales = [p[0] for p in pts]
        octaves = sum(1 for a, b in zip(scales, scales[1:]) if b >= 2 * a) + 1
        if len(pts) >= 3 and octaves >= 3:
            self.fit_report = fit(pts, "linear", min_samples=3)
            self.linear_fit_passed = (
                self.fit_report.max_rel_residual < LINEARITY_RESIDUAL)
        return self

    @property
    def all_scales_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def as_dict(self) -> dict:
        return {
            "carrier": self.carrier,
            "construction": self.construction,
            "n_families": self.n_families,
            "entries": [e.as_dict() for e in self.entries],
            "fit": self.fit_report.as_dict() if self.fit_report else None,
            "linear_fit_passed": self.linear_fit_passed,
            "all_scales_passed": self.all_scales_passed,
        }


def certify(covers: list, view: MetricView, carrier_name: str = "") -> ControlCertificate:
    """Verify one cover per scale and aggregate into a certificate."""
    if not covers:
        raise ValueError("no covers to certify")
    entries = [verify_control(c, view) for c in covers]
    return ControlCertificate(
        carrier_name or view.name, covers[0].construction,
        covers[0].n_families, entries).finalize()


def neighborhood_enlarge(control, R: float):
    """Control-function transform for an R-neighborhood: s -> D(s + 2R) + 2R."""
    if R < 0:
        raise ValueError("neighborhood radius must be >= 0")
    return lambda s: control(s + 2 * R) + 2 * R
