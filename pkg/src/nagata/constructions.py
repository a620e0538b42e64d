"""Explicit cover constructions: staggered bricks and the exact-sequence
combination of a quotient cover with fiber interval covers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .covers import Cover, neighborhood_enlarge, verify_control
from .discrete import SubgroupSpec, heisenberg_model
from .metrics import MetricView
from .words import WordBall, bfs_ball


# --- Z^n bricks --------------------------------------------------------------

def brick_cover(carrier: Sequence[tuple], n: int, s: float) -> Cover:
    """n+1 families of side-3s boxes on period 4s with per-family phase k*s.

    Claimed bound 3s*sqrt(n) is the Euclidean box diameter; same-family
    boxes sit at coordinate distance >= s, so strict s-chains never cross.
    Coverage: per coordinate exactly one family's gap window contains any
    residue, so at most n families fail and one of n+1 survives (n <= 3).
    """
    if s < 1:
        raise ValueError("scale must be >= 1")
    if n > 2:
        raise ValueError("brick phase schedule implemented for n <= 2")
    carrier = list(carrier)
    if n == 0:
        return Cover([[list(carrier)]], s, 0.0, "brick", {"n": 0, "s": s})
    s = int(s)
    side = 3 * s
    period = 4 * s
    families = []
    for k in range(n + 1):
        phase = round(k * side / (n + 1))
        boxes: dict = {}
        for p in carrier:
            key = []
            ok = True
            for x in p:
                q, r = divmod(x - phase, period)
                if r >= side:
                    ok = False
                    break
                key.append(int(q))
            if ok:
                boxes.setdefault(tuple(key), []).append(p)
        families.append(list(boxes.values()))
    cover = Cover(families, s, side * math.sqrt(n), "brick",
                  {"n": n, "s": s, "side": side, "period": period})
    _check_brick_coverage(cover, carrier)
    return cover


def _check_brick_coverage(cover: Cover, carrier) -> None:
    covered = set()
    for fam in cover.families:
        for st in fam:
            covered.update(st)
    missing = [p for p in carrier if p not in covered]
    if missing:
        raise AssertionError(f"brick cover misses {len(missing)} points, e.g. {missing[0]}")


def brick_family_separation(cover: Cover) -> float:
    """Min Euclidean distance between distinct boxes of one family (exhaustive)."""
    best = math.inf
    for fam in cover.families:
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                for p in fam[i]:
                    for q in fam[j]:
                        best = min(best, math.dist(p, q))
    return best


# --- Heisenberg bricks -------------------------------------------------------
# Cells live in layer coordinates: the abelianized pair (a, b) takes 3s-side
# bricks, the fiber direction uses the polarized coordinate z = c - ab/2
# (stored doubled to stay integral) in cells of extent (3s)^2 with gaps sized
# to the worst single-edge z-jump inside the ball.

from functools import lru_cache


@lru_cache(maxsize=None)
def _max_center_coord(r: int) -> int:
    """max |c| over the radius-r Heisenberg ball (exact, small r)."""
    if r <= 0:
        return 0
    ball = bfs_ball(heisenberg_model(), r)
    return max(abs(g[2]) for g in ball.lengths)


def heisenberg_zz(g: tuple) -> int:
    """Doubled polarized fiber coordinate 2z = 2c - ab."""
    return 2 * g[2] - g[0] * g[1]


def heisenberg_z_jump(s: int, R: int) -> int:
    """Upper bound for |2z(p) - 2z(q)| over edges d(p,q) < s inside B(R).

    With w = p^-1 q: 2dz = 2 w_c + a w_b - b w_a - w_a w_b, and |w_a|+|w_b|
    <= s-1 while |a|, |b| <= R.
    """
    return 2 * _max_center_coord(s - 1) + R * (s - 1) + (s - 1) ** 2 // 4


def heisenberg_brick_cover(ball: WordBall, s: int, radius: int | None = None) -> Cover:
    """4 families of Karidi-coordinate bricks 3s x 3s x (3s)^2.

    (a, b) bricks: side 3s, period 4s, family phase k*s.  Fiber cells in
    2z-units: extent 18 s^2, gap = worst edge jump + 1, uniform family
    phases at a quarter period.  Points left uncovered where the shear
    jump exceeds the phase spacing (small s on small balls) are patched
    as deterministic singleton sets.
    """
    if s < 1:
        raise ValueError("scale must be >= 1")
    R = ball.radius if radius is None else radius
    carrier = [g for g, l in ball.lengths.items() if l <= R]
    side, period = 3 * s, 4 * s
    extent = 18 * s * s
    gap = heisenberg_z_jump(s, R) + 1 if s >= 2 else 1
    zperiod = extent + gap
    families: list = [dict() for _ in range(4)]
    holes = []
    for g in carrier:
        a, b, _ = g
        z2 = heisenberg_zz(g)
        hit = False
        for k in range(4):
            qa, ra = divmod(a - k * s, period)
            if ra >= side:
                continue
            qb, rb = divmod(b - k * s, period)
            if rb >= side:
                continue
            qc, rc = divmod(z2 - (k * zperiod) // 4, zperiod)
            if rc >= extent:
                continue
            families[k].setdefault((qa, qb, qc), []).append(g)
            hit = True
        if not hit:
            holes.append(g)
    for g in holes:
        a, b, _ = g
        for k in range(4):
            if (a - k * s) % period < side and (b - k * s) % period < side:
                families[k][("patch", g)] = [g]
                break
        else:
            raise AssertionError(f"unpatchable hole {g}")
    fams = [list(f.values()) for f in families]
    return Cover(fams, s, 0.0, "heis-brick",
                 {"s": s, "radius": R, "side": side, "period": period,
                  "z_extent": extent, "z_gap": gap, "n_patches": len(holes)})


def central_word_norm(c: int) -> int:
    """Exact word length of the central element (0,0,c).

    The c-coordinate is the signed area a lattice loop encloses; perimeter
    2t encloses at most floor(t/2)*ceil(t/2), and every smaller area is
    reachable at the same perimeter, so ell = min{2t : area(t) >= |c|}.
    """
    c = abs(c)
    if c == 0:
        return 0
    t = math.isqrt(4 * c)
    while (t // 2) * ((t + 1) // 2) < c:
        t += 1
    return 2 * t


# --- exact sequence combination ----------------------------------------------

@dataclass
class FiberIntervalCover:
    """2-family tiling of a distorted-Z fiber by intervals with gaps.

    Cells of extent E alternate with gaps of the same size; gap crossings
    need a K-distance of at least sigma, which fixes E via the fiber norm.
    """
    scale: float           # sigma, the K-scale the gaps must break
    extent: int            # interval length in fiber-coordinate units
    diameter_bound: float  # D_K(sigma): max fiber norm within one cell

    def cell(self, coord: int) -> tuple:
        """(family, cell index) for a fiber coordinate; tiles with period 2E."""
        m, r = divmod(coord, 2 * self.extent)
        return (0, m) if r < self.extent else (1, m)


def fiber_interval_builder(k_norm: Callable[[int], float]) -> Callable[[float], FiberIntervalCover]:
    """Builder: sigma -> interval cover whose gaps break sigma-chains.

    k_norm is the restricted (distorted) norm of the fiber coordinate;
    extent = least E with k_norm(E) >= sigma, and D_K is the norm of the
    widest within-cell difference.
    """
    def build(sigma: float) -> FiberIntervalCover:
        E = 1
        while k_norm(E) < sigma:
            E *= 2
        lo, hi = max(1, E // 2), E
        while lo < hi:
            mid = (lo + hi) // 2
            if k_norm(mid) >= sigma:
                hi = mid
            else:
                lo = mid + 1
        E = lo
        return FiberIntervalCover(sigma, E, float(k_norm(E - 1)))
    return build


class PreimageEscapeError(ValueError):
    def __init__(self, witness, norm, limit):
        self.witness = witness
        super().__init__(
            f"preimage point {witness!r} sits {norm} from the fiber, beyond "
            f"the {limit} neighborhood; projection is not 1-Lipschitz here")


def exact_sequence_cover(ball_view: MetricView, quotient_view: MetricView,
                         quotient_norms: dict, K: SubgroupSpec,
                         coverH: Cover,
                         coverK_builder: Callable[[float], FiberIntervalCover],
                         fiber_coordinate: Callable[[tuple], int],
                         model) -> Cover:
    """Combine a verified quotient cover with fiber interval covers.

    For each quotient family j and each s-scale component W of it, the
    preimage (inside a translate of the B_H-neighborhood of the fiber) is
    split by fiber intervals at scale s + 2*B_H; output families are
    indexed by (j, i), and the claimed bound is the neighborhood-enlarged
    fiber control D_K(s + 2 B_H) + 2 B_H evaluated exactly.
    """
    from .components import s_scale_components

    s = coverH.scale
    ver = verify_control(coverH, quotient_view)
    if not ver.passed:
        raise ValueError(f"quotient cover failed verification: {ver.as_dict()}")
    B_H = ver.verified_bound
    sigma = s + 2 * B_H
    kcover = coverK_builder(sigma)
    claimed = neighborhood_enlarge(lambda t: coverK_builder(t).diameter_bound, B_H)(s)

    by_key: dict = {}
    for g in ball_view.carrier:
        by_key.setdefault(K.coset_key(g), []).append(g)
    m_fams = 2
    out: list = [dict() for _ in range(coverH.n_families * m_fams)]
    for j, fam in enumerate(coverH.families):
        union_keys = sorted({k for st in fam for k in st})
        comps = s_scale_components(union_keys, s, quotient_view)
        for w_idx, W in enumerate(comps):
            F = [g for k in sorted(W) for g in by_key.get(k, ())]
            if not F:
                continue
            base = min(F, key=lambda g: (ball_view.backend.table.lengths[g], repr(g)))
            binv = model.inverse(base)
            for g in F:
                y = model.multiply(binv, g)
                qn = quotient_norms.get(K.coset_key(y))
                if qn is None or qn > B_H:
                    raise PreimageEscapeError(g, qn, B_H)
                i, cell = kcover.cell(fiber_coordinate(y))
                out[j * m_fams + i].setdefault((j, w_idx, cell), []).append(g)
    families = [list(f.values()) for f in out]
    return Cover(families, s, claimed, "exact-seq",
                 {"s": s, "B_H": B_H, "sigma": sigma,
                  "fiber_extent": kcover.extent, "D_K": kcover.diameter_bound,
                  "quotient_families": coverH.n_families,
                  "fiber_families": m_fams})
