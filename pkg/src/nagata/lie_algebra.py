"""Exact calculator for finite-dimensional Lie algebras given by structure constants.

All arithmetic is over Fraction; series stabilization, Killing determinants
and span containments are decided exactly, never numerically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (Mat, Vec, det, in_span, is_zero_vec, mat_mul, mat_trace,
                    rank, row_echelon, span_contains, vec, zeros)

REQUIRES_CATALOG = "requires catalog"


class InvalidAlgebraError(ValueError):
    """Structure constants violate antisymmetry or the Jacobi identity."""


@dataclass(frozen=True)
class LieAlgebra:
    """Algebra with basis e_1..e_n and [e_i, e_j] = sum_k c[i][j][k] e_k."""

    dim: int
    structure_constants: tuple  # c[i][j][k] as nested tuples of Fraction
    name: str = ""

    @staticmethod
    def from_brackets(dim: int, brackets: dict, name: str = "") -> "LieAlgebra":
        """Build from {(i, j): {k: coeff}} with 1-based i < j; antisymmetry implied."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), comps in brackets.items():
            if not (1 <= i < j <= dim):
                raise InvalidAlgebraError(f"bracket key ({i},{j}) must satisfy 1 <= i < j <= dim")
            for k, coeff in comps.items():
                q = Fraction(coeff)
                c[i - 1][j - 1][k - 1] = q
                c[j - 1][i - 1][k - 1] = -q
        alg = LieAlgebra(dim, tuple(tuple(tuple(r) for r in p) for p in c), name)
        alg.validate()
        return alg

    def validate(self) -> None:
        c = self.structure_constants
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise InvalidAlgebraError(
                            f"antisymmetry fails at c[{i+1}][{j+1}][{k+1}]")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = _add(_add(self.bracket(_e(i, n), self.bracket(_e(j, n), _e(k, n))),
                                  self.bracket(_e(j, n), self.bracket(_e(k, n), _e(i, n)))),
                             self.bracket(_e(k, n), self.bracket(_e(i, n), _e(j, n))))
                    if not is_zero_vec(s):
                        raise InvalidAlgebraError(
                            f"Jacobi identity fails on basis triple ({i+1},{j+1},{k+1})")

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        """[x, y] evaluated through the structure tensor, exact."""
        n = self.dim
        if len(x) != n or len(y) != n:
            raise ValueError(f"vector length must be {n}")
        out = zeros(n)
        c = self.structure_constants
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                f = x[i] * y[j]
                row = c[i][j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] += f * row[k]
        return out

    def ad(self, i: int) -> Mat:
        """Matrix of ad(e_i) acting on column coordinates (0-based i)."""
        n = self.dim
        cols = [self.bracket(_e(i, n), _e(j, n)) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]


def _e(i: int, n: int) -> Vec:
    v = zeros(n)
    v[i] = Fraction(1)
    return v


def _add(a: Vec, b: Vec) -> Vec:
    return [x + y for x, y in zip(a, b)]


@dataclass
class SubspaceChain:
    kind: str                      # "lower_central" | "derived"
    subspaces: list[Mat]           # echelonized bases, first entry = whole algebra
    dims: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.dims:
            self.dims = [len(b) for b in self.subspaces]

    @property
    def reaches_zero(self) -> bool:
        return self.dims[-1] == 0

    @property
    def degree(self) -> int | None:
        """Index (1-based) of the last nonzero term when the chain reaches 0."""
        if not self.reaches_zero:
            return None
        return max(i for i, d in enumerate(self.dims, start=1) if d > 0) if self.dims[0] else 0


def _span_brackets(L: LieAlgebra, left: Mat, right: Mat) -> Mat:
    prods = []
    for x in left:
        for y in right:
            v = L.bracket(x, y)
            if not is_zero_vec(v):
                prods.append(v)
    return row_echelon(prods)


def _chain(L: LieAlgebra, kind: str) -> SubspaceChain:
    full = row_echelon([_e(i, L.dim) for i in range(L.dim)])
    terms = [full]
    while True:
        prev = terms[-1]
        left = full if kind == "lower_central" else prev
        nxt = _span_brackets(L, left, prev)
        if len(nxt) == len(prev) and span_contains(prev, nxt):
            # stabilized without reaching zero: record the repeat and stop
            terms.append(nxt)
            break
        terms.append(nxt)
        if not nxt:
            break
    return SubspaceChain(kind, terms)


def lower_central_series(L: LieAlgebra) -> SubspaceChain:
    """N^1 = L, N^{i+1} = [L, N^i], echelon bases until 0 or stabilization."""
    return _chain(L, "lower_central")


def derived_series(L: LieAlgebra) -> SubspaceChain:
    """L^(1) = L, L^(i+1) = [L^(i), L^(i)]."""
    return _chain(L, "derived")


def killing_form(L: LieAlgebra) -> Mat:
    """B[i][j] = trace(ad(e_i) ad(e_j)), exact and symmetric."""
    ads = [L.ad(i) for i in range(L.dim)]
    n = L.dim
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            t = mat_trace(mat_mul(ads[i], ads[j]))
            B[i][j] = t
            B[j][i] = t
    return B


def hirsch_length(quotient_ranks: Sequence[int]) -> int:
    """Sum of the (nonnegative) rational ranks of successive series quotients."""
    if any(r < 0 for r in quotient_ranks):
        raise ValueError("ranks must be nonnegative")
    return sum(quotient_ranks)


@dataclass
class DimensionReport:
    name: str
    topological_dim: int
    is_nilpotent: bool
    is_solvable: bool
    is_semisimple_by_killing: bool
    nilpotency_degree: int | None
    predicted_asdim_AN: int | str
    hirsch_length: int | None
    lower_central_dims: list[int]
    derived_dims: list[int]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "topological_dim": self.topological_dim,
            "is_nilpotent": self.is_nilpotent,
            "is_solvable": self.is_solvable,
            "is_semisimple_by_killing": self.is_semisimple_by_killing,
            "nilpotency_degree": self.nilpotency_degree,
            "predicted_asdim_AN": self.predicted_asdim_AN,
            "hirsch_length": self.hirsch_length,
            "lower_central_dims": self.lower_central_dims,
            "derived_dims": self.derived_dims,
        }


def classify(L: LieAlgebra) -> DimensionReport:
    """Flags from the two series plus the Killing-form nondegeneracy proxy.

    Nilpotent and solvable algebras get the dimension itself as the
    predicted asymptotic dimension value; anything with a nondegenerate
    Killing form (and mixed types) needs group-level catalog data, since
    the compact-factor dimension is not recoverable from the algebra.
    """
    lcs = lower_central_series(L)
    ders = derived_series(L)
    nil = lcs.reaches_zero
    solv = ders.reaches_zero
    B = killing_form(L)
    semi = det(B) != 0
    if nil or solv:
        predicted: int | str = L.dim
    else:
        predicted = REQUIRES_CATALOG
    h = L.dim if solv else None
    return DimensionReport(
        name=L.name,
        topological_dim=L.dim,
        is_nilpotent=nil,
        is_solvable=solv,
        is_semisimple_by_killing=semi,
        nilpotency_degree=lcs.degree if nil else None,
        predicted_asdim_AN=predicted,
        hirsch_length=h,
        lower_central_dims=lcs.dims,
        derived_dims=ders.dims,
    )


# --- text format: header "dim n", then lines "i j k p/q" for i<j ---------

def parse_algebra(text: str, name: str = "") -> LieAlgebra:
    brackets: dict = {}
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            head = line.split()
            if len(head) != 2 or head[0] != "dim":
                raise InvalidAlgebraError(f"line {lineno}: expected 'dim n' header")
            dim = int(head[1])
            if dim <= 0:
                raise InvalidAlgebraError("dim must be positive")
            continue
        parts = line.split()
        if len(parts) != 4:
            raise InvalidAlgebraError(f"line {lineno}: expected 'i j k p/q'")
        i, j, k = int(parts[0]), int(parts[1]), int(parts[2])
        if not (1 <= i < j <= dim) or not (1 <= k <= dim):
            raise InvalidAlgebraError(f"line {lineno}: indices out of range (need i<j)")
        brackets.setdefault((i, j), {})[k] = Fraction(parts[3])
    if dim is None:
        raise InvalidAlgebraError("missing 'dim n' header")
    return LieAlgebra.from_brackets(dim, brackets, name=name)


def load_algebra(path) -> LieAlgebra:
    from pathlib import Path
    p = Path(path)
    return parse_algebra(p.read_text(), name=p.stem)


def format_algebra(L: LieAlgebra) -> str:
    lines = [f"dim {L.dim}"]
    c = L.structure_constants
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k in range(L.dim):
                if c[i][j][k] != 0:
                    lines.append(f"{i+1} {j+1} {k+1} {c[i][j][k]}")
    return "\n".join(lines) + "\n"


# --- builtin algebras -----------------------------------------------------

def heis3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(1, 2): {3: 1}}, name="heis3")


def filiform4() -> LieAlgebra:
    return LieAlgebra.from_brackets(4, {(1, 2): {3: 1}, (1, 3): {4: 1}}, name="filiform4")


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(n, {}, name=f"abelian{n}")


def sl2() -> LieAlgebra:
    # basis h, e, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra.from_brackets(
        3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}, name="sl2")


def so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}}, name="so3")


BUILTIN_ALGEBRAS = {
    "heis3": heis3,
    "filiform4": filiform4,
    "sl2": sl2,
    "so3": so3,
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
}
