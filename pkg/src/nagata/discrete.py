"""Exact integer models of the lattice groups used throughout the lab.

Elements are hashable tuples, multiplication is exact integer arithmetic,
and every generator list is closed under inverses so breadth-first word
balls are well defined.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence


@dataclass(frozen=True)
class DiscreteGroupModel:
    name: str
    identity: tuple
    multiply: Callable[[tuple, tuple], tuple]
    inverse: Callable[[tuple], tuple]
    generators: tuple  # tuple of (label, element); closed under inverse

    def generator_elements(self) -> list[tuple]:
        return [g for _, g in self.generators]

    def word(self, labels: Sequence[str]) -> tuple:
        """Multiply out a word given by generator labels."""
        table = dict(self.generators)
        g = self.identity
        for lab in labels:
            g = self.multiply(g, table[lab])
        return g


# --- Z^n ------------------------------------------------------------------

def zn_model(n: int) -> DiscreteGroupModel:
    ident = (0,) * n

    def mul(g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inv(g):
        return tuple(-a for a in g)

    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        gens.append((f"x{i+1}", tuple(e)))
        e[i] = -1
        gens.append((f"x{i+1}'", tuple(e)))
    return DiscreteGroupModel(f"Z^{n}", ident, mul, inv, tuple(gens))


# --- discrete Heisenberg ---------------------------------------------------
# Integer (un-polarized) law: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b').
# Isomorphic over R to the symmetrized law via c_pol = c - a b / 2.

def heisenberg_mul(g: tuple, h: tuple) -> tuple:
    return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])


def heisenberg_inv(g: tuple) -> tuple:
    return (-g[0], -g[1], -g[2] + g[0] * g[1])


def heisenberg_model() -> DiscreteGroupModel:
    gens = (("x", (1, 0, 0)), ("x'", (-1, 0, 0)),
            ("y", (0, 1, 0)), ("y'", (0, -1, 0)))
    return DiscreteGroupModel("heisenberg", (0, 0, 0),
                              heisenberg_mul, heisenberg_inv, gens)


# --- SOL lattice Z^2 x_A Z ------------------------------------------------

class NotAnosovError(ValueError):
    """Gluing matrix must be in SL(2,Z) with |trace| > 2."""


def sol_lattice_model(A: Sequence[Sequence[int]] = ((2, 1), (1, 1))) -> DiscreteGroupModel:
    a, b = A[0]
    c, d = A[1]
    if a * d - b * c != 1:
        raise NotAnosovError(f"det {A} = {a*d-b*c}, need 1")
    if abs(a + d) <= 2:
        raise NotAnosovError(f"|trace {A}| = {abs(a+d)}, need > 2 (Anosov)")
    Ainv = ((d, -b), (-c, a))

    def apply_pow(t: int, v1: int, v2: int) -> tuple:
        M = A if t >= 0 else Ainv
        for _ in range(abs(t)):
            v1, v2 = M[0][0] * v1 + M[0][1] * v2, M[1][0] * v1 + M[1][1] * v2
        return v1, v2

    def mul(g, h):
        w1, w2 = apply_pow(g[2], h[0], h[1])
        return (g[0] + w1, g[1] + w2, g[2] + h[2])

    def inv(g):
        w1, w2 = apply_pow(-g[2], -g[0], -g[1])
        return (w1, w2, -g[2])

    gens = (("a", (1, 0, 0)), ("a'", (-1, 0, 0)),
            ("b", (0, 1, 0)), ("b'", (0, -1, 0)),
            ("t", (0, 0, 1)), ("t'", (0, 0, -1)))
    name = f"sol[{a},{b};{c},{d}]"
    return DiscreteGroupModel(name, (0, 0, 0), mul, inv, gens)


# --- lamplighter Z_2 wr Z^2 -------------------------------------------------
# Element: (lamps, cursor) with lamps a sorted tuple of lit positions in Z^2.

def _lamp_mul(g: tuple, h: tuple) -> tuple:
    lamps1, c1 = g
    lamps2, c2 = h
    shifted = {(p[0] + c1[0], p[1] + c1[1]) for p in lamps2}
    lamps = set(lamps1) ^ shifted
    return (tuple(sorted(lamps)), (c1[0] + c2[0], c1[1] + c2[1]))


def _lamp_inv(g: tuple) -> tuple:
    lamps, c = g
    moved = tuple(sorted((p[0] - c[0], p[1] - c[1]) for p in lamps))
    return (moved, (-c[0], -c[1]))


def lamplighter_model() -> DiscreteGroupModel:
    ident = ((), (0, 0))
    toggle = (((0, 0),), (0, 0))
    gens = (("t", toggle),
            ("e1", ((), (1, 0))), ("e1'", ((), (-1, 0))),
            ("e2", ((), (0, 1))), ("e2'", ((), (0, -1))))
    return DiscreteGroupModel("lamplighter-Z2-Z2", ident, _lamp_mul, _lamp_inv, gens)


BUILTIN_MODELS: dict[str, Callable[[], DiscreteGroupModel]] = {
    "Z": lambda: zn_model(1),
    "Z^2": lambda: zn_model(2),
    "Z^3": lambda: zn_model(3),
    "heisenberg": heisenberg_model,
    "sol": sol_lattice_model,
    "lamplighter-Z2-Z2": lamplighter_model,
}


# --- distinguished subgroups ------------------------------------------------

@dataclass(frozen=True)
class SubgroupSpec:
    """A subgroup of an ambient model, with its own intrinsic model.

    embed maps intrinsic elements into the ambient group; member tests
    ambient elements for membership; coset_key canonicalizes right cosets
    gK (used by the Hausdorff quotient).
    """
    name: str
    ambient: str
    intrinsic: DiscreteGroupModel
    embed: Callable[[tuple], tuple]
    member: Callable[[tuple], bool]
    coset_key: Callable[[tuple], tuple]
    project: Callable[[tuple], tuple] = None  # ambient member -> intrinsic

    def pull_back(self, g: tuple) -> tuple:
        if self.project is None:
            raise ValueError(f"subgroup {self.name} has no projection")
        return self.project(g)


def heisenberg_center() -> SubgroupSpec:
    return SubgroupSpec(
        name="center",
        ambient="heisenberg",
        intrinsic=zn_model(1),
        embed=lambda z: (0, 0, z[0]),
        member=lambda g: g[0] == 0 and g[1] == 0,
        coset_key=lambda g: (g[0], g[1]),
        project=lambda g: (g[2],),
    )


def sol_fiber() -> SubgroupSpec:
    return SubgroupSpec(
        name="fiber",
        ambient="sol",
        intrinsic=zn_model(2),
        embed=lambda v: (v[0], v[1], 0),
        member=lambda g: g[2] == 0,
        coset_key=lambda g: (g[2],),
        project=lambda g: (g[0], g[1]),
    )


def whole_group(model: DiscreteGroupModel) -> SubgroupSpec:
    return SubgroupSpec(
        name="all",
        ambient=model.name,
        intrinsic=model,
        embed=lambda g: g,
        member=lambda g: True,
        coset_key=lambda g: (),
        project=lambda g: g,
    )


SUBGROUPS: dict[tuple, Callable[[], SubgroupSpec]] = {
    ("heisenberg", "center"): heisenberg_center,
    ("sol", "fiber"): sol_fiber,
}
