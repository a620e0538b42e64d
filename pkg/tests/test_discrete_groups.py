import random

import pytest

from nagata.discrete import (BUILTIN_MODELS, NotAnosovError, heisenberg_center,
                             heisenberg_model, lamplighter_model,
                             sol_lattice_model, sol_fiber, zn_model)
from nagata.words import bfs_ball


def test_heisenberg_products():
    M = heisenberg_model()
    assert M.multiply((1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    # commutator x y x^-1 y^-1 = central generator
    assert M.word(["x", "y", "x'", "y'"]) == (0, 0, 1)


def test_heisenberg_inverse_formula():
    M = heisenberg_model()
    for g in [(2, -3, 5), (0, 0, 7), (-4, 1, 0)]:
        a, b, c = g
        assert M.inverse(g) == (-a, -b, -c + a * b)
        assert M.multiply(g, M.inverse(g)) == M.identity


def test_sol_conjugation_is_matrix_action():
    M = sol_lattice_model(((2, 1), (1, 1)))
    t, e1, tinv = (0, 0, 1), (1, 0, 0), (0, 0, -1)
    assert M.multiply(M.multiply(t, e1), tinv) == (2, 1, 0)


def test_sol_abelian_fiber_and_identity():
    M = sol_lattice_model()
    assert M.multiply((3, -1, 0), (2, 5, 0)) == (5, 4, 0)
    assert M.identity == (0, 0, 0)


def test_sol_rejects_non_anosov():
    with pytest.raises(NotAnosovError):
        sol_lattice_model(((1, 1), (0, 1)))   # trace 2
    with pytest.raises(NotAnosovError):
        sol_lattice_model(((2, 1), (1, 2)))   # det 3


def test_lamplighter_toggle_involution():
    M = lamplighter_model()
    tog = dict(M.generators)["t"]
    assert M.multiply(tog, tog) == M.identity


def test_lamplighter_move_then_toggle():
    M = lamplighter_model()
    g = M.word(["e1", "t"])
    assert g == (((1, 0),), (1, 0))


def test_lamplighter_word_length_two_lamps():
    M = lamplighter_model()
    ball = bfs_ball(M, 4)
    target = (((0, 0), (1, 0)), (0, 0))
    assert ball.lengths[target] == 4


@pytest.mark.parametrize("name", sorted(BUILTIN_MODELS))
def test_group_axioms_on_sampled_triples(name):
    M = BUILTIN_MODELS[name]()
    ball = bfs_ball(M, 6)
    elems = list(ball.lengths)
    rng = random.Random(42)
    for _ in range(10_000):
        g, h, k = (elems[rng.randrange(len(elems))] for _ in range(3))
        assert M.multiply(M.multiply(g, h), k) == M.multiply(g, M.multiply(h, k))
    for _ in range(200):
        g = elems[rng.randrange(len(elems))]
        assert M.multiply(g, M.identity) == g
        assert M.multiply(M.identity, g) == g
        assert M.multiply(g, M.inverse(g)) == M.identity
        assert M.multiply(M.inverse(g), g) == M.identity


@pytest.mark.parametrize("name", sorted(BUILTIN_MODELS))
def test_generators_closed_under_inverse(name):
    M = BUILTIN_MODELS[name]()
    gens = set(M.generator_elements())
    for g in gens:
        assert M.inverse(g) in gens


def test_subgroup_specs():
    C = heisenberg_center()
    assert C.member((0, 0, 5)) and not C.member((1, 0, 5))
    assert C.embed((5,)) == (0, 0, 5)
    assert C.pull_back((0, 0, -3)) == (-3,)
    assert C.coset_key((2, 3, 9)) == (2, 3)

    Fb = sol_fiber()
    assert Fb.member((4, -1, 0)) and not Fb.member((0, 0, 1))
    assert Fb.pull_back((4, -1, 0)) == (4, -1)
