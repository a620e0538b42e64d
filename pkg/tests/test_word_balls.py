import io

import pytest

from nagata.discrete import (BUILTIN_MODELS, heisenberg_model, lamplighter_model,
                             zn_model)
from nagata.words import (BallMemoryError, WordBall, ball_to_csv, bfs_ball,
                          cached_ball, enumerate_words_ball, load_ball, save_ball)


def test_z2_unit_ball():
    assert len(bfs_ball(zn_model(2), 1)) == 5


def test_heisenberg_small_ball_size():
    # independent oracle: all words of length <= 2 modulo equality -> 17
    M = heisenberg_model()
    oracle = enumerate_words_ball(M, 2)
    assert len(oracle) == 17
    assert len(bfs_ball(M, 2)) == 17


def test_heisenberg_central_length():
    ball = bfs_ball(heisenberg_model(), 4)
    assert ball.lengths[(0, 0, 1)] == 4


@pytest.mark.parametrize("name", sorted(BUILTIN_MODELS))
def test_bfs_matches_word_enumeration(name):
    # acceptance criterion 9 (oracle equivalence), R <= 4
    M = BUILTIN_MODELS[name]()
    R = 4 if name != "lamplighter-Z2-Z2" else 4
    assert bfs_ball(M, R).lengths == enumerate_words_ball(M, R)


@pytest.mark.parametrize("name", ["Z^2", "heisenberg", "sol"])
def test_length_subadditive_and_symmetric(name):
    M = BUILTIN_MODELS[name]()
    ball = bfs_ball(M, 6)
    elems = list(ball.lengths)
    for g in elems[::37]:
        assert ball.lengths[g] == ball.lengths[M.inverse(g)]
        for h in elems[::53]:
            gh = M.multiply(g, h)
            if gh in ball.lengths:
                assert ball.lengths[gh] <= ball.lengths[g] + ball.lengths[h]


def test_unit_length_ball_properties():
    ball = bfs_ball(heisenberg_model(), 5)
    M = heisenberg_model()
    assert ball.lengths[M.identity] == 0
    for g, l in ball.lengths.items():
        for s in M.generator_elements():
            h = M.multiply(g, s)
            if h in ball.lengths:
                assert abs(ball.lengths[h] - l) <= 1


def test_memory_cap():
    with pytest.raises(BallMemoryError) as exc:
        bfs_ball(zn_model(2), 50, memory_cap_bytes=10_000)
    assert exc.value.radius_reached < 50


def test_cache_roundtrip(tmp_path):
    M = heisenberg_model()
    ball = bfs_ball(M, 5)
    path = tmp_path / "heis5.ball"
    save_ball(ball, path)
    loaded = load_ball(path)
    assert loaded.lengths == ball.lengths
    assert loaded.model_name == ball.model_name
    assert loaded.radius == 5 and loaded.gen_hash == ball.gen_hash

    c1 = cached_ball(M, 5, tmp_path)
    c2 = cached_ball(M, 5, tmp_path)
    assert c1.lengths == c2.lengths == ball.lengths


def test_cache_roundtrip_lamplighter(tmp_path):
    M = lamplighter_model()
    ball = bfs_ball(M, 4)
    save_ball(ball, tmp_path / "l.ball")
    assert load_ball(tmp_path / "l.ball").lengths == ball.lengths


def test_csv_export():
    fh = io.StringIO()
    ball_to_csv(bfs_ball(zn_model(1), 2), fh)
    lines = fh.getvalue().strip().splitlines()
    assert lines[0] == "element,length"
    assert len(lines) == 6  # header + 5 elements
