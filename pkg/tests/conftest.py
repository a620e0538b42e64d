import pytest

from nagata.discrete import heisenberg_model, lamplighter_model, sol_lattice_model
from nagata.words import WordBall, bfs_ball


@pytest.fixture(scope="session")
def heis_table60():
    """Heisenberg lengths out to radius 60: serves every R <= 30 carrier
    with true pairwise word distances, and R <= 60 length lookups."""
    return bfs_ball(heisenberg_model(), 60)


@pytest.fixture(scope="session")
def heis_ball(heis_table60):
    def at(radius: int) -> WordBall:
        assert radius <= 60
        return WordBall(heis_table60.model_name, heis_table60.gen_hash, radius,
                        {g: l for g, l in heis_table60.lengths.items() if l <= radius})
    return at


@pytest.fixture(scope="session")
def sol_ball14():
    return bfs_ball(sol_lattice_model(), 14)


@pytest.fixture(scope="session")
def lamp_ball12():
    return bfs_ball(lamplighter_model(), 12)
