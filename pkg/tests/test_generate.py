import pytest

from topolines.arrangement import PairClass, build_arrangement
from topolines.formats import emit_arrangement
from topolines.generate import random_arrangement, random_lines


def test_seed_determinism():
    assert emit_arrangement(random_lines(7, 6)) == emit_arrangement(random_lines(7, 6))


def test_small_instance():
    lines = random_lines(1, 2)
    assert [t.id for t in lines] == ["L1", "L2"]
    build_arrangement(lines)


def test_hundred_seeds_are_valid():
    for seed in range(100):
        arr = random_arrangement(seed, 1 + seed % 8, 1 + seed % 10)
        assert len(arr) == 1 + seed % 8


def test_vertex_budget():
    for seed in range(30):
        assert all(len(t.vertices) <= 3 for t in random_lines(seed, 5, 3))


@pytest.mark.parametrize("n, mv", [(-1, 4), (13, 4), (3, 0), (3, 11)])
def test_size_limits(n, mv):
    with pytest.raises(ValueError):
        random_lines(0, n, mv)


def test_mix_of_configurations():
    seen = set()
    for seed in range(60):
        seen.update(random_arrangement(seed, 6).pair_table.values())
    assert seen == {PairClass.CROSSING, PairClass.TOUCHING, PairClass.DISJOINT}
