import pytest
from hypothesis import given, strategies as st

from tandemwalks.steps import (SE, Face, Step, TandemWalk, WeightSpec, is_confined, parse_walk,
                               periodicity, step_vector, trajectory, walk_stats)
from tandemwalks.verify import EXAMPLE_WALK

steps_st = st.one_of(st.just(SE), st.tuples(st.integers(0, 3), st.integers(0, 3)).map(lambda ij: Face(*ij)))
walks_st = st.lists(steps_st, max_size=25).map(TandemWalk)


def test_step_vectors():
    assert step_vector(SE) == (1, -1)
    assert step_vector(Face(0, 0)) == (0, 0)
    assert step_vector(Face(2, 3)) == (-2, 3)
    assert Face(2, 3).level == 5 and SE.level is None


def test_walk_stats_examples():
    assert walk_stats(TandemWalk()).as_tuple() == (0, 0, 0, 0)
    assert walk_stats(EXAMPLE_WALK).as_tuple() == (3, 2, 1, 2)
    assert walk_stats(parse_walk([(0, 1)])).as_tuple() == (0, 0, 0, 1)


def test_confinement():
    assert not is_confined(parse_walk(["SE"]), (0, 0))
    assert is_confined(parse_walk([(0, 1), "SE"]), (0, 0))
    assert not is_confined(parse_walk(["SE"]), (0, 0), "upper_halfplane")
    assert is_confined(parse_walk(["SE"]), (0, 1), "upper_halfplane")
    assert is_confined(parse_walk(["SE"] * 5), (0, 0), "none")
    with pytest.raises(ValueError):
        is_confined(TandemWalk(), (0, 0), "disc")


def test_periodicity():
    assert periodicity([1]) == periodicity([1])
    p1, p2, p01 = periodicity([1]), periodicity([2]), periodicity([0, 1])
    assert (p1.iota, p1.period, p1.lattice) == (3, 3, "full")
    assert (p2.iota, p2.period, p2.lattice) == (4, 2, "even_sum")
    assert (p01.iota, p01.period, p01.lattice) == (1, 1, "full")
    assert p1.reachable(3, (0, 0)) and not p1.reachable(4, (0, 0))
    for bad in ([], [0]):
        with pytest.raises(ValueError):
            periodicity(bad)


def test_weight_spec():
    spec = WeightSpec(2, (0, 1, 3))
    assert spec.weight(SE) == 1
    assert spec.weight(Face(1, 1)) == 3 and spec.weight(Face(0, 0)) == 0
    assert len(spec.steps()) == 1 + 2 + 3
    with pytest.raises(ValueError):
        WeightSpec(2, (1, 1))


@given(walks_st)
def test_json_round_trip(w):
    assert TandemWalk.from_json(w.to_json()) == w


@given(walks_st)
def test_stats_are_shift_free(w):
    # stats only depend on the shape of the path, not where it starts
    a, b, c, d = walk_stats(w).as_tuple()
    pts = trajectory(w, (5, -7))
    xs, ys = [x for x, _ in pts], [y for _, y in pts]
    assert (a, b, c, d) == (5 - min(xs), -7 - min(ys), pts[-1][0] - min(xs), pts[-1][1] - min(ys))
    assert is_confined(w, (a, b))


@given(walks_st)
def test_displacement_congruence(w):
    lv = set(w.levels())
    if not lv or lv == {0}:
        return
    x, y = trajectory(w)[-1]
    assert periodicity(lv).reachable(len(w), (x, y))


def test_step_rejects_negative():
    with pytest.raises(ValueError):
        Step(-1, 0)
