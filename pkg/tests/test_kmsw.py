from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from tandemwalks.kmsw import (bipolar_to_excursion, excursion_to_bipolar, is_excursion, phi, phi_inverse,
                              rho_on_walks, sigma_on_walks)
from tandemwalks.maps import rho, sigma, signature, unit_orientation, validate
from tandemwalks.oracle import exhaustive_walks
from tandemwalks.sampler import walk_probability
from tandemwalks.steps import SE, Face, TandemWalk, WeightSpec, is_confined, parse_walk, trajectory, walk_stats
from tandemwalks.stochastics import StepDistribution
from tandemwalks.verify import EXAMPLE_WALK

steps_st = st.one_of(st.just(SE), st.tuples(st.integers(0, 3), st.integers(0, 3)).map(lambda ij: Face(*ij)))
walks_st = st.lists(steps_st, max_size=30).map(TandemWalk)


def test_phi_examples():
    assert phi(TandemWalk()).canonical_key() == unit_orientation().canonical_key()
    assert phi_inverse(unit_orientation()) == TandemWalk()
    assert phi(EXAMPLE_WALK).n_plain_edges() == 11
    O = phi(parse_walk([(0, 1), "SE"]))
    assert O.n_plain_edges() == 3
    # hand execution of the two update rules gives (0, 0, 1, 0); see the decisions ledger
    assert signature(O).as_tuple() == (0, 0, 1, 0)


@settings(max_examples=300, deadline=None)
@given(walks_st)
def test_round_trip_and_statistics(w):
    O = phi(w)
    assert validate(O)
    assert phi_inverse(O) == w
    assert signature(O).as_tuple() == walk_stats(w).as_tuple()
    assert O.n_plain_edges() == len(w) + 1
    assert len(O.plain_vertices()) == w.n_se()
    census = face_census_of(w)
    assert O.face_census()[0] == census


def face_census_of(w):
    return dict(Counter(s.level + 2 for s in w if s.i is not None))


@settings(max_examples=200, deadline=None)
@given(walks_st)
def test_involutions_commute_with_phi(w):
    assert rho_on_walks(rho_on_walks(w)) == w
    assert sigma_on_walks(sigma_on_walks(w)) == w
    assert phi(rho_on_walks(w)).canonical_key() == rho(phi(w)).canonical_key()
    assert phi(sigma_on_walks(w)).canonical_key() == sigma(phi(w)).canonical_key()


def test_rho_on_walks_example():
    assert rho_on_walks(parse_walk([(1, 2), "SE"])) == parse_walk(["SE", (2, 1)])


def test_sigma_example_and_weights():
    s = sigma_on_walks(EXAMPLE_WALK)
    assert walk_stats(s).as_tuple() == (2, 2, 1, 3)
    assert len(s) == len(EXAMPLE_WALK) and s.levels() == EXAMPLE_WALK.levels()
    d = StepDistribution(3, 0, (0, 0, 0, 1))
    assert walk_probability(d, s) == walk_probability(d, EXAMPLE_WALK)


def test_sigma_on_quadrant_walks():
    # quadrant walks from the origin have stats (0, 0, c, d); sigma sends them to (d, 0, c, 0)
    for w in exhaustive_walks(WeightSpec(2), 5):
        _, _, c, d = walk_stats(w).as_tuple()
        h = sigma_on_walks(w)
        assert walk_stats(h).as_tuple() == (d, 0, c, 0)
        assert is_confined(h, (d, 0))


def test_excursions_and_bipolar():
    exc = [w for w in exhaustive_walks(WeightSpec(3), 4, end=(0, 0))]
    maps = {excursion_to_bipolar(w).canonical_key() for w in exc}
    assert len(exc) == 6 and len(maps) == 6
    for w in exc:
        assert is_excursion(w)
        B = excursion_to_bipolar(w)
        assert B.n_edges == 3
        assert bipolar_to_excursion(B) == w
    tri = list(exhaustive_walks(WeightSpec(1, (0, 1)), 3, end=(0, 0)))
    assert len(tri) == 1
    with pytest.raises(ValueError):
        excursion_to_bipolar(TandemWalk())


def test_phi_inverse_rejects_garbage():
    O = phi(parse_walk([(0, 1), "SE", (1, 0)]))
    assert phi_inverse(O) == parse_walk([(0, 1), "SE", (1, 0)])
    assert trajectory(phi_inverse(O))[-1] == (0, 0)
