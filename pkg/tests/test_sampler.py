import math
from collections import Counter
from fractions import Fraction

import pytest
from scipy.stats import chisquare

from tandemwalks.kmsw import is_excursion, sigma_on_walks
from tandemwalks.oracle import exhaustive_walks
from tandemwalks.sampler import (HalfplaneSampler, WindowedSampler, interior_reachable, make_rng,
                                 reachable_in_window, sample_excursion_p1,
                                 sample_excursion_windowed, sample_halfplane, sample_quadrant, walk_probability)
from tandemwalks.steps import WeightSpec, is_confined, trajectory
from tandemwalks.stochastics import StepDistribution

U1 = StepDistribution.uniform_level(1)
MIXED = StepDistribution(2, Fraction(5, 12), (0, Fraction(1, 6), Fraction(1, 12)))
ALPHA = 1e-3


def halfplane_family(dist, n):
    spec = WeightSpec(dist.p, dist.zr, dist.z)
    return [w for w in exhaustive_walks(spec, n, region="upper_halfplane") if trajectory(w)[-1][1] == 0]


def test_halfplane_support_p1_n3():
    hs = HalfplaneSampler(U1, 1)
    seen = {hs.sample(3) for _ in range(2000)}
    assert seen == set(halfplane_family(U1, 3))


def test_halfplane_frequencies_n6():
    fam = halfplane_family(U1, 6)
    hs = HalfplaneSampler(U1, 2)
    N = 100_000
    got = Counter(hs.sample(6) for _ in range(N))
    assert set(got) <= set(fam)
    p = 1 / len(fam)  # all steps have probability 1/3, so the family is uniform
    se = math.sqrt(p * (1 - p) / N)
    for w in fam:
        assert abs(got[w] / N - p) <= 4 * se, w


def test_halfplane_chi_square_mixed():
    # 1347 walks: a per-walk 4 SE rule would misfire often, so test the whole table at once
    fam = halfplane_family(MIXED, 6)
    probs = [walk_probability(MIXED, w) for w in fam]
    total = sum(probs)
    hs = HalfplaneSampler(MIXED, 2)
    N = 200_000
    got = Counter(hs.sample(6) for _ in range(N))
    assert set(got) <= set(fam)
    assert chisquare([got[w] for w in fam], [N * float(v / total) for v in probs]).pvalue > ALPHA


def test_quadrant_is_sigma_of_halfplane():
    for seed in range(20):
        assert sample_quadrant(MIXED, 12, seed) == sigma_on_walks(sample_halfplane(MIXED, 12, seed))


def test_quadrant_chi_square_n4():
    spec = WeightSpec(1, (0, 1))
    fam = list(exhaustive_walks(spec, 4))
    hs = HalfplaneSampler(U1, 3)
    N = 100_000
    got = Counter(sigma_on_walks(hs.sample(4)) for _ in range(N))
    assert set(got) <= set(fam)
    w = [float(walk_probability(U1, x)) for x in fam]
    expected = [N * v / sum(w) for v in w]
    assert chisquare([got[x] for x in fam], expected).pvalue > ALPHA


def test_quadrant_preserves_statistics():
    hs = HalfplaneSampler(MIXED, 4)
    for _ in range(200):
        h = hs.sample(25)
        w = sigma_on_walks(h)
        assert w.levels() == h.levels()
        assert len(w) == 25 and is_confined(w, (0, 0))


def test_determinism():
    assert sample_halfplane(MIXED, 40, 9) == sample_halfplane(MIXED, 40, 9)
    assert sample_excursion_p1(30, 5) == sample_excursion_p1(30, 5)
    assert sample_excursion_windowed(U1, 10, 7) == sample_excursion_windowed(U1, 10, 7)


def test_p1_excursions():
    rng = make_rng(11)
    only = list(exhaustive_walks(WeightSpec(1, (0, 1)), 3, end=(0, 0)))
    assert {sample_excursion_p1(3, rng) for _ in range(50)} == set(only)
    N = 100_000
    got = Counter(sample_excursion_p1(6, rng) for _ in range(N))
    assert len(got) == 5
    se = math.sqrt(0.2 * 0.8 / N)
    assert all(abs(c / N - 0.2) <= 4 * se for c in got.values())
    w = sample_excursion_p1(300, rng)
    assert len(w) == 300 and is_excursion(w)
    with pytest.raises(ValueError):
        sample_excursion_p1(4, rng)


@pytest.mark.parametrize("dist", [U1, MIXED])
def test_windowed_excursions(dist):
    ws = WindowedSampler(dist, 12)
    for n in (3, 5, 20):
        for _ in range(20):
            out = ws.sample(n)
            assert 2 * n <= out.m <= 3 * n and len(out.walk) == out.m
            assert is_excursion(out.walk) and out.retries >= 0
    with pytest.raises(ValueError):
        ws.sample(0)


def test_windowed_small_n():
    # after one step every midpoint is on an axis, where the density g vanishes
    with pytest.raises(ValueError):
        WindowedSampler(U1, 0).sample(1)
    w = WindowedSampler(U1, 0, reject=False).sample(1).walk
    assert len(w) == 3 and is_excursion(w)
    # (0, 2) after one step needs three more steps to close up: w1 is redrawn, not retried forever
    for _ in range(20):
        assert is_excursion(WindowedSampler(MIXED, 0, reject=False).sample(1).walk)


def test_reachability():
    assert not reachable_in_window(MIXED, (2, 0), 1, 2)
    assert reachable_in_window(MIXED, (1, 0), 1, 2) and reachable_in_window(MIXED, (2, 0), 1, 3)
    assert [interior_reachable(U1, n) for n in range(1, 5)] == [False, False, True, True]


def test_windowed_requires_zero_drift():
    with pytest.raises(ValueError):
        WindowedSampler(StepDistribution(1, Fraction(1, 2), (0, Fraction(1, 4))), 0)


def test_halfplane_rejects_unnormalized():
    with pytest.raises(ValueError):
        HalfplaneSampler(StepDistribution(1, Fraction(1, 2), (0, Fraction(1, 2))), 0)
