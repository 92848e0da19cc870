import math
from fractions import Fraction

import pytest

from tandemwalks import stochastics as sto
from tandemwalks.oracle import survival_probability
from tandemwalks.stochastics import StepDistribution

U1 = StepDistribution.uniform_level(1)
U2 = StepDistribution.uniform_level(2)
MIXED = StepDistribution(2, Fraction(5, 12), (0, Fraction(1, 6), Fraction(1, 12)))


def test_uniform_levels():
    assert (U1.z, U1.zr) == (Fraction(1, 3), (0, Fraction(1, 3)))
    assert (U2.z, U2.zr) == (Fraction(1, 2), (0, 0, Fraction(1, 6)))
    for d in (U1, U2, MIXED):
        assert d.total() == 1 and d.is_zero_drift()
    assert (U1.iota(), U2.iota()) == (3, 4)


def test_drift_and_covariance():
    drift, cov, s2 = sto.drift_and_covariance(U1)
    assert drift == (0, 0) and s2 == Fraction(1, 3)
    assert cov == ((2 * s2, -s2), (-s2, 2 * s2))
    assert sto.drift_and_covariance(U2)[2] == Fraction(2, 3)
    heavy = StepDistribution(1, Fraction(1, 2), (0, Fraction(1, 4)))
    assert sto.drift_and_covariance(heavy)[0] != (0, 0)
    with pytest.raises(ValueError):
        sto.drift_and_covariance(StepDistribution(1, Fraction(1, 2), (0, Fraction(1, 2))))


def test_normalize_weights():
    alpha, gamma, d = sto.normalize_weights([0, 1])
    assert alpha == pytest.approx(1) and gamma == pytest.approx(3)
    assert float(d.sigma2()) == pytest.approx(1 / 3)
    alpha, gamma, d = sto.normalize_weights([0, 0, 1])
    assert alpha == pytest.approx(3 ** 0.25, rel=1e-13) and gamma == pytest.approx(2 * math.sqrt(3), rel=1e-13)
    assert float(d.sigma2()) == pytest.approx(2 / 3)
    _, _, d5 = sto.normalize_weights([5, 0, 5])
    assert d5.is_normalized() and d5.is_zero_drift()
    with pytest.raises(ValueError):
        sto.normalize_weights([1, 0, 0])


def test_harmonic_values():
    h1 = sto.HarmonicFunction(U1)
    for a in range(8):
        for b in range(8):
            assert h1.rational_part(a, b) == 3 * (a + 1) * (b + 1) * (a + b + 2)
    assert sto.harmonic_V(U1, 0, 0).value == pytest.approx(6 * math.sqrt(3))
    assert sto.harmonic_V(U2, 0, 0).value == pytest.approx(2 * math.sqrt(6))
    # sigma^3 V(a, b) approaches (a+1)(b+1)(a+b+2)
    v = sto.harmonic_V(U2, 40, 40)
    assert v.value * math.sqrt(2 / 3) ** 3 / (41 * 41 * 82) == pytest.approx(1, abs=0.01)


@pytest.mark.parametrize("dist", [U1, U2, MIXED])
def test_harmonicity(dist):
    res = sto.check_harmonicity(dist, 30, 30, 10)
    assert res == {"killed_residual": 0, "free_residual": 0}


def test_v_infinity():
    assert sto.v_infinity(2, 3) == 2 * 3 * 5
    assert sto.v_infinity_shifted(0, 0) == 2


def test_kappa():
    k3 = sto.kappa_bipolar([3], 0, 0)
    assert k3.kappa == pytest.approx(243 / (math.sqrt(3) * math.pi), rel=1e-12)
    assert k3.kappa / 81 == pytest.approx(math.sqrt(3) / math.pi, rel=1e-12)
    k4 = sto.kappa_bipolar([4], 0, 0)
    assert k4.kappa / 16 == pytest.approx(9 / (4 * math.sqrt(3) * math.pi), rel=1e-12)
    assert (k3.iota, k4.iota) == (3, 4)
    assert sto.kappa([0, 1], 0, 0, 0, 0).kappa == pytest.approx(
        3 * (6 * math.sqrt(3)) ** 2 / (4 * math.sqrt(3) * math.pi / 3), rel=1e-12)


def test_quadrant_dp_matches_exact():
    curve = sto.survival_curve(U1, (1, 0), 8)
    for n in range(9):
        assert curve[n] == pytest.approx(float(survival_probability(U1, (1, 0), n)), rel=1e-12)


def test_limit_diagnostics():
    diag = sto.limit_diagnostics(U1, 0, 0, 0, 0, 300, checkpoints=[50, 200, 300])
    assert abs(diag.survival_ratios[200] - 1) < 0.10
    assert abs(diag.survival_ratios[200] - 1) < abs(diag.survival_ratios[50] - 1)
    assert diag.last_local_n % 3 == 0 and abs(diag.last_local - 1) < 0.15
    assert sto.local_curve(U1, (0, 0), (0, 0), 10)[4] == 0


def test_g():
    assert sto.g(3.0, 0.0) == 0 and sto.g(0.0, 2.0) == 0 and sto.g(-1.0, 1.0) == 0
    x0, y0 = sto.G0_POINT
    for dx in (-0.05, 0.05):
        assert sto.g(x0 + dx, y0) < sto.g0 and sto.g(x0, y0 + dx) < sto.g0


def test_exit_identity():
    e1 = sto.exit_identity(U1, 1, 2, 50)
    assert e1.lhs_exact == 0
    e2 = sto.exit_identity(U2, 0, 0, 500)
    assert e2.lhs_exact == Fraction(-2, 3)
    assert abs(e2.rhs_estimate - e2.lhs) <= 0.15 * abs(e2.lhs)
