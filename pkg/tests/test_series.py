from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tandemwalks import genfuncs as gf
from tandemwalks.oracle import count_halfplane_to_line, count_walks
from tandemwalks.series import LaurentPoly, TSeries
from tandemwalks.steps import WeightSpec
from tandemwalks.stochastics import StepDistribution

SPECS = [(1, (0, 1)), (2, (0, 0, 1)), (2, (1, 1, 1)), (1, (Fraction(1, 2), 2))]

coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)
laurent = st.dictionaries(st.tuples(st.integers(-3, 3)), coef, max_size=4).map(lambda d: LaurentPoly(("x",), d))


def x(k, c=1):
    return LaurentPoly(("x",), {(k,): c})


def test_laurent_basics():
    p = x(1) + x(-1, 2)
    assert (p * p).terms == {(2,): 1, (0,): 4, (-2,): 4}
    assert p.nonneg_part("x").terms == {(1,): 1}
    assert p.extract("x", -1).constant() == 2
    assert p.evaluate("x", 1).constant() == 3
    assert (p - p).is_zero()
    assert p.exponent_range("x") == (-1, 1)


@given(laurent, laurent, laurent)
def test_laurent_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@settings(max_examples=50, deadline=None)
@given(st.lists(coef, min_size=1, max_size=6), st.lists(coef, min_size=1, max_size=6))
def test_tseries_division(nums, dens):
    N = 6
    den = TSeries(0, [Fraction(1)] + dens, N)
    num = TSeries(0, nums, N)
    q = num * den.inverse()
    assert (q * den).scalars() == num.scalars()


def test_tseries_power_zero_keeps_precision():
    s = TSeries(-1, [1, 2], 5)
    assert (s ** 0).N >= 5
    assert (s ** 2)[-2].constant() == 1


def test_kernel():
    S = gf.step_polynomial(1, (5, 7))
    assert S.terms == {(1, -1): 1, (0, 0): 5, (-1, 0): 7, (0, 1): 7}
    S2 = gf.step_polynomial(2, (0, 0, 1))
    assert {e for e in S2.terms} == {(1, -1), (-2, 0), (-1, 1), (0, 2)}
    assert gf.step_polynomial(2, (0, 0, 0)).terms == {(1, -1): 1}


@pytest.mark.parametrize("p,z", SPECS)
def test_y1_root(p, z):
    N = 8
    Y = gf.y1_series(p, z, N)
    assert Y[1].terms == {(1,): 1}
    zs = [Fraction(v) for v in z]
    assert Y[2] == sum((x(1 - r, zs[r]) for r in range(p + 1)), LaurentPoly(("x",)))
    # kernel root: t x/Y + t sum_r z_r sum_i xbar^(r-i) Y^i = 1, multiplied through by Y
    rhs = TSeries.t_power(1, N, ("x",), x(1))
    for r, zr in enumerate(zs):
        for i in range(r + 1):
            rhs = rhs + TSeries.t_power(1, N, ("x",), x(-(r - i), zr)) * Y ** (i + 1)
    assert (rhs - Y).truncate(N - 1).valuation() is None
    assert gf.y1_series(p, z, N).evaluate("x", 1).scalars() == gf.w_series(p, z, N).scalars()


def test_motzkin_and_trivial():
    W = gf.w_series(1, (0, 1), 6)
    assert [W[k].constant() for k in range(1, 6)] == [1, 1, 2, 4, 9]
    Y = gf.y1_series(2, (0, 0, 0), 5)
    assert [Y[k].terms for k in range(6)] == [{}, {(1,): 1}, {}, {}, {}, {}]


@pytest.mark.parametrize("p,z", SPECS[:3])
def test_q0b_against_oracle(p, z):
    spec = WeightSpec(p, z)
    N = 8
    for b in range(3):
        Q = gf.q0b_x0(p, z, b, N)
        assert Q.valuation() == 0 or b and Q.valuation() >= 0
        for n in range(N + 1):
            got = Q[n]
            for (c,), v in got.terms.items():
                assert c >= 0
            for c in range(p * n + b + 1):
                assert got.coeff({"x": c}) == count_walks(spec, (0, b), (c, 0), n)
        ct = gf.q0b_constant_term(p, z, b, None, N)
        assert all(ct[n] == Q[n] for n in range(N + 1))


def test_q0b_examples():
    assert gf.q0b_x0(3, (1, 1, 1, 1), 0, 5)[4].coeff({"x": 0}) == 6
    assert gf.q0b_x0(1, (0, 1), 0, 3)[0].terms == {(0,): 1}


def test_p_polynomials_and_slice():
    P = gf.p_polynomials(1, (2, 3), 1, 4)
    assert P[1][-1].terms == {(-1,): 1}
    assert P[1][0].terms == {(-1,): -2, (-2,): -3}
    p, z = 2, (1, 1, 1)
    spec = WeightSpec(p, z)
    s0, q = gf.q0b_y_slice(p, z, 1, 0, 6), gf.q0b_x0(p, z, 1, 6)
    assert all(s0[n] == q[n] for n in range(7))
    for d in range(3):
        Q = gf.q0b_y_slice(p, z, 1, d, 6)
        for n in range(7):
            for c in range(p * n + 2):
                assert Q[n].coeff({"x": c}) == count_walks(spec, (0, 1), (c, d), n)


def test_tri_quad():
    tri = gf.tri_series(3)
    assert [tri[3 * k] for k in range(4)] == [1, 1, 5, 42]
    quad = gf.quad_series(3)
    assert [quad[2 * k] for k in range(3)] == [1, 0, 1]


@pytest.mark.parametrize("p,z", SPECS[:3])
def test_q11_and_halfplane(p, z):
    spec = WeightSpec(p, z)
    N = 7
    for a in range(3):
        for b in range(3):
            q = gf.a_i_and_q11(p, z, a, b, N)
            assert [q[n].constant() for n in range(N + 1)] == [count_walks(spec, (a, b), "any", n) for n in range(N + 1)]
            h = gf.halfplane_gf(p, z, a, b, N)
            assert [h[n].constant() for n in range(N + 1)] == [count_halfplane_to_line(spec, b, a, n) for n in range(N + 1)]
    assert all(A0.constant() == 1 for A0 in gf.a_polynomials(p, z, 0))
    W = gf.w_series(p, z, N + 1)
    assert [gf.halfplane_gf(p, z, 0, 1, N)[n].constant() for n in range(N)] == \
        [(W * W)[n + 1].constant() for n in range(N)]


def test_q11_motzkin():
    q = gf.a_i_and_q11(1, (0, 1), 0, 0, 5)
    assert [q[n].constant() for n in range(6)] == [1, 1, 2, 4, 9, 21]


def test_oned_identities():
    assert gf.oneD_identities({-1: 1, 1: 1}, 12)["ok"]
    assert gf.oneD_identities({-1: 1, 0: 1, 2: Fraction(1, 2)}, 10)["ok"]
    Y = gf.oned_y({-1: 0, 1: 1}, 6)
    assert Y.valuation() is None
    with pytest.raises(ValueError):
        gf.oneD_identities({-1: 1}, 21)


@pytest.mark.parametrize("dist", [StepDistribution.uniform_level(1), StepDistribution.uniform_level(2),
                                  StepDistribution(2, Fraction(5, 12), (0, Fraction(1, 6), Fraction(1, 12)))])
def test_invariant_identity(dist):
    assert gf.invariant_identity(dist, 10).is_zero()
    assert gf.invariant_identity(dist, 0).is_zero()
