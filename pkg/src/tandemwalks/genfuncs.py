"""Generating functions of quadrant and half-plane tandem walks.

Every function returns a ``TSeries`` truncated at an explicit order N.
Level weights z_0..z_p are exact numbers (``Fraction``-compatible), so
the only formal variables are x (and y or z for constant terms).  All
outputs are checked against the DP oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .series import LaurentPoly, TSeries
from .steps import WeightSpec

X = ("x",)
XY = ("x", "y")
XZ = ("x", "z")


def _zs(p: int, weights) -> tuple[Fraction, ...]:
    if isinstance(weights, WeightSpec):
        if weights.p != p:
            raise ValueError("p does not match the weight spec")
        return weights.z
    return WeightSpec(p, tuple(weights) if weights is not None else ()).z


def _mono(variables, c=1, **exps) -> LaurentPoly:
    return LaurentPoly.monomial(variables, exps, c)


def _lift(poly, variables: tuple) -> LaurentPoly:
    """Re-express a LaurentPoly (or a number) over a larger variable list."""
    if not isinstance(poly, LaurentPoly):
        return LaurentPoly.const(poly, variables)
    idx = [poly.vars.index(v) if v in poly.vars else None for v in variables]
    missing = set(poly.vars) - set(variables)
    if any(any(e[poly.vars.index(v)] for e in poly.terms) for v in missing):
        raise ValueError(f"cannot drop variables {missing}")
    return LaurentPoly._raw(variables, {tuple(e[i] if i is not None else 0 for i in idx): c
                                        for e, c in poly.terms.items()})


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Kernel:
    S: LaurentPoly

    def K(self, N: int) -> TSeries:
        """1 - t S as a series (exact beyond order 1)."""
        return TSeries(0, [LaurentPoly.const(1, self.S.vars), -self.S], N, self.S.vars)


def step_polynomial(p: int, weights, variables=XY) -> LaurentPoly:
    """S = x/y + sum_r z_r sum_i xbar^(r-i) y^i, with the second variable named as given."""
    zs = _zs(p, weights)
    xv, yv = variables
    S = _mono(variables, 1, **{xv: 1, yv: -1})
    for r, zr in enumerate(zs):
        if zr:
            for i in range(r + 1):
                S = S + _mono(variables, zr, **{xv: -(r - i), yv: i})
    return S


def kernel(p: int, weights=None) -> Kernel:
    return Kernel(step_polynomial(p, weights))


def _dS_dy(p: int, weights, variables=XY) -> LaurentPoly:
    """Partial derivative of S in its second variable."""
    S = step_polynomial(p, weights, variables)
    k = 1
    out = {}
    for e, c in S.terms.items():
        if e[k]:
            out[(e[0], e[1] - 1)] = c * e[k]
    return LaurentPoly._raw(tuple(variables), out)


# ---------------------------------------------------------------------------
# Y_1 and W
# ---------------------------------------------------------------------------

def _y1(zs, N: int, x: LaurentPoly) -> TSeries:
    variables = x.vars
    xbar = LaurentPoly.const(1, variables) / x
    # coefficient polynomials c_i = sum_{r >= i} z_r xbar^(r-i), multiplying Y^(i+1)
    cs = []
    for i in range(len(zs)):
        c = LaurentPoly._raw(variables, {})
        for r in range(i, len(zs)):
            if zs[r]:
                c = c + (xbar ** (r - i)) * zs[r]
        cs.append(c)
    Y = TSeries(1, [x], N, variables)
    for _ in range(N):
        acc = TSeries(0, [x], N - 1, variables)
        power = Y.truncate(N - 1)
        for c in cs:
            if c.terms:
                acc = acc + power * c
            power = power * Y.truncate(N - 1)
        Y = acc.shift(1)
    return Y


def y1_series(p: int, weights, N: int, with_x: bool = True) -> TSeries:
    """The half-plane root Y_1(x) of K(x, Y_1) = 0, to order t^N.  With ``with_x=False``, W = Y_1(1)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    zs = _zs(p, weights)
    x = _mono(X, x=1) if with_x else LaurentPoly.const(1)
    return _y1(zs, N, x)


def w_series(p: int, weights, N: int) -> TSeries:
    return y1_series(p, weights, N, with_x=False)


# ---------------------------------------------------------------------------
# Q^{(0,b)}(x, 0) and its y-slices
# ---------------------------------------------------------------------------

def _boundary_factor(zs, N: int, variables=X) -> TSeries:
    """1 - xbar^2/t + sum_r z_r (r+1) xbar^(r+2), exact (a Laurent polynomial in t)."""
    c0 = LaurentPoly.const(1, variables)
    for r, zr in enumerate(zs):
        if zr:
            c0 = c0 + _mono(variables, zr * (r + 1), x=-(r + 2))
    return TSeries(-1, [-_mono(variables, 1, x=-2), c0], N, variables)


def _sum_powers(Y: TSeries, b: int) -> TSeries:
    """Y^b + Y^(b-1) xbar + ... + xbar^b."""
    xbar = _mono(X, x=-1)
    acc = TSeries.const(_mono(X, x=-b), Y.N, X)
    power = TSeries.const(LaurentPoly.const(1, X), Y.N, X)
    for k in range(1, b + 1):
        power = power * Y
        acc = acc + power * (xbar ** (b - k))
    return acc


def _check_x_bounds(series: TSeries, p: int, b: int) -> None:
    for n in range(max(series.min_order, 0), series.N + 1):
        rng = series[n].exponent_range("x")
        if rng and (rng[0] < -(p * n + b + 2) or rng[1] > n + 1):
            raise ArithmeticError(f"x-exponents {rng} at t^{n} outside the expected window")


def _q0b_integrand(zs, p: int, b: int, N: int) -> TSeries:
    """(Y_1/(tx)) (Y_1^b + ... + xbar^b) (1 - 1/(t x^2) + sum z_r (r+1) xbar^(r+2)), to order N."""
    Y = _y1(zs, N + 2, _mono(X, x=1))
    H = Y.shift(-1) * _mono(X, x=-1)
    out = H * _sum_powers(Y, b) * _boundary_factor(zs, N + 5)
    return out.truncate(N)


def _nonneg_checked(series: TSeries) -> TSeries:
    series = series.nonneg_part("x")
    for k in range(series.min_order, 0):
        if series[k].terms:
            raise ArithmeticError(f"nonzero coefficient at t^{k} after [x^>=]: {series[k]}")
    return TSeries(0, [series[k] for k in range(0, series.N + 1)], series.N, series.vars)


def q0b_x0(p: int, weights, b: int, N: int) -> TSeries:
    """Q^{(0,b)}(x, 0) to order t^N: quadrant walks from (0,b) ending on the x-axis."""
    if b < 0:
        raise ValueError("b must be >= 0")
    zs = _zs(p, weights)
    out = _nonneg_checked(_q0b_integrand(zs, p, b, N))
    _check_x_bounds(out, p, b)
    return out


def p_polynomials(p: int, weights, d_max: int, N: int) -> list[TSeries]:
    """P_0..P_{d_max}: polynomials in 1/t and xbar from the linear recurrence."""
    zs = _zs(p, weights)
    P = [TSeries.const(LaurentPoly.const(1, X), N, X)]
    for d in range(d_max):
        nxt = (P[d] * _mono(X, x=-1)).shift(-1)
        for r, zr in enumerate(zs):
            if not zr:
                continue
            for i in range(r + 1):
                if d - i >= 0:
                    nxt = nxt - P[d - i] * _mono(X, zr, x=-(r - i + 1))
        P.append(nxt)
    return P


def q0b_y_slice(p: int, weights, b: int, d: int, N: int) -> TSeries:
    """[y^d] Q^{(0,b)}(x, y) to order t^N."""
    if b < 0 or d < 0:
        raise ValueError("b and d must be >= 0")
    zs = _zs(p, weights)
    Pd = p_polynomials(p, zs, d, N + 2 * d + 2)[d]
    integrand = _q0b_integrand(zs, p, b, N + d + 1)
    return _nonneg_checked((integrand * Pd).truncate(N))


# ---------------------------------------------------------------------------
# constant-term forms
# ---------------------------------------------------------------------------

def _inverse_kernel(S: LaurentPoly, N: int) -> TSeries:
    """1/(1 - tS) = sum_n t^n S^n."""
    coeffs = [LaurentPoly.const(1, S.vars)]
    for _ in range(N):
        coeffs.append(coeffs[-1] * S)
    return TSeries(0, coeffs, N, S.vars)


def q0b_constant_term(p: int, weights, b: int, c: int | None, N: int) -> TSeries:
    """Q^{(0,b)}(x,0) as [x^>=][z^0] of a rational function (or [x^c][z^0] when c is given).

    The integrand is -(z^2/x) S'_2(x,z)/K(x,z) (z^b + ... + xbar^b)
    (1 - xbar^2/t + sum z_r (r+1) xbar^(r+2)), expanded in t.
    """
    zs = _zs(p, weights)
    S = step_polynomial(p, zs, XZ)
    front = _dS_dy(p, zs, XZ) * _mono(XZ, -1, z=2, x=-1)
    geo = LaurentPoly._raw(XZ, {})
    for k in range(b + 1):
        geo = geo + _mono(XZ, 1, z=k, x=-(b - k))
    bf = _boundary_factor(zs, N + 2, XZ)
    integrand = _inverse_kernel(S, N + 1) * (front * geo) * bf
    integrand = integrand.truncate(N).extract("z", 0)
    integrand = integrand.map(lambda q: LaurentPoly._raw(X, {(e[0],): v for e, v in q.terms.items()}))
    if c is None:
        return _nonneg_checked(integrand)
    out = integrand.extract("x", c)
    return TSeries(0, [out[k] for k in range(0, N + 1)], N, X)


def q0000_constant_term(p: int, N: int) -> TSeries:
    """Q^{(0,0)}(0,0) with z_p = 1 and all other z_r = 0, by the constant-term formula."""
    zs = [0] * p + [1]
    return q0b_constant_term(p, zs, 0, 0, N)


def _printed_ct(numerator_z: LaurentPoly, boundary: tuple[LaurentPoly, LaurentPoly], S: LaurentPoly,
                N: int) -> list[Fraction]:
    integrand = _inverse_kernel(S, N + 1) * numerator_z * TSeries(-1, list(boundary), N + 2, XZ)
    integrand = integrand.truncate(N)
    return [integrand[k].coeff({"x": 0, "z": 0}) for k in range(0, N + 1)]


def tri_series(k_max: int) -> list[Fraction]:
    """Coefficients of t^0..t^(3 k_max) of the triangulation constant term."""
    S = _mono(XZ, x=1, z=-1) + _mono(XZ, x=-1) + _mono(XZ, z=1)
    num = LaurentPoly.const(1, XZ) - _mono(XZ, x=-1, z=2)
    bnd = (-_mono(XZ, x=-2), LaurentPoly.const(1, XZ) + _mono(XZ, 2, x=-3))
    return _printed_ct(num, bnd, S, 3 * k_max)


def quad_series(k_max: int) -> list[Fraction]:
    """Coefficients of t^0..t^(2 k_max) of the quadrangulation constant term."""
    S = _mono(XZ, x=1, z=-1) + _mono(XZ, x=-2) + _mono(XZ, x=-1, z=1) + _mono(XZ, z=2)
    num = LaurentPoly.const(1, XZ) - _mono(XZ, x=-2, z=2) - _mono(XZ, 2, x=-1, z=3)
    bnd = (-_mono(XZ, x=-2), LaurentPoly.const(1, XZ) + _mono(XZ, 3, x=-4))
    return _printed_ct(num, bnd, S, 2 * k_max)


# ---------------------------------------------------------------------------
# Q^{(a,b)}(1,1), A_i and half-plane walks
# ---------------------------------------------------------------------------

def a_polynomials(p: int, weights, i_max: int) -> list[LaurentPoly]:
    """A_0..A_{i_max} as polynomials in W: [u^i] 1/(1 - uW sum u^i W^k sum_{r>i+k} z_r)."""
    zs = _zs(p, weights)
    Wv = ("W",)
    G = []
    for m in range(max(p, 1)):
        g = LaurentPoly._raw(Wv, {})
        for k in range(p + 1):
            tail = sum(zs[r] for r in range(m + k + 1, p + 1))
            if tail:
                g = g + _mono(Wv, tail, W=k + 1)
        G.append(g)
    A = [LaurentPoly.const(1, Wv)]
    for i in range(1, i_max + 1):
        acc = LaurentPoly._raw(Wv, {})
        for m in range(1, i + 1):
            if m - 1 < len(G) and G[m - 1].terms:
                acc = acc + G[m - 1] * A[i - m]
        A.append(acc)
    return A


def _substitute_w(poly: LaurentPoly, W: TSeries) -> TSeries:
    coeffs = poly.univariate("W") if poly.terms else {}
    out = TSeries.const(LaurentPoly.const(0), W.N)
    power = TSeries.const(LaurentPoly.const(1), W.N)
    for k in range(max(coeffs, default=-1) + 1):
        if k:
            power = power * W
        if coeffs.get(k):
            out = out + power * coeffs[k]
    return out


def a_i_and_q11(p: int, weights, a: int, b: int, N: int) -> TSeries:
    """Q^{(a,b)}(1,1) = (W/t) (A_0 + ... + A_a)(1 + W + ... + W^b), to order t^N."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be >= 0")
    W = w_series(p, weights, N + 1)
    A = a_polynomials(p, weights, a)
    sum_a = _substitute_w(sum(A[1:], A[0]), W)
    geo = _substitute_w(sum((LaurentPoly.monomial(("W",), {"W": j}) for j in range(1, b + 1)),
                            LaurentPoly.const(1, ("W",))), W)
    return (W.shift(-1) * sum_a * geo).truncate(N)


def halfplane_gf(p: int, weights, a: int, b: int, N: int) -> TSeries:
    """H^{b->a}: half-plane walks from height b to height a that touch the x-axis, (W/t) A_a W^b."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be >= 0")
    W = w_series(p, weights, N + 1)
    A = a_polynomials(p, weights, a)[a]
    return (W.shift(-1) * _substitute_w(A * LaurentPoly.monomial(("W",), {"W": b}), W)).truncate(N)


# ---------------------------------------------------------------------------
# one-dimensional walks
# ---------------------------------------------------------------------------

def _weights_1d(w: Mapping[int, object]) -> tuple[dict[int, LaurentPoly], tuple]:
    variables: tuple = ()
    for v in w.values():
        if isinstance(v, LaurentPoly) and v.vars:
            variables = v.vars
    out = {i: _lift(v, variables) for i, v in w.items() if (v.terms if isinstance(v, LaurentPoly) else v)}
    if min(out, default=0) < -1:
        raise ValueError("1D steps must be >= -1")
    return out, variables


def oned_y(w: Mapping[int, object], N: int) -> TSeries:
    """Y = L_1, the root of Y = t sum_i w_i Y^(i+1)."""
    ws, variables = _weights_1d(w)
    Y = TSeries(1, [], N, variables)
    for _ in range(N):
        acc = TSeries(0, [], N - 1, variables)
        for i, wi in ws.items():
            acc = acc + (Y.truncate(N - 1) ** (i + 1)) * wi
        Y = acc.shift(1)
    return Y


def oned_dp(w: Mapping[int, object], start: int, end: int, n: int, floor: int, strict_until_end: bool = False):
    """Weighted 1D walks of length n from ``start`` to ``end`` with heights >= floor.

    With ``strict_until_end`` every height before the last point must be > end.
    """
    ws, variables = _weights_1d(w)
    row = {start: LaurentPoly.const(1, variables)}
    for k in range(n):
        new: dict = {}
        for hgt, v in row.items():
            for i, wi in ws.items():
                h2 = hgt + i
                if h2 < floor:
                    continue
                if strict_until_end and k < n - 1 and h2 <= end:
                    continue
                new[h2] = new.get(h2, LaurentPoly._raw(variables, {})) + v * wi
        row = new
    return row.get(end, LaurentPoly._raw(variables, {}))


def oned_h(w: Mapping[int, object], a: int, N: int) -> TSeries:
    """H_a = Y/(t w_{-1}) [u^a] 1/(1 - (uY/w_{-1}) sum_{j,k} w_{j+k+1} u^k Y^j)."""
    ws, variables = _weights_1d(w)
    if -1 not in ws:
        raise ValueError("w_{-1} must be nonzero")
    inv_down = LaurentPoly.const(1, variables) / ws[-1]
    Y = oned_y(w, N + 1)
    top = max(ws)
    G = []
    for k in range(max(top, 1)):
        g = TSeries(0, [], N + 1, variables)
        power = TSeries.const(LaurentPoly.const(1, variables), N + 1, variables)
        for j in range(top + 1):
            wjk = ws.get(j + k + 1)
            if wjk is not None:
                g = g + power * wjk
            power = power * Y
        G.append(g * Y * inv_down)
    A = [TSeries.const(LaurentPoly.const(1, variables), N + 1, variables)]
    for i in range(1, a + 1):
        acc = TSeries(0, [], N + 1, variables)
        for m in range(1, i + 1):
            if m - 1 < len(G):
                acc = acc + G[m - 1] * A[i - m]
        A.append(acc)
    return (Y.shift(-1) * inv_down * A[a]).truncate(N)


def oned_l_constant_term(w: Mapping[int, object], k: int, N: int) -> TSeries:
    """-t [y^0] y^(1+k) S'(y)/K(y), with S(y) = sum w_i y^i."""
    ws, variables = _weights_1d(w)
    V = variables + ("y",)
    S = LaurentPoly._raw(V, {})
    dS = LaurentPoly._raw(V, {})
    for i, wi in ws.items():
        S = S + _lift(wi, V) * LaurentPoly.monomial(V, {"y": i})
        if i:
            dS = dS + _lift(wi, V) * LaurentPoly.monomial(V, {"y": i - 1}, i)
    body = _inverse_kernel(S, N) * (dS * LaurentPoly.monomial(V, {"y": 1 + k}, -1))
    out = body.shift(1).truncate(N).extract("y", 0)
    return out.map(lambda q: LaurentPoly._raw(variables, {e[:-1]: c for e, c in q.terms.items()}))


def oneD_identities(w: Mapping[int, object], N: int, a_max: int = 3, k_max: int = 3) -> dict:
    """Check the 1D half-line identities coefficientwise against the 1D DP, to order t^N."""
    if N > 20:
        raise ValueError("N must be <= 20")
    ws, variables = _weights_1d(w)
    mismatches = []
    Y = oned_y(w, N)
    zero = LaurentPoly._raw(variables, {})
    if -1 in ws:
        for a in range(a_max + 1):
            H = oned_h(w, a, N)
            for n in range(N + 1):
                if H[n] != oned_dp(w, 0, a, n, 0):
                    mismatches.append(("H", a, n))
    for k in range(1, k_max + 1):
        Yk = Y ** k
        L = oned_l_constant_term(w, k, N)
        for n in range(N + 1):
            dp = oned_dp(w, 0, -k, n, -k, strict_until_end=True) if n else zero
            if Yk[n] != dp:
                mismatches.append(("Y^k", k, n))
            if L[n] != dp:
                mismatches.append(("L_k", k, n))
    return {"ok": not mismatches, "mismatches": mismatches, "order": N}


def tandem_1d_weights(p: int, weights, with_x: bool) -> dict[int, object]:
    """1D projection weights: w_{-1} = x (or 1), w_s = sum_{r>=s} xbar^(r-s) z_r (or sum z_r)."""
    zs = _zs(p, weights)
    if with_x:
        out: dict[int, object] = {-1: _mono(X, x=1)}
        for s in range(p + 1):
            out[s] = sum((_mono(X, zs[r], x=-(r - s)) for r in range(s, p + 1) if zs[r]),
                         LaurentPoly._raw(X, {}))
        return out
    out = {-1: Fraction(1)}
    for s in range(p + 1):
        out[s] = sum(zs[s:], Fraction(0))
    return out


# ---------------------------------------------------------------------------
# Tutte invariant
# ---------------------------------------------------------------------------

def _series_div(num: Sequence[Fraction], den: Sequence[Fraction], M: int) -> list[Fraction]:
    den = list(den) + [Fraction(0)] * (M + 1)
    num = list(num) + [Fraction(0)] * (M + 1)
    if not den[0]:
        raise ZeroDivisionError("denominator has zero constant term")
    out: list[Fraction] = []
    for k in range(M + 1):
        acc = num[k] - sum(out[i] * den[k - i] for i in range(k))
        out.append(acc / den[0])
    return out


def invariant_identity(dist, M: int) -> LaurentPoly:
    """u V(u,0) - (2/sigma)/(I_0(u) - I_0(1)) to order u^M, with the 2/sigma factor removed.

    Compares u/((1-u)^3 Lambda(u)) with u/(u(I_0(u) - I_0(1))) as power series; returns
    the difference as a polynomial in u (zero when the identity holds).
    """
    from .stochastics import lambda_coefficients
    if not dist.is_normalized():
        raise ValueError("step distribution is not normalized")
    z, zr = Fraction(dist.z), [Fraction(v) for v in dist.zr]
    lam = lambda_coefficients(dist)
    cube = [Fraction(comb(3, k) * (-1) ** k) for k in range(4)]
    lhs_den = [sum((cube[i] * lam[k - i] for i in range(4) if 0 <= k - i < len(lam)), Fraction(0))
               for k in range(len(lam) + 3)]
    # u (I_0(u) - I_0(1)) = u^2 + z - sum z_r u^(r+2) - u (1 + z - sum z_r)
    rhs_den = [Fraction(0)] * (len(zr) + 3)
    rhs_den[0] += z
    rhs_den[1] -= 1 + z - sum(zr)
    rhs_den[2] += 1
    for r, v in enumerate(zr):
        rhs_den[r + 2] -= v
    u = [Fraction(0), Fraction(1)]
    lhs = _series_div(u, lhs_den, M)
    rhs = _series_div(u, rhs_den, M)
    return LaurentPoly(("u",), {(k,): lhs[k] - rhs[k] for k in range(M + 1)})
