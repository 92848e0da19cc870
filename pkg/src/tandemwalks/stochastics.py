"""Zero-drift random tandem walks: step distributions, the harmonic function V,
asymptotic constants and limit diagnostics.

Exact work uses Fractions.  V(a, b) is kept as ``rational_part / sigma``
so identities that do not involve sigma numerically stay exact.  The
float DPs used for diagnostics run on numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .steps import periodicity


@dataclass(frozen=True)
class StepDistribution:
    """P(SE) = z; each face step of level r has probability zr[r]."""

    p: int
    z: object
    zr: tuple

    def __post_init__(self) -> None:
        zr = tuple(self.zr)
        if len(zr) != self.p + 1:
            raise ValueError(f"expected {self.p + 1} level probabilities")
        if any(v < 0 for v in zr) or self.z < 0:
            raise ValueError("probabilities must be >= 0")
        object.__setattr__(self, "zr", zr)

    @property
    def exact(self) -> bool:
        return isinstance(self.z, (int, Fraction)) and all(isinstance(v, (int, Fraction)) for v in self.zr)

    def total(self):
        return self.z + sum((r + 1) * v for r, v in enumerate(self.zr))

    def is_normalized(self, tol: float = 1e-12) -> bool:
        if self.exact:
            return self.total() == 1
        return abs(float(self.total()) - 1.0) <= tol

    def drift(self):
        """E(X) (= -E(Y))."""
        return self.z - sum(v * comb(r + 1, 2) for r, v in enumerate(self.zr))

    def is_zero_drift(self, tol: float = 1e-12) -> bool:
        d = self.drift()
        return d == 0 if self.exact else abs(float(d)) <= tol

    def sigma2(self):
        return sum(v * comb(r + 2, 3) for r, v in enumerate(self.zr))

    def levels(self) -> list[int]:
        return [r for r, v in enumerate(self.zr) if v > 0]

    def iota(self) -> int:
        return periodicity(self.levels()).iota

    def moves(self) -> list[tuple[int, int, object]]:
        """(dx, dy, probability) for every step of positive probability."""
        out = [(1, -1, self.z)] if self.z else []
        for r, v in enumerate(self.zr):
            if v:
                out.extend((-(r - j), j, v) for j in range(r + 1))
        return out

    @classmethod
    def uniform_level(cls, p: int) -> "StepDistribution":
        """Only level p, zero drift: z_p = 2/((p+1)(p+2)), z = p/(p+2)."""
        zr = [Fraction(0)] * p + [Fraction(2, (p + 1) * (p + 2))]
        return cls(p, Fraction(p, p + 2), tuple(zr))


def _require(dist: StepDistribution, zero_drift: bool = True) -> None:
    if not dist.is_normalized():
        raise ValueError("step distribution is not normalized")
    if zero_drift and not dist.is_zero_drift():
        raise ValueError("step distribution has nonzero drift")


def drift_and_covariance(dist: StepDistribution):
    """(drift vector, covariance matrix E[(X,Y)^T (X,Y)], sigma^2)."""
    _require(dist, zero_drift=False)
    moves = dist.moves()
    ex = sum(p * dx for dx, _, p in moves)
    ey = sum(p * dy for _, dy, p in moves)
    exx = sum(p * dx * dx for dx, _, p in moves)
    exy = sum(p * dx * dy for dx, dy, p in moves)
    eyy = sum(p * dy * dy for _, dy, p in moves)
    return (ex, ey), ((exx, exy), (exy, eyy)), dist.sigma2()


# ---------------------------------------------------------------------------
# normalization of counting weights
# ---------------------------------------------------------------------------

def normalize_weights(w: Sequence) -> tuple[float, float, StepDistribution]:
    """Counting weights w_0..w_p -> (alpha, gamma, zero-drift distribution)."""
    w = [float(v) for v in w]
    p = len(w) - 1
    if p < 1 or w[-1] <= 0 or any(v < 0 for v in w):
        raise ValueError("need w_r >= 0 and w_p > 0 with p >= 1")
    if not any(w[1:]):
        raise ValueError("no solution: all w_r with r >= 1 vanish")

    def f(a: float) -> float:
        return a * a - sum(comb(r + 1, 2) * w[r] * a ** (-r) for r in range(1, p + 1))

    hi = max(1.0, math.sqrt(sum(comb(r + 1, 2) * w[r] for r in range(1, p + 1)))) + 1.0
    alpha = brentq(f, 1e-6, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    gamma = sum(comb(r + 2, 2) * w[r] * alpha ** (-r) for r in range(p + 1))
    dist = StepDistribution(p, alpha * alpha / gamma, tuple(w[r] * alpha ** (-r) / gamma for r in range(p + 1)))
    if not (dist.is_normalized(1e-12) and dist.is_zero_drift(1e-12)):
        raise ArithmeticError("normalization failed")
    return alpha, gamma, dist


# ---------------------------------------------------------------------------
# harmonic function
# ---------------------------------------------------------------------------

def lambda_coefficients(dist: StepDistribution) -> list:
    """Lambda(u) = sum_k u^k sum_{r>k} z_r C(r-k+1, 2), as a coefficient list."""
    p = dist.p
    return [sum((dist.zr[r] * comb(r - k + 1, 2) for r in range(k + 1, p + 1)), 0 * dist.z)
            for k in range(max(p, 1))]


@dataclass(frozen=True)
class HarmonicValue:
    rational_part: object
    sigma: float

    @property
    def value(self) -> float:
        return float(self.rational_part) / self.sigma


class HarmonicFunction:
    """V(a, b) = rational_part(a, b) / sigma for a fixed zero-drift distribution."""

    def __init__(self, dist: StepDistribution):
        _require(dist)
        self.dist = dist
        lam = lambda_coefficients(dist)
        if not lam[0]:
            raise ZeroDivisionError("Lambda(0) = 0")
        cube = [comb(3, k) * (-1) ** k for k in range(4)]
        self._den = [sum((cube[i] * lam[k - i] for i in range(4) if 0 <= k - i < len(lam)), 0 * dist.z)
                     for k in range(len(lam) + 3)]
        self._R: list = []
        self.sigma = math.sqrt(float(dist.sigma2()))

    def _r(self, a: int):
        """[u^a] 1/((1-u)^3 Lambda(u))."""
        den = self._den
        while len(self._R) <= a:
            k = len(self._R)
            acc = (1 if k == 0 else 0) - sum(self._R[i] * den[k - i] for i in range(max(0, k - len(den) + 1), k))
            self._R.append(acc / den[0] if self.dist.exact else float(acc) / float(den[0]))
        return self._R[a]

    def rational_part(self, a: int, b: int):
        if a < 0 or b < 0:
            return 0
        ra = self._r(a)
        ra1 = self._r(a - 1) if a else 0
        return 2 * (comb(b + 2, 2) * ra - comb(b + 1, 2) * ra1)

    def __call__(self, a: int, b: int) -> HarmonicValue:
        return HarmonicValue(self.rational_part(a, b), self.sigma)


def harmonic_V(dist: StepDistribution, a: int, b: int) -> HarmonicValue:
    if a < 0 or b < 0:
        raise ValueError("a and b must be >= 0")
    return HarmonicFunction(dist)(a, b)


def v_infinity(a: int, b: int) -> int:
    return a * b * (a + b)


def v_infinity_shifted(a: int, b: int) -> int:
    return v_infinity(a + 1, b + 1)


def check_harmonicity(dist: StepDistribution, A: int = 30, B: int = 30, box: int = 10) -> dict:
    """Residuals of the killed harmonicity relation on [0,A)x[0,B) and of the
    free harmonicity of V_inf and its shift on [-box, box]^2."""
    h = HarmonicFunction(dist)
    moves = dist.moves()
    cache: dict = {}

    def V(a, b):
        if a < 0 or b < 0:
            return 0
        if (a, b) not in cache:
            cache[(a, b)] = h.rational_part(a, b)
        return cache[(a, b)]

    worst = 0
    for a in range(A):
        for b in range(B):
            res = V(a, b) - sum(p * V(a + dx, b + dy) for dx, dy, p in moves)
            worst = max(worst, abs(res))
    free = 0
    for f in (v_infinity, v_infinity_shifted):
        for a in range(-box, box + 1):
            for b in range(-box, box + 1):
                res = f(a, b) - sum(p * f(a + dx, b + dy) for dx, dy, p in moves)
                free = max(free, abs(res))
    return {"killed_residual": worst, "free_residual": free}


# ---------------------------------------------------------------------------
# asymptotic constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticProfile:
    iota: int
    alpha: float
    gamma: float
    sigma2: float
    kappa: float


def kappa(weights: Sequence, a: int, b: int, c: int, d: int) -> AsymptoticProfile:
    """Constant kappa with q_n(a,b;c,d) ~ kappa gamma^n n^-4 for counting weights w_0..w_p."""
    alpha, gamma, dist = normalize_weights(weights)
    iota = periodicity([r for r, v in enumerate(weights) if v]).iota
    h = HarmonicFunction(dist)
    s2 = float(dist.sigma2())
    k = (iota / (4 * math.sqrt(3) * math.pi * s2) * h(a, b).value * h(d, c).value
         * alpha ** ((d - b) - (c - a)))
    return AsymptoticProfile(iota, alpha, gamma, s2, k)


def kappa_bipolar(omega: Sequence[int], b: int, c: int) -> AsymptoticProfile:
    """Face-degree version: bipolar orientations with inner degrees in omega, boundaries b+1, c+1."""
    omega = sorted(set(omega))
    if not omega or min(omega) < 2 or max(omega) < 3:
        raise ValueError("need degrees >= 2 with max >= 3")
    iota = math.gcd(*omega)
    alpha = brentq(lambda a: 1 - sum(comb(s - 1, 2) * a ** (-s) for s in omega), 1e-6,
                   1 + sum(comb(s - 1, 2) for s in omega), xtol=1e-300, rtol=4 * np.finfo(float).eps)
    gamma = sum(comb(s, 2) * alpha ** (2 - s) for s in omega)
    s2 = alpha ** 2 / gamma * sum(comb(s, 3) * alpha ** (-s) for s in omega)
    k = (iota * gamma ** 2 / (4 * math.sqrt(3) * math.pi * alpha ** 4 * s2 ** 2)
         * (b + 1) * (b + 2) * (c + 1) * (c + 2) * alpha ** (-b - c))
    return AsymptoticProfile(iota, alpha, gamma, s2, k)


# ---------------------------------------------------------------------------
# float DPs
# ---------------------------------------------------------------------------

def _float_moves(dist: StepDistribution):
    return [(dx, dy, float(p)) for dx, dy, p in dist.moves()]


def quadrant_mass_dp(dist: StepDistribution, start: tuple[int, int], n_max: int, leaks: bool = False):
    """Yield (n, mass, leak) for the killed walk, n = 1..n_max.

    mass[x, y] = P(S(n) = (x, y), tau > n), on a window that grows with the
    reachable region.  With ``leaks``, ``leak`` lists arrays (x, y, prob) of
    exit points hit at time n; otherwise it is None.
    """
    moves = _float_moves(dist)
    a, b = start
    mass = np.zeros((a + 1, b + 1))
    mass[a, b] = 1.0
    for n in range(1, n_max + 1):
        X, Yh = mass.shape
        new = np.zeros((X + 1, Yh + dist.p))
        leak: list | None = [] if leaks else None
        for dx, dy, pr in moves:
            xs0, ys0 = max(0, -dx), max(0, -dy)
            if xs0 < X and ys0 < Yh:
                new[xs0 + dx:X + dx, ys0 + dy:Yh + dy] += pr * mass[xs0:, ys0:]
            if leaks and (dx < 0 or dy < 0):
                # cells whose move leaves the quadrant: first -dx rows, then first -dy columns
                kx = min(max(0, -dx), X)
                ky = min(max(0, -dy), Yh)
                for block, x_off, y_off in ((mass[:kx, :], 0, 0), (mass[kx:, :ky], kx, 0)):
                    xs, ys = np.nonzero(block)
                    if len(xs):
                        leak.append((xs + x_off + dx, ys + y_off + dy, pr * block[xs, ys]))
        mass = new
        yield n, mass, leak


def survival_curve(dist: StepDistribution, start: tuple[int, int], n_max: int) -> list[float]:
    """[P(tau > n) for n = 0..n_max] by float DP."""
    return [1.0] + [math.fsum(m.ravel()) for _, m, _ in quadrant_mass_dp(dist, start, n_max)]


def _at(mass: np.ndarray, pt: tuple[int, int]) -> float:
    c, d = pt
    return float(mass[c, d]) if c < mass.shape[0] and d < mass.shape[1] else 0.0


def local_curve(dist: StepDistribution, start: tuple[int, int], end: tuple[int, int], n_max: int) -> list[float]:
    """[P(S(n) = end, tau > n) for n = 0..n_max] by float DP."""
    return [1.0 if start == end else 0.0] + [_at(m, end) for _, m, _ in quadrant_mass_dp(dist, start, n_max)]


@dataclass(frozen=True)
class LimitDiagnostics:
    survival_ratios: dict
    local_ratios: dict
    last_survival: float
    last_local: float | None
    last_local_n: int | None


def limit_diagnostics(dist: StepDistribution, a: int, b: int, c: int, d: int, n_max: int,
                      checkpoints: Sequence[int] | None = None) -> LimitDiagnostics:
    """Ratios of exact-DP probabilities to the predicted asymptotics.

    Survival: P(tau > n) 4 sqrt(pi) n^(3/2) / V(a,b).
    Local: P(S(n) = (c,d), tau > n) 4 sqrt(3) pi sigma^2 n^4 / (iota V(a,b) V(d,c)),
    reported only for reachable n.
    """
    _require(dist)
    h = HarmonicFunction(dist)
    vab, vdc = h(a, b).value, h(d, c).value
    iota = dist.iota()
    per = periodicity(dist.levels())
    s2 = float(dist.sigma2())
    surv, loc = [1.0], [1.0 if (a, b) == (c, d) else 0.0]
    for _, mass, _ in quadrant_mass_dp(dist, (a, b), n_max):
        surv.append(math.fsum(mass.ravel()))
        loc.append(_at(mass, (c, d)))
    checkpoints = list(checkpoints) if checkpoints else list(range(1, n_max + 1))
    sr, lr = {}, {}
    for n in checkpoints:
        sr[n] = surv[n] * 4 * math.sqrt(math.pi) * n ** 1.5 / vab
    last_n = None
    for n in range(1, n_max + 1):
        if per.reachable(n, (c - a, d - b)):
            lr[n] = loc[n] * 4 * math.sqrt(3) * math.pi * s2 * n ** 4 / (iota * vab * vdc)
            last_n = n
        elif loc[n] != 0.0:
            raise ArithmeticError(f"nonzero probability at unreachable n={n}")
    return LimitDiagnostics(sr, lr, sr[checkpoints[-1]], lr.get(last_n) if last_n else None, last_n)


# ---------------------------------------------------------------------------
# exit identity and limit density
# ---------------------------------------------------------------------------

def g(x: float, y: float) -> float:
    """Limit density of the rescaled endpoint of a walk conditioned to stay in the quadrant."""
    if x < 0 or y < 0:
        return 0.0
    return x * y * (x + y) * math.exp(-(x * x + y * y + x * y) / 3) / math.sqrt(3 * math.pi)


G0_POINT = (math.sqrt(6) / 2, math.sqrt(6) / 2)
g0 = g(*G0_POINT)


@dataclass(frozen=True)
class ExitIdentity:
    lhs: float
    lhs_exact: object
    rhs_estimate: float
    deficit: float
    survived_mass: float


def exit_identity(dist: StepDistribution, a: int, b: int, n_trunc: int) -> ExitIdentity:
    """V_s(a,b) - sigma^3 V(a,b) against E[V_s(exit point)] truncated at n_trunc steps.

    sigma^3 V(a,b) = sigma^2 * rational_part, which keeps the left side exact
    for rational distributions.
    """
    _require(dist)
    h = HarmonicFunction(dist)
    lhs_exact = v_infinity_shifted(a, b) - dist.sigma2() * h.rational_part(a, b)
    total = []
    mass = np.ones((1, 1))
    for _, mass, leak in quadrant_mass_dp(dist, (a, b), n_trunc, leaks=True):
        for xs, ys, pr in leak:
            total.append(math.fsum(pr * (xs + 1) * (ys + 1) * (xs + ys + 2)))
    survived = math.fsum(mass.ravel())
    rhs = math.fsum(total)
    lhs = float(lhs_exact)
    return ExitIdentity(lhs, lhs_exact, rhs, lhs - rhs, survived)


__all__ = [
    "StepDistribution", "drift_and_covariance", "normalize_weights", "lambda_coefficients",
    "HarmonicValue", "HarmonicFunction", "harmonic_V", "check_harmonicity", "v_infinity",
    "v_infinity_shifted", "AsymptoticProfile", "kappa", "kappa_bipolar", "limit_diagnostics",
    "survival_curve", "local_curve", "exit_identity", "g", "g0",
]
