"""Exact closed forms and printed recurrences.

Everything here is big-integer arithmetic.  Recurrence divisions are
checked to be exact, so a transcription error shows up as an
``ArithmeticError`` rather than a silently wrong number.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


def binom(m: int, j: int) -> int:
    """Binomial coefficient, zero whenever j < 0 or j > m (including m < 0)."""
    if j < 0 or m < 0 or j > m:
        return 0
    return comb(m, j)


def _exact(num: int | Fraction, den: int | Fraction) -> int:
    q = Fraction(num) / Fraction(den)
    if q.denominator != 1:
        raise ArithmeticError(f"recurrence division not exact: {num}/{den}")
    return q.numerator


def tutte_a(k: int) -> int:
    """Bipolar triangulations: 2(3k)! / (k!(k+1)!(k+2)!)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return _exact(2 * factorial(3 * k), factorial(k) * factorial(k + 1) * factorial(k + 2))


def baxter_b(n: int) -> int:
    """Baxter numbers, by the summation formula."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s = sum(binom(n + 1, m - 1) * binom(n + 1, m) * binom(n + 1, m + 1) for m in range(1, n + 1))
    return _exact(2 * s, n * (n + 1) ** 2)


def baxter_recurrence(n_max: int) -> list[int]:
    """[b(1), ..., b(n_max)] from (n+2)(n+3)b(n) = (7n²+7n-2)b(n-1) + 8(n-1)(n-2)b(n-2)."""
    if n_max < 1:
        return []
    b = {0: 0, 1: 1}
    for n in range(2, n_max + 1):
        rhs = (7 * n * n + 7 * n - 2) * b[n - 1] + 8 * (n - 1) * (n - 2) * b[n - 2]
        b[n] = _exact(rhs, (n + 2) * (n + 3))
    return [b[n] for n in range(1, n_max + 1)]


def baxter_ratio_sequence(n_max: int):
    """Yield (n, b(n)/8^n) as floats via the recurrence on the ratios (no big integers).

    Running the recurrence on u(n) = b(n)/8^n keeps every value in floating
    point range, which is what the large-n asymptotic check needs.
    """
    u_prev, u = 0.0, 1.0 / 8
    yield 1, u
    for n in range(2, n_max + 1):
        u_next = ((7 * n * n + 7 * n - 2) * u / 8 + 8 * (n - 1) * (n - 2) * u_prev / 64) / ((n + 2) * (n + 3))
        u_prev, u = u, u_next
        yield n, u


def dangulation_sequence(p: int, k_max: int) -> list[int]:
    """a(0..k_max) for bipolar (p+2)-angulations, from the printed recurrences."""
    if p == 1:
        a = [1]
        for k in range(k_max):
            a.append(_exact(3 * (3 * k + 2) * (3 * k + 1) * a[k], (k + 3) * (k + 2)))
        return a
    if p == 2:
        a = {-1: 0, 0: 1}
        for k in range(-1, k_max - 1):
            rhs = (4 * (2 * k + 3) * (k + 3) * (k + 1) * a[k + 1]
                   + 12 * (2 * k + 3) * (2 * k + 1) * (k + 1) * a[k])
            a[k + 2] = _exact(rhs, (k + 4) * (k + 3) ** 2)
        return [a[k] for k in range(k_max + 1)]
    if p == 3:
        a = {-1: 0, 0: 1}
        for k in range(-1, k_max - 1):
            lhs = (27 * (3 * k + 8) * (3 * k + 4) * (5 * k + 3) * (3 * k + 5) ** 2
                   * (3 * k + 7) ** 2 * (k + 2) ** 2)
            c1 = (60 * (5 * k + 7) * (3 * k + 5) * (5 * k + 9) * (5 * k + 6) * (3 * k + 4) * (8 + 5 * k)
                  * (145 * k ** 3 + 532 * k ** 2 + 626 * k + 233))
            c0 = (800 * (5 * k + 6) * (5 * k + 1) * (5 * k + 7) * (5 * k + 2) * (5 * k + 3)
                  * (5 * k + 9) * (5 * k + 4) * (8 + 5 * k) ** 2)
            a[k + 2] = _exact(c1 * a[k + 1] - c0 * a[k], lhs)
        return [a[k] for k in range(k_max + 1)]
    raise ValueError("p must be 1, 2 or 3")


def dangulation_ratios(p: int, k_max: int):
    """Yield (k, a(k)/g^k) in floating point for p in {1, 2}, g = 27 or 12."""
    if p == 1:
        u = 1.0
        yield 0, u
        for k in range(k_max):
            u = u * 3 * (3 * k + 2) * (3 * k + 1) / ((k + 3) * (k + 2)) / 27
            yield k + 1, u
    elif p == 2:
        prev, cur = 0.0, 1.0
        yield 0, cur
        for k in range(-1, k_max - 1):
            nxt = (4 * (2 * k + 3) * (k + 3) * (k + 1) * cur / 12
                   + 12 * (2 * k + 3) * (2 * k + 1) * (k + 1) * prev / 144) / ((k + 4) * (k + 3) ** 2)
            prev, cur = cur, nxt
            yield k + 2, cur
    else:
        raise ValueError("p must be 1 or 2")


def lgv_qnk(n: int, k: int, a: int, b: int, c: int, d: int) -> int:
    """Quadrant walks (a,b)->(c,d) of length n with k face steps (all levels allowed)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if min(a, b, c, d) < 0:
        return 0
    m = [
        [binom(n + a - c - 1, k - 1), binom(n + a, k - 1), binom(n + a + d, k - 2)],
        [binom(n - c - 1, k), binom(n, k), binom(n + d, k - 1)],
        [binom(n - b - c - 2, k), binom(n - b - 1, k), binom(n - b + d - 1, k - 1)],
    ]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def marked_qnk_tilde(n: int, k: int, a: int, b: int, c: int, d: int) -> int:
    """Marked orientations with n+1 plain edges, k inner faces and signature (a,b;c,d)."""
    return (lgv_qnk(n, k, a, b, c, d) - lgv_qnk(n, k, a - 1, b, c - 1, d)
            - lgv_qnk(n, k, a, b - 1, c, d - 1) + lgv_qnk(n, k, a - 1, b - 1, c - 1, d - 1))


def baxter_summand(n: int, k: int) -> int:
    """2/(n²(n-1)) C(n,k-2)C(n,k-1)C(n,k): excursions of length n with k face steps."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return _exact(2 * binom(n, k - 2) * binom(n, k - 1) * binom(n, k), n * n * (n - 1))


def exact_p1_endpoint(n: int, i: int, j: int) -> int:
    """Quadrant walks from (0,0) to (i,j) of length n with steps SE, (-1,0), (0,1)."""
    if min(n, i, j) < 0:
        return 0
    rest = n - 2 * i - j
    if rest < 0 or rest % 3:
        return 0
    m = rest // 3
    return _exact((i + 1) * (j + 1) * (i + j + 2) * factorial(n),
                  factorial(m) * factorial(m + i + 1) * factorial(m + i + j + 2))
