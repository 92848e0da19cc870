"""Brute-force dynamic programming counts of confined tandem walks.

This is the ground truth against which every generating-function formula
and closed form in the package is checked.  It is deliberately naive:
a dictionary keyed by lattice points, advanced one step at a time, with
exact integer or rational arithmetic.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import comb
from typing import Iterator

from .series import LaurentPoly
from .steps import SE, Step, TandemWalk, WeightSpec, step_vector

REFINE_MAX_N = 14
EXHAUSTIVE_MAX_N = 10


def _scalar(v):
    """Use plain ints when a weight is integral: much faster than Fraction."""
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def _moves(spec: WeightSpec) -> list[tuple[int, int, object, int]]:
    """(dx, dy, weight, level or -1 for SE) for every step of nonzero weight."""
    out = []
    if spec.z_se:
        out.append((1, -1, _scalar(spec.z_se), -1))
    for r in range(spec.p + 1):
        if spec.z[r]:
            w = _scalar(spec.z[r])
            out.extend((-(r - j), j, w, r) for j in range(r + 1))
    return out


def _inside(x: int, y: int, region: str) -> bool:
    if region == "quadrant":
        return x >= 0 and y >= 0
    if region == "upper_halfplane":
        return y >= 0
    if region == "none":
        return True
    raise ValueError(f"unknown region {region!r}")


def count_walks(spec: WeightSpec, start: tuple[int, int], end, n: int,
                region: str = "quadrant", refine: bool = False):
    """Weighted number of n-step walks from ``start`` to ``end`` inside ``region``.

    ``end`` is a point or ``"any"``.  With ``refine=True`` the result is a
    dict mapping level-count vectors (n_0, ..., n_p) to the number of walks
    (weights only decide which steps are allowed).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if refine and n > REFINE_MAX_N:
        raise ValueError(f"refined counting is limited to n <= {REFINE_MAX_N}")
    moves = _moves(spec)
    if not _inside(*start, region):
        return {} if refine else 0
    zero_vec = (0,) * (spec.p + 1)
    if refine:
        table: dict = {tuple(start): {zero_vec: 1}}
    else:
        table = {tuple(start): 1}
    for _ in range(n):
        new: dict = defaultdict(dict) if refine else defaultdict(int)
        for (x, y), val in table.items():
            for dx, dy, w, r in moves:
                nx, ny = x + dx, y + dy
                if not _inside(nx, ny, region):
                    continue
                if refine:
                    bucket = new[(nx, ny)]
                    for vec, c in val.items():
                        if r >= 0:
                            vec = vec[:r] + (vec[r] + 1,) + vec[r + 1:]
                        bucket[vec] = bucket.get(vec, 0) + c
                else:
                    new[(nx, ny)] += w * val
        table = new
    if end == "any":
        if refine:
            total: dict = defaultdict(int)
            for val in table.values():
                for vec, c in val.items():
                    total[vec] += c
            return dict(total)
        return sum(table.values())
    got = table.get(tuple(end))
    if refine:
        return dict(got) if got else {}
    return got if got is not None else 0


def count_marked(spec: WeightSpec, sig: tuple[int, int, int, int], n: int, refine: bool = False):
    """Weighted number of marked orientations with signature ``sig`` and n plain edges.

    Inclusion-exclusion over quadrant walks of length n-1 that touch both axes.
    With ``refine`` the result maps level-count vectors to counts.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b, c, d = sig
    total: object = defaultdict(int) if refine else 0
    for da, db, sign in ((0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)):
        if min(a - da, b - db, c - da, d - db) < 0:
            continue
        got = count_walks(spec, (a - da, b - db), (c - da, d - db), n - 1, refine=refine)
        if refine:
            for vec, k in got.items():
                total[vec] += sign * k
        else:
            total += sign * got
    if refine:
        return {vec: k for vec, k in total.items() if k}
    return total


def count_halfplane_to_line(spec: WeightSpec, b: int, a: int, n: int, touch: bool = True):
    """Upper half-plane walks from height b ending at height a; with ``touch`` they must visit y=0.

    Only the y-coordinate matters, so this is a one-dimensional DP.
    """
    moves = [(dy, w) for _dx, dy, w, _r in _moves(spec)]

    def run(b0: int, a0: int) -> object:
        if b0 < 0 or a0 < 0:
            return 0
        row = {b0: 1}
        for _ in range(n):
            new: dict = defaultdict(int)
            for y, v in row.items():
                for dy, w in moves:
                    if y + dy >= 0:
                        new[y + dy] += w * v
            row = new
        return row.get(a0, 0)

    if not touch:
        return run(b, a)
    return run(b, a) - run(b - 1, a - 1)


def survival_probability(dist, start: tuple[int, int], n: int):
    """P(tau > n) for the random walk with step distribution ``dist`` started at ``start``."""
    if not dist.is_normalized():
        raise ValueError("step distribution is not normalized")
    spec = WeightSpec(dist.p, dist.zr, dist.z)
    return count_walks(spec, start, "any", n, "quadrant")


def exhaustive_walks(spec: WeightSpec, n: int, start: tuple[int, int] = (0, 0),
                     region: str = "quadrant", end=None) -> Iterator[TandemWalk]:
    """Every confined walk of length n with nonzero-weight steps, each exactly once."""
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")
    steps = spec.steps()
    vecs = [step_vector(s) for s in steps]
    prefix: list[Step] = []

    def rec(x: int, y: int, left: int) -> Iterator[TandemWalk]:
        if left == 0:
            if end is None or (x, y) == tuple(end):
                yield TandemWalk(prefix)
            return
        for s, (dx, dy) in zip(steps, vecs):
            nx, ny = x + dx, y + dy
            if _inside(nx, ny, region):
                prefix.append(s)
                yield from rec(nx, ny, left - 1)
                prefix.pop()

    if _inside(*start, region):
        yield from rec(start[0], start[1], n)


def all_level_walks(start: tuple[int, int], end: tuple[int, int], n: int) -> Iterator[TandemWalk]:
    """Quadrant walks start -> end of length n with face steps of every level.

    Finite because y drops by at most one per step and x rises by at most
    one per step; the search prunes on both bounds.
    """
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")
    c, d = end
    prefix: list[Step] = []

    def rec(x: int, y: int, left: int) -> Iterator[TandemWalk]:
        if left == 0:
            if (x, y) == (c, d):
                yield TandemWalk(prefix)
            return
        if y - 1 >= 0 and x + 1 + (left - 1) >= c and y - 1 - (left - 1) <= d:
            prefix.append(SE)
            yield from rec(x + 1, y - 1, left - 1)
            prefix.pop()
        for i in range(0, min(x, x + left - 1 - c) + 1):
            for j in range(0, d + left - 1 - y + 1):
                prefix.append(Step(i, j))
                yield from rec(x - i, y + j, left - 1)
                prefix.pop()

    if min(start) >= 0:
        yield from rec(start[0], start[1], n)


# ---------------------------------------------------------------------------
# double tandem walks
# ---------------------------------------------------------------------------

_XY = ("x", "y")


def _xy(i: int, j: int, c=1) -> LaurentPoly:
    return LaurentPoly(_XY, {(i, j): c})


def _double_tandem_D(a: int, b: int, c: int, d: int, l: int, m: int) -> int:
    """Quadrant walks (a,b)->(c,d) with l steps from {W,N,SE} and m from {E,S,NW}.

    Reflection formula: the alternating orbit sum of the shifted start
    monomial, times binom(l+m, l) A^l B^m, read off at x^(c+1) y^(d+1).
    """
    if min(a, b, c, d, l, m) < 0:
        return 0
    A = _xy(-1, 0) + _xy(0, 1) + _xy(1, -1)
    B = _xy(1, 0) + _xy(0, -1) + _xy(-1, 1)
    orbit = [
        (a + 1, b + 1, 1), (-(a + 1), a + b + 2, -1), (-(a + b + 2), a + 1, 1),
        (-(b + 1), -(a + 1), -1), (b + 1, -(a + b + 2), 1), (a + b + 2, -(b + 1), -1),
    ]
    body = (A ** l) * (B ** m)
    total = 0
    for ex, ey, sign in orbit:
        total += sign * body.coeff({"x": c + 1 - ex, "y": d + 1 - ey})
    return int(total * comb(l + m, l))


def double_tandem_count_dp(a: int, b: int, c: int, d: int, l: int, m: int) -> int:
    """Same quantity as the reflection formula, by direct DP (cross-check)."""
    if min(a, b, c, d, l, m) < 0:
        return 0
    first = [(-1, 0), (0, 1), (1, -1)]
    second = [(1, 0), (0, -1), (-1, 1)]
    table = {(a, b, 0, 0): 1}
    for _ in range(l + m):
        new: dict = defaultdict(int)
        for (x, y, i, j), v in table.items():
            for moves, di, dj in ((first, 1, 0), (second, 0, 1)):
                if i + di > l or j + dj > m:
                    continue
                for dx, dy in moves:
                    nx, ny = x + dx, y + dy
                    if nx >= 0 and ny >= 0:
                        new[(nx, ny, i + di, j + dj)] += v
        table = new
    return table.get((c, d, l, m), 0)


def double_tandem_marked(a: int, b: int, c: int, d: int, l: int, m: int, D=_double_tandem_D) -> int:
    return (D(a, b, c, d, l, m) - D(a - 1, b, c - 1, d, l, m)
            - D(a, b - 1, c, d - 1, l, m) + D(a - 1, b - 1, c - 1, d - 1, l, m))


def double_tandem_symmetry_check(a: int, b: int, c: int, d: int, l: int, m: int) -> bool:
    if l + m > 12:
        raise ValueError("l + m must be <= 12")
    return double_tandem_marked(a, b, c, d, l, m) == double_tandem_marked(d, b, c, a, l, m)


__all__ = [
    "count_walks", "count_marked", "count_halfplane_to_line", "survival_probability",
    "exhaustive_walks", "double_tandem_symmetry_check", "double_tandem_marked",
    "double_tandem_count_dp", "SE",
]
