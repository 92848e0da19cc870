"""Random generation of tandem walks.

All samplers draw from numpy's PCG64 generator; a seed (or an existing
``numpy.random.Generator``) fully determines the output.

* half-plane walks ending on the x-axis: the y-projection is a
  Lukasiewicz-type path, produced by the cycle lemma from i.i.d. steps,
  then every up-step of height j is lifted to a face step (-(r-j), j)
  with probability proportional to z_r;
* quadrant walks from the origin: the half-plane sample pushed through
  :func:`~tandemwalks.kmsw.sigma_on_walks`;
* uniform excursions for p = 1 (z_0 = 0), exactly, drawn backward;
* windowed excursions with lengths in [2n, 3n].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .closed_forms import exact_p1_endpoint
from .kmsw import rho_on_walks, sigma_on_walks
from .steps import SE, Step, TandemWalk, trajectory
from .stochastics import StepDistribution, g, g0


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def walk_probability(dist: StepDistribution, w) -> object:
    """Product of the step probabilities of ``w``."""
    out = 1
    for s in w:
        out *= dist.z if s.i is None else dist.zr[s.i + s.j]
    return out


class HalfplaneSampler:
    """Reusable tables and a per-length buffer for sampling half-plane walks.

    Projections are drawn in batches; accepted rows are kept for later
    calls with the same length, so repeated small samples stay cheap.
    Output is still a deterministic function of the seed and call sequence.
    """

    def __init__(self, dist: StepDistribution, rng):
        if not dist.is_normalized():
            raise ValueError("step distribution is not normalized")
        self.dist = dist
        self.rng = make_rng(rng)
        p = dist.p
        zr = [float(v) for v in dist.zr]
        # 1D step values -1, 0, 1, ..., p; up-step j has weight sum_{r>=j} z_r
        self.values = np.arange(-1, p + 1)
        w = np.array([float(dist.z)] + [sum(zr[j:]) for j in range(p + 1)])
        self.probs = w / w.sum()
        self.cum = np.cumsum(self.probs)
        self.cum[-1] = 1.0
        # codes: 0 is SE, then one code per face step
        self.table: list[Step] = [SE]
        # lift_cum[j + 1, k]: cumulative probability of the k-th level r >= j given height j
        self.lift_cum = np.ones((p + 2, p + 2))
        self.lift_code = np.zeros((p + 2, p + 2), dtype=np.int64)
        for j in range(p + 1):
            tail = [(r, zr[r]) for r in range(j, p + 1) if zr[r] > 0]
            if not tail:
                continue
            c = np.cumsum([v for _, v in tail])
            self.lift_cum[j + 1, :len(tail)] = c / c[-1]
            self.lift_cum[j + 1, len(tail) - 1:] = 1.0
            for k, (r, _) in enumerate(tail):
                self.lift_code[j + 1, k] = len(self.table)
                self.table.append(Step(r - j, j))
            self.lift_code[j + 1, len(tail):] = self.lift_code[j + 1, len(tail) - 1]
        self.lift_code[0, :] = 0
        self._buffer: dict[int, list[tuple]] = {}
        self._grow: dict[int, int] = {}

    def _support_ok(self, n: int) -> bool:
        # the all-flat path works whenever some level has positive weight
        return n == 0 or self.probs[1] > 0

    def _refill(self, n: int) -> list[tuple]:
        # batches start small and double on every refill for this length
        grown = self._grow.get(n, 0)
        self._grow[n] = grown + 1
        rows = max(8, min(int(4 * math.sqrt(n + 1)) << grown, 4096, 2**16 // (n + 1)))
        while True:
            u = self.rng.random((rows, n + 1))
            seqs = self.values[np.searchsorted(self.cum, u, side="right")]
            good = np.nonzero(seqs.sum(axis=1) == -1)[0]
            if len(good):
                break
        x = seqs[good]
        k = np.argmin(np.cumsum(x, axis=1), axis=1)  # first index of the minimum
        idx = (k[:, None] + 1 + np.arange(n + 1)[None, :]) % (n + 1)
        proj = np.take_along_axis(x, idx, axis=1)[:, :-1]
        v = proj + 1
        lu = self.rng.random(proj.shape)
        choice = (lu[:, :, None] >= self.lift_cum[v]).sum(axis=2)
        choice = np.minimum(choice, self.lift_cum.shape[1] - 1)
        codes = self.lift_code[v, choice]
        return [tuple(r) for r in codes.tolist()][::-1]

    def sample_codes(self, n: int) -> tuple:
        """A sample as a tuple of codes into ``self.table``."""
        if n < 0:
            raise ValueError("n must be >= 0")
        if not self._support_ok(n):
            raise ValueError(f"no half-plane walk of length {n} for this distribution")
        if n == 0:
            return ()
        buf = self._buffer.get(n)
        if not buf:
            buf = self._buffer[n] = self._refill(n)
        return buf.pop()

    def decode(self, codes: tuple) -> TandemWalk:
        t = self.table
        return TandemWalk(t[c] for c in codes)

    def sample(self, n: int) -> TandemWalk:
        return self.decode(self.sample_codes(n))


def sample_halfplane(dist: StepDistribution, n: int, seed) -> TandemWalk:
    """z-distributed walk of length n in the upper half-plane, from the origin to the x-axis."""
    return HalfplaneSampler(dist, seed).sample(n)


def sample_quadrant(dist: StepDistribution, n: int, seed) -> TandemWalk:
    """z-distributed quadrant walk of length n from the origin."""
    return sigma_on_walks(sample_halfplane(dist, n, seed))


# ---------------------------------------------------------------------------
# exact uniform excursions for p = 1
# ---------------------------------------------------------------------------

def _randbelow(rng: np.random.Generator, n: int) -> int:
    """Uniform integer in [0, n) for arbitrarily large n, from 64-bit raw draws."""
    if n <= 0:
        raise ValueError("n must be positive")
    k = n.bit_length()
    words = (k + 63) // 64
    bg = rng.bit_generator
    while True:
        raw = bg.random_raw(words)
        v = 0
        for wd in raw:
            v = (v << 64) | int(wd)
        v >>= 64 * words - k
        if v < n:
            return v


_p1_count = lru_cache(maxsize=1 << 16)(exact_p1_endpoint)

_P1_BACK = ((SE, (-1, 1)), (Step(1, 0), (1, 0)), (Step(0, 1), (0, -1)))


def sample_excursion_p1(n: int, seed) -> TandemWalk:
    """Uniform excursion of length n with steps SE, (-1,0), (0,1), drawn from the end backward."""
    if n < 0 or n % 3:
        raise ValueError("n must be a nonnegative multiple of 3")
    rng = make_rng(seed)
    x, y = 0, 0
    steps: list[Step] = []
    for k in range(n, 0, -1):
        cands = []
        for s, (dx, dy) in _P1_BACK:
            q = (x + dx, y + dy)
            cnt = _p1_count(k - 1, *q)
            if cnt:
                cands.append((cnt, s, q))
        total = sum(c for c, _, _ in cands)
        r = int(rng.integers(total)) if total < 2**62 else _randbelow(rng, total)
        for cnt, s, q in cands:
            if r < cnt:
                break
            r -= cnt
        steps.append(s)
        x, y = q
    steps.reverse()
    return TandemWalk(steps)


# ---------------------------------------------------------------------------
# windowed excursions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowedSample:
    walk: TandemWalk
    m: int
    retries: int      # rejected w2 draws, summed over attempts
    rejections: int   # failed coin flips
    midpoint: tuple[int, int]


def _last_visit(pts, target: tuple[int, int], lo: int, hi: int) -> int | None:
    for k in range(hi, lo - 1, -1):
        if pts[k] == target:
            return k
    return None


def _reach_sets(dist: StepDistribution, hi: int):
    """Boolean arrays of the quadrant points reachable from the origin at times 1..hi."""
    p = dist.p
    cur = np.zeros((hi + 1, p * hi + 1), dtype=bool)
    cur[0, 0] = True
    for _ in range(hi):
        new = np.zeros_like(cur)
        for dx, dy, _ in dist.moves():
            xs = slice(max(0, -dx), cur.shape[0] - max(0, dx))
            ys = slice(max(0, -dy), cur.shape[1] - max(0, dy))
            new[xs.start + dx:xs.stop + dx, ys.start + dy:ys.stop + dy] |= cur[xs, ys]
        cur = new
        yield cur


def reachable_in_window(dist: StepDistribution, target: tuple[int, int], lo: int, hi: int) -> bool:
    """Whether some quadrant walk from the origin sits at ``target`` at a time in [lo, hi]."""
    tx, ty = target
    if tx < 0 or ty < 0 or tx > hi or ty > dist.p * hi:
        return False
    return any(k >= lo and cur[tx, ty] for k, cur in enumerate(_reach_sets(dist, hi), 1))


def interior_reachable(dist: StepDistribution, n: int) -> bool:
    """Whether a quadrant walk of length n can end off both axes (where g > 0)."""
    cur = None
    for cur in _reach_sets(dist, n):
        pass
    return cur is not None and bool(cur[1:, 1:].any())


_FEASIBILITY_CHECK = 256


class WindowedSampler:
    """Windowed excursion sampler for one distribution; reuse it for many draws.

    ``reject=False`` skips the g/g0 coin flip, leaving the plain n-twisted sampler.
    """

    def __init__(self, dist: StepDistribution, seed, reject: bool = True):
        if not dist.is_zero_drift():
            raise ValueError("step distribution has nonzero drift")
        self.hs = HalfplaneSampler(dist, seed)
        self.rng = self.hs.rng
        self.sigma = math.sqrt(float(dist.sigma2()))
        self.reject = reject
        self.dist = dist
        self._feasible: dict = {}
        # small lengths repeat the same half-plane walks many times
        self._cache: dict = {}

    def _quadrant(self, k: int):
        codes = self.hs.sample_codes(k)
        hit = self._cache.get(codes)
        if hit is not None:
            return hit
        w = sigma_on_walks(self.hs.decode(codes))
        out = (w, trajectory(w))
        if k <= 32:
            self._cache[codes] = out
        return out

    def _can_flip(self, n: int) -> bool:
        key = ("interior", n)
        if key not in self._feasible:
            self._feasible[key] = interior_reachable(self.dist, n)
        return self._feasible[key]

    def _can_finish(self, n: int, target: tuple[int, int]) -> bool:
        key = (n, target)
        if key not in self._feasible:
            self._feasible[key] = reachable_in_window(self.dist, target, n, 2 * n)
        return self._feasible[key]

    def sample(self, n: int) -> WindowedSample:
        if n < 1:
            raise ValueError("n must be >= 1")
        if self.reject and not self._can_flip(n):
            raise ValueError(f"every midpoint at time {n} lies on an axis, where g vanishes; use a larger n")
        retries = rejections = 0
        while True:
            w1, pts1 = self._quadrant(n)
            a, b = pts1[-1]
            misses = 0
            while True:
                w2, pts2 = self._quadrant(2 * n)
                n2 = _last_visit(pts2, (b, a), n, 2 * n)
                if n2 is not None:
                    break
                retries += 1
                misses += 1
                # no excursion of length <= 3n passes through (a, b) at time n: redraw w1
                if misses == _FEASIBILITY_CHECK and not self._can_finish(n, (b, a)):
                    break
            if n2 is None:
                rejections += 1
                continue
            w = w1 + rho_on_walks(TandemWalk(w2.steps[:n2]))
            if self.reject:
                scale = self.sigma * math.sqrt(n2)  # sigma sqrt(alpha n), alpha = n'/n
                if self.rng.random() * g0 >= g(a / scale, b / scale):
                    rejections += 1
                    continue
            return WindowedSample(w, len(w), retries, rejections, (a, b))


def sample_excursion_windowed(dist: StepDistribution, n: int, seed, with_info: bool = False,
                              reject: bool = True):
    """Excursion of length m in [2n, 3n]: n-twisted, then corrected by a g/g0 coin flip.

    Returns the walk, or a :class:`WindowedSample` with ``with_info``.
    """
    out = WindowedSampler(dist, seed, reject).sample(n)
    return out if with_info else out.walk


__all__ = [
    "make_rng", "walk_probability", "HalfplaneSampler", "reachable_in_window", "interior_reachable", "sample_halfplane", "sample_quadrant",
    "sample_excursion_p1", "sample_excursion_windowed", "WindowedSample", "WindowedSampler",
]
