"""Tandem steps, walks, boundary statistics and periodicity.

A tandem walk uses the SE step (1, -1) and face steps (-i, j) with
i, j >= 0.  Walks are stored without an embedding; a starting point is
supplied whenever a trajectory is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class Step:
    """A single tandem step.  ``i is None`` encodes the SE step."""

    i: int | None = None
    j: int | None = None

    def __post_init__(self) -> None:
        if (self.i is None) != (self.j is None):
            raise ValueError("face steps need both i and j")
        if self.i is not None and (self.i < 0 or self.j < 0):
            raise ValueError(f"invalid face step ({self.i}, {self.j})")

    @property
    def is_se(self) -> bool:
        return self.i is None

    @property
    def level(self) -> int | None:
        return None if self.i is None else self.i + self.j

    def __repr__(self) -> str:
        return "SE" if self.i is None else f"Face({self.i},{self.j})"


SE = Step()


def Face(i: int, j: int) -> Step:
    return Step(i, j)


def step_vector(s: Step) -> tuple[int, int]:
    if s.i is None:
        return (1, -1)
    return (-s.i, s.j)


@dataclass(frozen=True)
class WeightSpec:
    """Counting weights: ``z_se`` for SE and ``z[r]`` for each face step of level r."""

    p: int
    z: tuple = ()
    z_se: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.p < 0:
            raise ValueError("p must be >= 0")
        z = tuple(Fraction(v) for v in self.z) if self.z else (Fraction(1),) * (self.p + 1)
        if len(z) != self.p + 1:
            raise ValueError(f"expected {self.p + 1} level weights, got {len(z)}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "z_se", Fraction(self.z_se))

    def weight(self, s: Step):
        if s.i is None:
            return self.z_se
        r = s.i + s.j
        return self.z[r] if r <= self.p else Fraction(0)

    def steps(self) -> list[Step]:
        """All steps with nonzero weight."""
        out = [SE] if self.z_se else []
        for r in range(self.p + 1):
            if self.z[r]:
                out.extend(Step(r - j, j) for j in range(r + 1))
        return out


@dataclass(frozen=True)
class TandemWalk:
    steps: tuple = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __add__(self, other: "TandemWalk") -> "TandemWalk":
        return TandemWalk(self.steps + other.steps)

    def __repr__(self) -> str:
        return f"TandemWalk({list(self.steps)!r})"

    def levels(self) -> list[int]:
        return sorted(s.level for s in self.steps if s.i is not None)

    def n_se(self) -> int:
        return sum(1 for s in self.steps if s.i is None)

    def to_json(self) -> dict:
        return {"steps": [["SE"] if s.i is None else ["F", s.i, s.j] for s in self.steps]}

    @classmethod
    def from_json(cls, data: dict | str) -> "TandemWalk":
        if isinstance(data, str):
            data = json.loads(data)
        steps = []
        for item in data["steps"]:
            if item == ["SE"]:
                steps.append(SE)
            elif len(item) == 3 and item[0] == "F":
                steps.append(Step(int(item[1]), int(item[2])))
            else:
                raise ValueError(f"bad step {item!r}")
        return cls(steps)


@dataclass(frozen=True)
class WalkBoundaryStats:
    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def trajectory(w: Iterable[Step], start: tuple[int, int] = (0, 0)) -> list[tuple[int, int]]:
    x, y = start
    pts = [(x, y)]
    for s in w:
        dx, dy = step_vector(s)
        x += dx
        y += dy
        pts.append((x, y))
    return pts


def walk_stats(w: Iterable[Step]) -> WalkBoundaryStats:
    pts = trajectory(w)
    xmin = min(p[0] for p in pts)
    ymin = min(p[1] for p in pts)
    (xs, ys), (xe, ye) = pts[0], pts[-1]
    return WalkBoundaryStats(xs - xmin, ys - ymin, xe - xmin, ye - ymin)


def is_confined(w: Iterable[Step], start: tuple[int, int], region: str = "quadrant") -> bool:
    if region not in ("quadrant", "upper_halfplane", "none"):
        raise ValueError(f"unknown region {region!r}")
    if region == "none":
        return True
    for x, y in trajectory(w, start):
        if y < 0 or (region == "quadrant" and x < 0):
            return False
    return True


@dataclass(frozen=True)
class Periodicity:
    iota: int
    period: int
    lattice: str

    def reachable(self, n: int, displacement: tuple[int, int]) -> bool:
        i, j = displacement
        return (i - j - 2 * n) % self.iota == 0


def periodicity(levels: Iterable[int]) -> Periodicity:
    D = set(levels)
    if not D or D == {0}:
        raise ValueError("level set must be nonempty and different from {0}")
    iota = reduce(gcd, (r + 2 for r in D))
    if iota % 2:
        return Periodicity(iota, iota, "full")
    return Periodicity(iota, iota // 2, "even_sum")


def parse_walk(items: Sequence) -> TandemWalk:
    """Build a walk from a compact list such as ``["SE", (0, 1)]``."""
    out = []
    for it in items:
        if it == "SE" or it == ("SE",):
            out.append(SE)
        else:
            out.append(Step(*it))
    return TandemWalk(out)
