"""Marked plane bipolar orientations as rotation systems.

Edge e has two ends (darts): ``2e`` at its tail and ``2e + 1`` at its
head.  ``rot[v]`` lists the darts at v in counterclockwise order.  The
outer face is pinned by a convention at the source: the outer angular
sector at S runs from ``rot[S][-1]`` to ``rot[S][0]``, so ``rot[S][0]``
is the rightmost and ``rot[S][-1]`` the leftmost edge out of S.

Faces are never stored; they are traced from the rotations.  The face on
the left of dart d is the angular sector just counterclockwise of d.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

PLAIN = "plain"
DASHED = "dashed"


@dataclass(frozen=True)
class Signature:
    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


class InvalidOrientation(ValueError):
    pass


class MarkedBipolarOrientation:
    """Immutable marked bipolar orientation.  See the module docstring for conventions."""

    __slots__ = ("n_vertices", "edges", "rot", "S", "N", "vl", "vr", "_cache")

    def __init__(self, n_vertices: int, edges: Sequence, rot: Sequence, S: int, N: int, vl: int, vr: int):
        self.n_vertices = int(n_vertices)
        self.edges = tuple((int(t), int(h), str(k)) for t, h, k in edges)
        self.rot = tuple(tuple(int(d) for d in r) for r in rot)
        self.S, self.N, self.vl, self.vr = int(S), int(N), int(vl), int(vr)
        self._cache: dict = {}
        self._check_structure()

    # -- construction ----------------------------------------------------
    @classmethod
    def from_bipolar_lists(cls, tails, heads, kinds, outs, ins, S, N, vl, vr,
                           check: bool = True) -> "MarkedBipolarOrientation":
        """Build from per-vertex out/in edge lists, each ordered left to right.

        ``check=False`` skips the structural checks; only for lists produced
        by this package's own constructions.
        """
        rot = tuple(tuple([2 * e for e in reversed(o)] + [2 * e + 1 for e in i]) for o, i in zip(outs, ins))
        if check:
            obj = cls(len(outs), list(zip(tails, heads, kinds)), rot, S, N, vl, vr)
        else:
            obj = cls.__new__(cls)
            obj.n_vertices = len(outs)
            obj.edges = tuple(zip(tails, heads, kinds))
            obj.rot = rot
            obj.S, obj.N, obj.vl, obj.vr = S, N, vl, vr
            obj._cache = {}
        obj._cache["lists"] = (tuple(tuple(o) for o in outs), tuple(tuple(i) for i in ins))
        return obj

    def _check_structure(self) -> None:
        n, m = self.n_vertices, len(self.edges)
        if len(self.rot) != n:
            raise ValueError("malformed rotations: one rotation list per vertex is required")
        for v in (self.S, self.N, self.vl, self.vr):
            if not 0 <= v < n:
                raise ValueError(f"vertex id {v} out of range")
        for e, (t, h, k) in enumerate(self.edges):
            if not (0 <= t < n and 0 <= h < n):
                raise ValueError(f"edge {e} has an endpoint out of range")
            if t == h:
                raise ValueError(f"edge {e} is a loop")
            if k not in (PLAIN, DASHED):
                raise ValueError(f"edge {e} has unknown kind {k!r}")
        at = [e[d & 1] for e in self.edges for d in (0, 1)]
        seen = [False] * (2 * m)
        for v, r in enumerate(self.rot):
            for d in r:
                if not 0 <= d < 2 * m:
                    raise ValueError(f"malformed rotations: dangling edge-end {d} at vertex {v}")
                if seen[d]:
                    raise ValueError(f"malformed rotations: edge-end {d} listed twice")
                seen[d] = True
                if at[d] != v:
                    raise ValueError(f"malformed rotations: edge-end {d} listed at the wrong vertex {v}")
        if not all(seen):
            raise ValueError("malformed rotations: some edge-end is not listed")

    # -- basic accessors -------------------------------------------------
    def dart_vertex(self, d: int) -> int:
        t, h, _ = self.edges[d >> 1]
        return h if d & 1 else t

    def tail(self, e: int) -> int:
        return self.edges[e][0]

    def head(self, e: int) -> int:
        return self.edges[e][1]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def n_plain_edges(self) -> int:
        return sum(1 for e in self.edges if e[2] == PLAIN)

    def _prev_table(self) -> list[int]:
        """prev[d] = the dart just clockwise of d around its vertex."""
        prev = self._cache.get("prev")
        if prev is None:
            prev = [0] * (2 * len(self.edges))
            for r in self.rot:
                for i, d in enumerate(r):
                    prev[d] = r[i - 1]
            self._cache["prev"] = prev
        return prev

    def _ccw_prev(self, d: int) -> int:
        return self._prev_table()[d]

    # -- faces -----------------------------------------------------------
    def faces(self) -> tuple[list[list[int]], list[int]]:
        """All faces as dart cycles (face on the left), plus dart -> face index."""
        got = self._cache.get("faces")
        if got is None:
            prev = self._prev_table()
            face_of = [-1] * (2 * self.n_edges)
            faces: list[list[int]] = []
            for start in range(2 * self.n_edges):
                if face_of[start] >= 0:
                    continue
                f = len(faces)
                cyc = []
                d = start
                while face_of[d] < 0:
                    face_of[d] = f
                    cyc.append(d)
                    d = prev[d ^ 1]
                faces.append(cyc)
            got = (faces, face_of)
            self._cache["faces"] = got
        return got

    def outer_face(self) -> int:
        if not self.rot[self.S]:
            raise InvalidOrientation("source has no incident edge")
        return self.faces()[1][self.rot[self.S][-1]]

    @staticmethod
    def _runs(cycle: list[int]) -> list[tuple[int, list[int]]] | None:
        """Split a dart cycle into maximal runs of forward (even) / backward (odd) darts."""
        if not cycle:
            return None
        k = 0
        n = len(cycle)
        # rotate so the cycle starts at a run boundary
        for k in range(n):
            if (cycle[k] & 1) != (cycle[k - 1] & 1):
                break
        else:
            return [(cycle[0] & 1, list(cycle))]
        rotated = cycle[k:] + cycle[:k]
        runs: list[tuple[int, list[int]]] = []
        for d in rotated:
            if runs and runs[-1][0] == (d & 1):
                runs[-1][1].append(d)
            else:
                runs.append((d & 1, [d]))
        return runs

    # -- validation ------------------------------------------------------
    def validate(self) -> ValidationReport:
        rep = self._cache.get("report")
        if rep is None:
            rep = self._validate()
            self._cache["report"] = rep
        return rep

    def _validate(self) -> ValidationReport:
        n, m = self.n_vertices, self.n_edges
        if m == 0:
            return ValidationReport(False, "no edges")
        adj = [[] for _ in range(n)]
        indeg = [0] * n
        outdeg = [0] * n
        for t, h, _ in self.edges:
            adj[t].append(h)
            adj[h].append(t)
            outdeg[t] += 1
            indeg[h] += 1
        seen = {self.S}
        queue = deque([self.S])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != n:
            return ValidationReport(False, "disconnected")
        faces, face_of = self.faces()
        if n - m + len(faces) != 2:
            return ValidationReport(False, "not planar", f"Euler characteristic {n - m + len(faces)}")
        # acyclicity (Kahn)
        deg = list(indeg)
        out_adj = [[] for _ in range(n)]
        for t, h, _ in self.edges:
            out_adj[t].append(h)
        ready = [v for v in range(n) if deg[v] == 0]
        done = 0
        while ready:
            v = ready.pop()
            done += 1
            for w in out_adj[v]:
                deg[w] -= 1
                if deg[w] == 0:
                    ready.append(w)
        if done != n:
            return ValidationReport(False, "cycle", "the orientation is not acyclic")
        sources = [v for v in range(n) if indeg[v] == 0]
        sinks = [v for v in range(n) if outdeg[v] == 0]
        if sources != [self.S]:
            return ValidationReport(False, "source mismatch", f"sources {sources}, declared S={self.S}")
        if sinks != [self.N]:
            return ValidationReport(False, "sink mismatch", f"sinks {sinks}, declared N={self.N}")
        for v in range(n):
            if v in (self.S, self.N):
                continue
            changes = sum(1 for i, d in enumerate(self.rot[v]) if (d & 1) != (self.rot[v][i - 1] & 1))
            if changes != 2:
                return ValidationReport(False, "vertex not bipolar", f"vertex {v}")
        outer = self.outer_face()
        for f, cyc in enumerate(faces):
            runs = self._runs(cyc)
            if runs is None or len(runs) != 2:
                what = "outer face" if f == outer else "inner face"
                return ValidationReport(False, f"{what} not bipolar", f"face {f}")
        left, right = self._boundaries_unchecked()
        if left[0] != self.S or left[-1] != self.N or right[0] != self.S or right[-1] != self.N:
            return ValidationReport(False, "poles not on outer face")
        # marks
        if self.vr == self.S or self.vr not in right:
            return ValidationReport(False, "v_r misplaced", "v_r must lie on the right boundary, above S")
        if self.vl == self.N or self.vl not in left:
            return ValidationReport(False, "v_l misplaced", "v_l must lie on the left boundary, below N")
        right_edges, left_edges = self._cache["boundary_edges"]
        ir = right.index(self.vr)
        il = left.index(self.vl)
        upper_right = right_edges[ir:]
        lower_left = left_edges[:il]
        for e in upper_right:
            t = self.tail(e)
            if outdeg[t] != 1 or face_of[2 * e] == outer:
                return ValidationReport(False, "upper-right condition", f"vertex {t}")
        for e in lower_left:
            h = self.head(e)
            if indeg[h] != 1 or face_of[2 * e + 1] == outer:
                return ValidationReport(False, "lower-left condition", f"vertex {h}")
        dashed = {e for e, (_, _, k) in enumerate(self.edges) if k == DASHED}
        if dashed != set(upper_right) | set(lower_left):
            return ValidationReport(False, "dashed edge set", "dashed edges must be exactly the upper-right and lower-left boundaries")
        return ValidationReport(True)

    def _boundaries_unchecked(self) -> tuple[list[int], list[int]]:
        """Left and right outer boundary vertex paths from S to N."""
        faces, _ = self.faces()
        runs = self._runs(faces[self.outer_face()])
        fwd = next(r for bit, r in runs if bit == 0)
        bwd = next(r for bit, r in runs if bit == 1)
        left_edges = [d >> 1 for d in fwd]
        right_edges = [d >> 1 for d in reversed(bwd)]
        left = [self.tail(left_edges[0])] + [self.head(e) for e in left_edges]
        right = [self.tail(right_edges[0])] + [self.head(e) for e in right_edges]
        self._cache["boundary_edges"] = (right_edges, left_edges)
        return left, right

    def require_valid(self) -> None:
        rep = self.validate()
        if not rep.ok:
            raise InvalidOrientation(f"invalid orientation: {rep.violation} {rep.detail}".strip())

    def boundaries(self) -> tuple[list[int], list[int]]:
        self.require_valid()
        return self._boundaries_unchecked()

    # -- derived data ----------------------------------------------------
    def bipolar_lists(self) -> tuple[tuple, tuple]:
        """Per-vertex (outs, ins), each ordered from left to right."""
        got = self._cache.get("lists")
        if got is not None:
            return got
        self.require_valid()
        outs, ins = [], []
        _, face_of = self.faces()
        outer = self.outer_face()
        for v, r in enumerate(self.rot):
            if v == self.S:
                o, i = [d >> 1 for d in reversed(r)], []
            elif v == self.N:
                k = next(k for k, d in enumerate(r) if face_of[d] == outer)
                lst = r[k + 1:] + r[:k + 1]
                o, i = [], [d >> 1 for d in lst]
            else:
                k = next(k for k, d in enumerate(r) if not d & 1 and r[k - 1] & 1)
                lst = r[k:] + r[:k]
                o = [d >> 1 for d in lst if not d & 1][::-1]
                i = [d >> 1 for d in lst if d & 1]
            outs.append(tuple(o))
            ins.append(tuple(i))
        got = (tuple(outs), tuple(ins))
        self._cache["lists"] = got
        return got

    def signature(self) -> Signature:
        left, right = self.boundaries()
        a = left.index(self.vl)
        b = len(left) - 1 - a - 1
        c = right.index(self.vr) - 1
        d = len(right) - 1 - (c + 1)
        return Signature(a, b, c, d)

    def face_census(self) -> tuple[dict[int, int], list[tuple[int, int]]]:
        """(degree -> number of inner faces, list of inner face types (i, j))."""
        self.require_valid()
        faces, _ = self.faces()
        outer = self.outer_face()
        types = []
        for f, cyc in enumerate(faces):
            if f == outer:
                continue
            fwd = sum(1 for d in cyc if not d & 1)
            types.append((len(cyc) - fwd - 1, fwd - 1))
        types.sort()
        return dict(sorted(Counter(i + j + 2 for i, j in types).items())), types

    def outer_degree(self) -> int:
        return len(self.faces()[0][self.outer_face()])

    def plain_vertices(self) -> list[int]:
        left, right = self.boundaries()
        marked = set(right[right.index(self.vr):]) | set(left[:left.index(self.vl) + 1])
        return [v for v in range(self.n_vertices) if v not in marked]

    # -- symmetries ------------------------------------------------------
    def rho(self) -> "MarkedBipolarOrientation":
        """Reverse every edge: S <-> N and v_l <-> v_r."""
        outs, ins = self.bipolar_lists()
        edges = [(h, t, k) for t, h, k in self.edges]
        new_outs = [tuple(reversed(i)) for i in ins]
        new_ins = [tuple(reversed(o)) for o in outs]
        tails = [e[0] for e in edges]
        heads = [e[1] for e in edges]
        kinds = [e[2] for e in edges]
        return MarkedBipolarOrientation.from_bipolar_lists(
            tails, heads, kinds, new_outs, new_ins, self.N, self.S, self.vr, self.vl, check=False)

    def sigma(self) -> "MarkedBipolarOrientation":
        """Mirror the map, then reverse the plain edges only.

        New poles and marks: S' = v_r, N' = v_l, v_l' = N, v_r' = S.
        """
        outs, ins = self.bipolar_lists()
        new_edges = [(h, t, k) if k == PLAIN else (t, h, k) for t, h, k in self.edges]
        new_S, new_N = self.vr, self.vl
        new_outs, new_ins = [], []
        for v in range(self.n_vertices):
            # mirrored counterclockwise order, as edge ids
            ccw = list(reversed([e for e in reversed(outs[v])] + list(ins[v])))
            is_out = [new_edges[e][0] == v for e in ccw]
            if v == new_S:
                # outer sector sits between old ins[-1] and old outs[-1]
                lst = list(reversed(ins[v])) + list(outs[v])
                if not all(new_edges[e][0] == v for e in lst):
                    raise InvalidOrientation("sigma: new source has an incoming edge")
                new_outs.append(tuple(reversed(lst)))
                new_ins.append(())
            elif v == new_N:
                lst = list(outs[v]) + list(reversed(ins[v]))
                if any(new_edges[e][0] == v for e in lst):
                    raise InvalidOrientation("sigma: new sink has an outgoing edge")
                new_outs.append(())
                new_ins.append(tuple(lst))
            else:
                k = next((k for k in range(len(ccw)) if is_out[k] and not is_out[k - 1]), None)
                if k is None:
                    raise InvalidOrientation(f"sigma: vertex {v} lost its bipolar structure")
                lst = ccw[k:] + ccw[:k]
                new_outs.append(tuple(e for e in lst if new_edges[e][0] == v)[::-1])
                new_ins.append(tuple(e for e in lst if new_edges[e][0] != v))
        tails = [e[0] for e in new_edges]
        heads = [e[1] for e in new_edges]
        kinds = [e[2] for e in new_edges]
        return MarkedBipolarOrientation.from_bipolar_lists(
            tails, heads, kinds, new_outs, new_ins, new_S, new_N, self.N, self.S, check=False)

    # -- equality --------------------------------------------------------
    def canonical_key(self) -> tuple:
        """Invariant of root-preserving isomorphism: relabel by traversal from S."""
        key = self._cache.get("key")
        if key is not None:
            return key
        outs, ins = self.bipolar_lists()
        vlabel = {self.S: 0}
        elabel: dict[int, int] = {}
        order = [self.S]
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            for e in list(outs[v]) + list(ins[v]):
                if e not in elabel:
                    elabel[e] = len(elabel)
                for w in self.edges[e][:2]:
                    if w not in vlabel:
                        vlabel[w] = len(vlabel)
                        order.append(w)
        edges = [None] * len(elabel)
        for e, le in elabel.items():
            t, h, k = self.edges[e]
            edges[le] = (vlabel[t], vlabel[h], k)
        lists = tuple((tuple(elabel[e] for e in outs[v]), tuple(elabel[e] for e in ins[v])) for v in order)
        key = (tuple(edges), lists, vlabel[self.N], vlabel[self.vl], vlabel[self.vr])
        self._cache["key"] = key
        return key

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedBipolarOrientation):
            return NotImplemented
        if (self.n_vertices, self.n_edges) != (other.n_vertices, other.n_edges):
            return False
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return (f"MarkedBipolarOrientation(vertices={self.n_vertices}, edges={list(self.edges)}, "
                f"S={self.S}, N={self.N}, vl={self.vl}, vr={self.vr})")

    # -- I/O -------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "edges": [[t, h, k] for t, h, k in self.edges],
            "rot": [list(r) for r in self.rot],
            "S": self.S, "N": self.N, "vl": self.vl, "vr": self.vr,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "MarkedBipolarOrientation":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], data["edges"], data["rot"], data["S"], data["N"], data["vl"], data["vr"])

    def to_dot(self, name: str = "O") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for v in range(self.n_vertices):
            label = {self.S: "S", self.N: "N"}.get(v, str(v))
            extra = []
            if v == self.vl:
                extra.append("v_l")
            if v == self.vr:
                extra.append("v_r")
            if extra:
                label += " (" + ",".join(extra) + ")"
            lines.append(f'  {v} [label="{label}"];')
        for e, (t, h, k) in enumerate(self.edges):
            style = "solid" if k == PLAIN else "dashed"
            lines.append(f'  {t} -> {h} [style={style}, label="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def unit_orientation() -> MarkedBipolarOrientation:
    return MarkedBipolarOrientation.from_bipolar_lists([0], [1], [PLAIN], [(0,), ()], [(), (0,)], 0, 1, 0, 1)


def signature(O: MarkedBipolarOrientation) -> Signature:
    return O.signature()


def validate(O: MarkedBipolarOrientation) -> ValidationReport:
    return O.validate()


def rho(O: MarkedBipolarOrientation) -> MarkedBipolarOrientation:
    return O.rho()


def sigma(O: MarkedBipolarOrientation) -> MarkedBipolarOrientation:
    return O.sigma()


def face_census(O: MarkedBipolarOrientation):
    return O.face_census()
