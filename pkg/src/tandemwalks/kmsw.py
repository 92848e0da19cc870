"""The KMSW bijection between tandem walks and marked bipolar orientations.

Construction state: per-vertex out/in edge lists (left to right), the
lower-right boundary as a stack ``lower`` = [S, ..., v_r] and the part of
the right boundary above v_r as a stack ``upper`` = [N, ..., vertex just
above v_r].  Both updates of the construction then touch only the tops of
these stacks.
"""

from __future__ import annotations

from functools import lru_cache

from .maps import DASHED, PLAIN, InvalidOrientation, MarkedBipolarOrientation
from .steps import SE, Step, TandemWalk, is_confined, walk_stats


class _State:
    __slots__ = ("tails", "heads", "kinds", "outs", "ins", "alive", "lower", "upper", "S", "N", "vl", "on_left")

    def __init__(self) -> None:
        self.tails: list[int] = []
        self.heads: list[int] = []
        self.kinds: list[str] = []
        self.outs: list[list[int]] = []
        self.ins: list[list[int]] = []
        self.alive: list[bool] = []

    def add_vertex(self) -> int:
        self.outs.append([])
        self.ins.append([])
        self.alive.append(True)
        return len(self.outs) - 1

    def add_edge(self, t: int, h: int, kind: str = PLAIN) -> int:
        self.tails.append(t)
        self.heads.append(h)
        self.kinds.append(kind)
        return len(self.tails) - 1

    # -- forward steps ---------------------------------------------------
    def se(self) -> None:
        if self.upper:
            self.lower.append(self.upper.pop())
            return
        n_old = self.N
        n_new = self.add_vertex()
        e = self.add_edge(n_old, n_new)
        self.outs[n_old].append(e)
        self.ins[n_new].append(e)
        self.N = n_new
        self.lower.append(n_new)

    def face(self, i: int, j: int) -> None:
        lower = self.lower
        top = lower[-1]
        k = len(lower) - 1  # edges on the lower-right boundary
        if i + 1 <= k:
            del lower[len(lower) - (i + 1):]
            u = lower[-1]
        else:
            # the face reaches below S: new dashed edges on the lower-left boundary
            old_s = self.S
            prev = old_s
            for _ in range(i + 1 - k):
                w = self.add_vertex()
                e = self.add_edge(w, prev, DASHED)
                self.outs[w].append(e)
                self.ins[prev].insert(0, e)
                prev = w
            u = prev
            self.S = u
            lower.clear()
            lower.append(u)
        # right boundary of the new face: u -> w_1 -> ... -> w_j -> top
        path = [u] + [self.add_vertex() for _ in range(j)] + [top]
        for x, y in zip(path, path[1:]):
            e = self.add_edge(x, y)
            self.outs[x].append(e)
            self.ins[y].append(e)
        if j == 0:
            lower.append(top)
        else:
            self.upper.append(top)
            self.upper.extend(reversed(path[2:-1]))
            lower.append(path[1])

    def finish(self) -> MarkedBipolarOrientation:
        kinds = [PLAIN] * len(self.tails)
        # upper-right boundary: from v_r up the rightmost out-edges
        v = self.lower[-1]
        while self.outs[v]:
            e = self.outs[v][-1]
            kinds[e] = DASHED
            v = self.heads[e]
        # lower-left boundary: from S up the leftmost out-edges until v_l
        v = self.S
        while v != self.vl:
            e = self.outs[v][0]
            kinds[e] = DASHED
            v = self.heads[e]
        return MarkedBipolarOrientation.from_bipolar_lists(
            self.tails, self.heads, kinds, self.outs, self.ins, self.S, self.N, self.vl, self.lower[-1],
            check=False)


def phi(w) -> MarkedBipolarOrientation:
    """Run the step-by-step construction on the walk ``w``."""
    st = _State()
    s, n = st.add_vertex(), st.add_vertex()
    e = st.add_edge(s, n)
    st.outs[s].append(e)
    st.ins[n].append(e)
    st.S, st.N, st.vl = s, n, s
    st.lower, st.upper = [s, n], []
    for step in w:
        if step.i is None:
            st.se()
        else:
            st.face(step.i, step.j)
    return st.finish()


def _load(O: MarkedBipolarOrientation) -> _State:
    O.require_valid()
    outs, ins = O.bipolar_lists()
    st = _State()
    st.tails = [e[0] for e in O.edges]
    st.heads = [e[1] for e in O.edges]
    st.kinds = [e[2] for e in O.edges]
    st.outs = [list(o) for o in outs]
    st.ins = [list(i) for i in ins]
    st.alive = [True] * O.n_vertices
    st.S, st.N, st.vl = O.S, O.N, O.vl
    left, right = O.boundaries()
    k = right.index(O.vr)
    st.lower = right[: k + 1]
    st.upper = right[k + 1:][::-1]
    st.on_left = set(left)
    return st


def _bad(msg: str) -> InvalidOrientation:
    return InvalidOrientation(f"not in the image of phi: {msg}")


def _undo(st: _State) -> Step:
    lower, outs, ins, heads = st.lower, st.outs, st.ins, st.heads
    if len(lower) < 2:
        raise _bad("v_r coincides with S")
    v = lower[-1]
    u = lower[-2]
    e = ins[v][-1]
    if st.tails[e] != u or outs[u][-1] != e:
        raise _bad("right boundary is inconsistent")
    if len(outs[u]) > 1:
        # face step: trace the face's right boundary upward from e
        right_path = [e]
        x, ce = v, e
        while ins[x][0] == ce:
            if len(ins[x]) != 1 or len(outs[x]) != 1:
                raise _bad("face right boundary has a branching vertex")
            ce = outs[x][0]
            if st.kinds[ce] != DASHED:
                raise _bad("face right boundary above v_r is not dashed")
            right_path.append(ce)
            x = heads[ce]
        top = x
        j = len(right_path) - 1
        for m in range(1, j + 1):
            if st.upper[-m] != heads[right_path[m]]:
                raise _bad("face right boundary leaves the outer boundary")
        # left boundary of the face, from u up to top
        left_edges = []
        ce = outs[u][-2]
        x = heads[ce]
        left_edges.append(ce)
        while x != top:
            if ins[x][-1] != ce or not outs[x]:
                raise _bad("face left boundary is inconsistent")
            ce = outs[x][-1]
            left_edges.append(ce)
            x = heads[ce]
        i = len(left_edges) - 1
        # remove the right boundary of the face
        for ce in right_path:
            outs[st.tails[ce]].pop()
            ins[heads[ce]].pop()
        for ce in right_path[:-1]:
            st.alive[heads[ce]] = False
        lower.pop()
        for _ in range(j):
            st.upper.pop()
        h = 0
        while h < len(left_edges) and st.kinds[left_edges[h]] == DASHED:
            h += 1
        if h:
            if u != st.S:
                raise _bad("dashed face edges away from the source")
            for ce in left_edges[:h]:
                st.alive[st.tails[ce]] = False
                st.on_left.discard(st.tails[ce])
            new_s = heads[left_edges[h - 1]]
            if ins[new_s] != [left_edges[h - 1]]:
                raise _bad("old source has extra incoming edges")
            ins[new_s].clear()
            st.S = new_s
            lower.clear()
            lower.append(new_s)
            lower.extend(heads[ce] for ce in left_edges[h:])
        else:
            lower.extend(heads[ce] for ce in left_edges)
        return Step(i, j)
    if u in st.on_left:
        # SE step that created a new top edge
        if v != st.N or st.upper:
            raise _bad("top edge shared by both boundaries below N")
        outs[u].pop()
        ins[v].pop()
        st.alive[v] = False
        st.on_left.discard(v)
        st.N = u
        lower.pop()
        return SE
    if st.kinds[e] != PLAIN:
        raise _bad("edge below v_r is dashed")
    st.kinds[e] = DASHED
    st.upper.append(lower.pop())
    return SE


def phi_inverse(O: MarkedBipolarOrientation) -> TandemWalk:
    st = _load(O)
    n = O.n_plain_edges() - 1
    steps = []
    for _ in range(n):
        steps.append(_undo(st))
    if (sum(st.alive) != 2 or st.lower != [st.S, st.N] or st.upper or st.vl != st.S):
        raise _bad("did not reduce to the single-edge orientation")
    steps.reverse()
    return TandemWalk(steps)


def rho_on_walks(w) -> TandemWalk:
    return TandemWalk(SE if s.i is None else Step(s.j, s.i) for s in reversed(tuple(w)))


@lru_cache(maxsize=1 << 16)
def _sigma_cached(steps: tuple) -> TandemWalk:
    return phi_inverse(phi(steps).sigma())


def sigma_on_walks(w) -> TandemWalk:
    """phi^{-1} o sigma o phi; swaps the statistics a and d."""
    return _sigma_cached(tuple(w))


def is_excursion(w) -> bool:
    from .steps import trajectory
    return is_confined(w, (0, 0)) and trajectory(w)[-1] == (0, 0)


def excursion_to_bipolar(w) -> MarkedBipolarOrientation:
    """Excursion of length n >= 2 -> unmarked bipolar orientation with n - 1 edges.

    phi(w) has signature (0,0;0,0): its outer face is a digon made of two
    edges S -> N.  Erasing them leaves the orientation.
    """
    w = tuple(w)
    if len(w) < 2:
        raise ValueError("excursions of length < 2 have no orientation with >= 1 edge")
    if not is_excursion(w):
        raise ValueError("walk is not a quadrant excursion")
    O = phi(w)
    outs, ins = O.bipolar_lists()
    drop = {outs[O.S][0], outs[O.S][-1]}
    keep = [e for e in range(O.n_edges) if e not in drop]
    new_id = {e: k for k, e in enumerate(keep)}
    return MarkedBipolarOrientation.from_bipolar_lists(
        [O.edges[e][0] for e in keep], [O.edges[e][1] for e in keep], [PLAIN] * len(keep),
        [[new_id[e] for e in o if e in new_id] for o in outs],
        [[new_id[e] for e in i if e in new_id] for i in ins],
        O.S, O.N, O.S, O.N)


def bipolar_to_excursion(B: MarkedBipolarOrientation) -> TandemWalk:
    """Inverse of :func:`excursion_to_bipolar`: add the two outer edges back and undo phi."""
    B.require_valid()
    if B.vl != B.S or B.vr != B.N:
        raise ValueError("orientation must be unmarked")
    outs, ins = B.bipolar_lists()
    m = B.n_edges
    tails = [e[0] for e in B.edges] + [B.S, B.S]
    heads = [e[1] for e in B.edges] + [B.N, B.N]
    new_outs = [list(o) for o in outs]
    new_ins = [list(i) for i in ins]
    new_outs[B.S] = [m] + new_outs[B.S] + [m + 1]
    new_ins[B.N] = [m] + new_ins[B.N] + [m + 1]
    O = MarkedBipolarOrientation.from_bipolar_lists(
        tails, heads, [PLAIN] * (m + 2), new_outs, new_ins, B.S, B.N, B.S, B.N)
    return phi_inverse(O)
