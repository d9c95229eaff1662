"""Left-right planarity testing with combinatorial embedding extraction.

The tester follows Brandes' left-right partition formulation.  Edges are
handled as integer darts: edge e with endpoints (u, v), u < v, owns dart
2*e (u -> v) and dart 2*e + 1 (v -> u); d ^ 1 reverses a dart.  This keeps
all per-edge state in flat lists, which matters because the backtracking
search calls the tester thousands of times on small graphs.

Two entry points exist on purpose: :func:`is_planar_edges` runs only the
orientation and testing phases, while :func:`rotation_edges` additionally
runs the embedding phase and returns per-vertex clockwise rotations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


class InconsistentRotationError(ValueError):
    """A rotation system does not structurally match its graph."""


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of incident edge ids around every vertex.

    ``order[v]`` lists the edges at v in clockwise order.  Together with
    the graph this determines a set of faces; see :func:`euler_check`.
    """

    order: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_lists(lists: list[list[int]]) -> "RotationSystem":
        return RotationSystem(tuple(tuple(r) for r in lists))


@dataclass(frozen=True)
class PlanarityVerdict:
    planar: bool
    rotation: RotationSystem | None


# ---------------------------------------------------------------------------
# Left-right state
# ---------------------------------------------------------------------------

_NONE = -1


class _Interval:
    """Return edges imposing one orientation constraint; -1 means empty."""

    __slots__ = ("low", "high")

    def __init__(self, low: int = _NONE, high: int = _NONE) -> None:
        self.low = low
        self.high = high

    def empty(self) -> bool:
        return self.low == _NONE and self.high == _NONE


class _ConflictPair:
    """Two intervals whose return edges must take opposite sides."""

    __slots__ = ("left", "right")

    def __init__(self, left: _Interval | None = None, right: _Interval | None = None) -> None:
        self.left = left if left is not None else _Interval()
        self.right = right if right is not None else _Interval()

    def swap(self) -> None:
        self.left, self.right = self.right, self.left


class _LRState:
    def __init__(self, n: int, edges: tuple[tuple[int, int], ...] | list[tuple[int, int]]) -> None:
        self.n = n
        self.edges = edges
        m = len(edges)
        self.m = m
        # Incident out-darts per vertex, in increasing edge-id order.
        adj: list[list[int]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(edges):
            adj[u].append(2 * e)
            adj[v].append(2 * e + 1)
        self.adj = adj

        self.height = [_NONE] * n
        self.parent_dart = [_NONE] * n
        self.roots: list[int] = []

        self.oriented = [False] * m
        self.out_darts: list[list[int]] = [[] for _ in range(n)]
        self.lowpt = [0] * (2 * m)
        self.lowpt2 = [0] * (2 * m)
        self.nesting = [0] * (2 * m)

        self.ref = [_NONE] * (2 * m)
        self.side = [1] * (2 * m)
        self.S: list[_ConflictPair] = []
        self.stack_bottom: list[_ConflictPair | None] = [None] * (2 * m)
        self.lowpt_edge = [_NONE] * (2 * m)

        self.ordered: list[list[int]] = [[] for _ in range(n)]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    # -- phase 1: orientation, lowpoints, nesting depth --------------------

    def run_orientation(self) -> None:
        for v in range(self.n):
            if self.height[v] == _NONE:
                self.height[v] = 0
                self.roots.append(v)
                self._dfs_orient(v)

    def _dfs_orient(self, root: int) -> None:
        lowpt, lowpt2, height = self.lowpt, self.lowpt2, self.height
        ind = [0] * self.n
        skip_init = [False] * (2 * self.m)
        stack = [root]
        while stack:
            v = stack.pop()
            e = self.parent_dart[v]
            adj = self.adj[v]
            i = ind[v]
            pushed = False
            while i < len(adj):
                d = adj[i]
                if not skip_init[d]:
                    if self.oriented[d >> 1]:
                        i += 1
                        continue
                    self.oriented[d >> 1] = True
                    self.out_darts[v].append(d)
                    w = self.head(d)
                    lowpt[d] = height[v]
                    lowpt2[d] = height[v]
                    if height[w] == _NONE:  # tree dart
                        self.parent_dart[w] = d
                        height[w] = height[v] + 1
                        skip_init[d] = True
                        ind[v] = i
                        stack.append(v)
                        stack.append(w)
                        pushed = True
                        break
                    else:  # back dart
                        lowpt[d] = height[w]
                nd = 2 * lowpt[d]
                if lowpt2[d] < height[v]:  # chordal
                    nd += 1
                self.nesting[d] = nd
                if e != _NONE:
                    if lowpt[d] < lowpt[e]:
                        lowpt2[e] = min(lowpt[e], lowpt2[d])
                        lowpt[e] = lowpt[d]
                    elif lowpt[d] > lowpt[e]:
                        lowpt2[e] = min(lowpt2[e], lowpt[d])
                    else:
                        lowpt2[e] = min(lowpt2[e], lowpt2[d])
                i += 1
            if not pushed:
                ind[v] = i

    # -- phase 2: left-right partition test ---------------------------------

    def run_testing(self) -> bool:
        for v in range(self.n):
            self.ordered[v] = sorted(self.out_darts[v], key=self.nesting.__getitem__)
        for root in self.roots:
            if not self._dfs_test(root):
                return False
        return True

    def _dfs_test(self, root: int) -> bool:
        ind = [0] * self.n
        skip_init = [False] * (2 * self.m)
        stack = [root]
        while stack:
            v = stack.pop()
            e = self.parent_dart[v]
            oa = self.ordered[v]
            i = ind[v]
            skip_final = False
            while i < len(oa):
                d = oa[i]
                if not skip_init[d]:
                    self.stack_bottom[d] = self.S[-1] if self.S else None
                    w = self.head(d)
                    if d == self.parent_dart[w]:  # tree dart: recurse first
                        skip_init[d] = True
                        ind[v] = i
                        stack.append(v)
                        stack.append(w)
                        skip_final = True
                        break
                    else:  # back dart starts its own one-edge interval
                        self.lowpt_edge[d] = d
                        self.S.append(_ConflictPair(right=_Interval(d, d)))
                if self.lowpt[d] < self.height[v]:  # d has a return edge
                    if d == oa[0]:
                        self.lowpt_edge[e] = self.lowpt_edge[d]
                    elif not self._add_constraints(d, e):
                        return False
                i += 1
            if not skip_final:
                ind[v] = i
                if e != _NONE:
                    self._trim_back_edges(e)
        return True

    def _conflicting(self, interval: _Interval, b: int) -> bool:
        return not interval.empty() and self.lowpt[interval.high] > self.lowpt[b]

    def _add_constraints(self, ei: int, e: int) -> bool:
        S = self.S
        P = _ConflictPair()
        # merge return edges of ei into P.right
        while True:
            Q = S.pop()
            if not Q.left.empty():
                Q.swap()
            if not Q.left.empty():
                return False
            if self.lowpt[Q.right.low] > self.lowpt[e]:
                if P.right.empty():  # topmost interval
                    P.right.high = Q.right.high
                else:
                    self.ref[P.right.low] = Q.right.high
                P.right.low = Q.right.low
            else:  # align
                self.ref[Q.right.low] = self.lowpt_edge[e]
            if (S[-1] if S else None) is self.stack_bottom[ei]:
                break
        # merge conflicting return edges of earlier siblings into P.left
        while self._conflicting(S[-1].left, ei) or self._conflicting(S[-1].right, ei):
            Q = S.pop()
            if self._conflicting(Q.right, ei):
                Q.swap()
            if self._conflicting(Q.right, ei):
                return False
            if P.right.low != _NONE:
                self.ref[P.right.low] = Q.right.high
            if Q.right.low != _NONE:
                P.right.low = Q.right.low
            if P.left.empty():  # topmost interval
                P.left.high = Q.left.high
            else:
                self.ref[P.left.low] = Q.left.high
            P.left.low = Q.left.low
        if not (P.left.empty() and P.right.empty()):
            S.append(P)
        return True

    def _lowest(self, P: _ConflictPair) -> int:
        if P.left.empty():
            return self.lowpt[P.right.low]
        if P.right.empty():
            return self.lowpt[P.left.low]
        return min(self.lowpt[P.left.low], self.lowpt[P.right.low])

    def _trim_back_edges(self, e: int) -> None:
        """Drop return edges ending at the tail of tree dart e."""
        u = self.tail(e)
        S = self.S
        while S and self._lowest(S[-1]) == self.height[u]:
            P = S.pop()
            if P.left.low != _NONE:
                self.side[P.left.low] = -1
        if S:
            P = S.pop()
            while P.left.high != _NONE and self.head(P.left.high) == u:
                P.left.high = self.ref[P.left.high]
            if P.left.high == _NONE and P.left.low != _NONE:  # just emptied
                self.ref[P.left.low] = P.right.low
                self.side[P.left.low] = -1
                P.left.low = _NONE
            while P.right.high != _NONE and self.head(P.right.high) == u:
                P.right.high = self.ref[P.right.high]
            if P.right.high == _NONE and P.right.low != _NONE:
                self.ref[P.right.low] = P.left.low
                self.side[P.right.low] = -1
                P.right.low = _NONE
            S.append(P)
        if self.lowpt[e] < self.height[u]:  # e has its own return edge
            hl = S[-1].left.high
            hr = S[-1].right.high
            if hl != _NONE and (hr == _NONE or self.lowpt[hl] > self.lowpt[hr]):
                self.ref[e] = hl
            else:
                self.ref[e] = hr

    # -- phase 3: embedding -------------------------------------------------

    def _resolve_sign(self, d: int) -> int:
        """Absolute side of dart d via its reference chain."""
        chain = []
        x = d
        while self.ref[x] != _NONE:
            chain.append(x)
            x = self.ref[x]
        while chain:
            x = chain.pop()
            self.side[x] *= self.side[self.ref[x]]
            self.ref[x] = _NONE
        return self.side[d]

    def run_embedding(self) -> list[list[int]]:
        for v in range(self.n):
            for d in self.out_darts[v]:
                self.nesting[d] *= self._resolve_sign(d)
        rotation: list[list[int]] = []
        for v in range(self.n):
            self.ordered[v] = sorted(self.out_darts[v], key=self.nesting.__getitem__)
            rotation.append(list(self.ordered[v]))
        left_ref = [_NONE] * self.n
        right_ref = [_NONE] * self.n
        ind = [0] * self.n
        for root in self.roots:
            stack = [root]
            while stack:
                v = stack.pop()
                oa = self.ordered[v]
                i = ind[v]
                pushed = False
                while i < len(oa):
                    d = oa[i]
                    i += 1
                    w = self.head(d)
                    if d == self.parent_dart[w]:  # tree dart
                        rotation[w].insert(0, d ^ 1)
                        left_ref[v] = d
                        right_ref[v] = d
                        ind[v] = i
                        stack.append(v)
                        stack.append(w)
                        pushed = True
                        break
                    # back dart: weave the reversed dart into the target
                    rw = rotation[w]
                    if self.side[d] == 1:
                        rw.insert(rw.index(right_ref[w]) + 1, d ^ 1)
                    else:
                        rw.insert(rw.index(left_ref[w]), d ^ 1)
                        left_ref[w] = d ^ 1
                if not pushed:
                    ind[v] = i
        return rotation


def _run(n: int, edges, want_embedding: bool) -> list[list[int]] | None:
    """Shared driver; returns dart rotations or None if nonplanar."""
    m = len(edges)
    if n > 2 and m > 3 * n - 6:
        return None
    state = _LRState(n, edges)
    state.run_orientation()
    if not state.run_testing():
        return None
    if not want_embedding:
        return []
    return state.run_embedding()


def is_planar_edges(n: int, edges) -> bool:
    """Planarity of the simple graph given as an edge list (no embedding)."""
    return _run(n, edges, want_embedding=False) is not None


def rotation_edges(n: int, edges) -> list[list[int]] | None:
    """Clockwise edge-id rotations of a planar embedding, or None."""
    darts = _run(n, edges, want_embedding=True)
    if darts is None:
        return None
    return [[d >> 1 for d in rot] for rot in darts]


def test_planarity(g: Graph) -> PlanarityVerdict:
    """Run the full test on a Graph; positive verdicts carry an embedding."""
    rot = rotation_edges(g.n, g.edges)
    if rot is None:
        return PlanarityVerdict(planar=False, rotation=None)
    return PlanarityVerdict(planar=True, rotation=RotationSystem.from_lists(rot))


# ---------------------------------------------------------------------------
# Euler check
# ---------------------------------------------------------------------------


def euler_check(g: Graph, rs: RotationSystem) -> bool:
    """Check that a rotation system describes a sphere embedding.

    Structural defects (wrong length, duplicate, missing or foreign edges)
    raise :class:`InconsistentRotationError`.  For a structurally valid
    rotation the return value says whether every edge-bearing connected
    component satisfies V - E + F = 2 under face tracing.
    """
    order = rs.order
    if len(order) != g.n:
        raise InconsistentRotationError(
            f"rotation has {len(order)} vertices, graph has {g.n}"
        )
    pos: list[dict[int, int]] = []
    for v in range(g.n):
        seen: dict[int, int] = {}
        for i, e in enumerate(order[v]):
            if not (0 <= e < g.m):
                raise InconsistentRotationError(f"unknown edge id {e} at vertex {v}")
            if e in seen:
                raise InconsistentRotationError(f"edge {e} repeated at vertex {v}")
            a, b = g.edges[e]
            if v != a and v != b:
                raise InconsistentRotationError(f"edge {e} not incident to vertex {v}")
            seen[e] = i
        if len(seen) != g.degree(v):
            raise InconsistentRotationError(f"rotation at vertex {v} misses edges")
        pos.append(seen)

    if g.m == 0:
        return True

    # union-find over vertices joined by edges
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    # trace faces: successor of dart d is the rotation successor of d
    # reversed, taken at the head vertex of d
    def head(d: int) -> int:
        return g.edges[d >> 1][1 - (d & 1)]

    def tail(d: int) -> int:
        return g.edges[d >> 1][d & 1]

    faces: dict[int, int] = {}
    seen_dart = [False] * (2 * g.m)
    for start in range(2 * g.m):
        if seen_dart[start]:
            continue
        comp = find(tail(start))
        faces[comp] = faces.get(comp, 0) + 1
        d = start
        while not seen_dart[d]:
            seen_dart[d] = True
            h = head(d)
            rot = order[h]
            i = pos[h][d >> 1]
            f = rot[(i + 1) % len(rot)]
            a, b = g.edges[f]
            d = 2 * f if h == a else 2 * f + 1

    verts: dict[int, int] = {}
    edges_per: dict[int, int] = {}
    for v in range(g.n):
        if g.degree(v) > 0:
            c = find(v)
            verts[c] = verts.get(c, 0) + 1
    for a, _ in g.edges:
        c = find(a)
        edges_per[c] = edges_per.get(c, 0) + 1

    return all(
        verts[c] - edges_per[c] + faces.get(c, 0) == 2 for c in verts
    )
