"""Disjoint paths, minimum cuts and strong Menger checks via unit-capacity max-flow.

Vertex-disjoint paths use the split-vertex network: every vertex ``x`` becomes
``x_in -> x_out`` with capacity 1 and each surviving edge ``{a, b}`` becomes
``a_out -> b_in`` and ``b_out -> a_in``.  Edge-disjoint paths use the graph
itself with one unit of capacity per undirected edge.  Augmenting paths are
found breadth first, so the flow and its decomposition are deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure-Python fallback
    def njit(*args, **kwargs):
        return args[0] if args and callable(args[0]) else (lambda fn: fn)

from .errors import AqError
from .faultset import EDGE, VERTEX, FaultSet, surviving_degrees

__all__ = [
    "PathBundle",
    "MengerVerdict",
    "FlowNetwork",
    "max_vertex_disjoint_paths",
    "max_edge_disjoint_paths",
    "min_cut",
    "is_strongly_menger",
    "local_connectivity",
    "verify_bundle",
]


@dataclass(frozen=True)
class PathBundle:
    source: int
    target: int
    paths: tuple[tuple[int, ...], ...]
    mode: str

    @property
    def count(self) -> int:
        return len(self.paths)

    def to_json(self) -> dict:
        return {
            "endpoints": [self.source, self.target],
            "mode": self.mode,
            "count": self.count,
            "paths": [list(p) for p in self.paths],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "PathBundle":
        s, t = data["endpoints"]
        return cls(s, t, tuple(tuple(p) for p in data["paths"]), data["mode"])


@dataclass(frozen=True)
class MengerVerdict:
    holds: bool
    mode: str
    witness: tuple[int, int, int, int] | None = None  # (u, v, achieved, required)
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds, "mode": self.mode, "pairs_checked": self.pairs_checked}
        if self.witness is not None:
            u, v, got, need = self.witness
            out["witness"] = {"u": u, "v": v, "achieved": got, "required": need}
        return out


def _check_mode(f: FaultSet | None, mode: str) -> FaultSet:
    if mode not in (VERTEX, EDGE):
        raise AqError(f"mode must be 'vertex' or 'edge', got {mode!r}")
    if f is None:
        return FaultSet(mode)
    if f.kind != mode:
        raise AqError(f"{f.kind} faults cannot be used for a {mode}-disjoint query")
    return f


@njit(cache=True)
def _augment(head, ptr, arcs, cap, s, t, limit):
    """Breadth-first augmenting paths on a unit-capacity residual network.

    ``cap`` is updated in place; arcs ``a`` and ``a ^ 1`` are mutual reverses.
    """
    nodes = ptr.shape[0] - 1
    parent = np.empty(nodes, dtype=np.int32)
    queue = np.empty(nodes, dtype=np.int32)
    flow = 0
    while flow < limit:
        parent[:] = -1
        parent[s] = -2
        queue[0] = s
        qh, qt = 0, 1
        found = False
        while qh < qt and not found:
            x = queue[qh]
            qh += 1
            for j in range(ptr[x], ptr[x + 1]):
                a = arcs[j]
                if cap[a] > 0:
                    y = head[a]
                    if parent[y] == -1:
                        parent[y] = a
                        if y == t:
                            found = True
                            break
                        queue[qt] = y
                        qt += 1
        if not found:
            break
        y = t
        while y != s:
            a = parent[y]
            cap[a] -= 1
            cap[a ^ 1] += 1
            y = head[a ^ 1]
        flow += 1
    return flow


class FlowNetwork:
    """Residual network of G - f for one disjointness mode.

    Build once per fault set; :meth:`max_flow` resets the residual capacities
    on every call, so one network serves any number of vertex pairs.
    """

    def __init__(self, g, f: FaultSet | None = None, mode: str = VERTEX, edge_cap: int = 1):
        # edge_cap > 1 forces vertex-mode cuts onto split arcs; it is only
        # sound for non-adjacent endpoints, where each edge arc carries <= 1 unit
        f = _check_mode(f, mode).validate(g)
        self.g = g
        self.f = f
        self.mode = mode
        self.alive = [True] * g.order
        head: list[int] = []
        cap0: list[int] = []

        def arc(a, b, c_fwd, c_back):
            head.append(b)
            cap0.append(c_fwd)
            head.append(a)
            cap0.append(c_back)

        if mode == VERTEX:
            for x in f.members:
                self.alive[x] = False
            nodes = 2 * g.order
            adj: list[list[int]] = [[] for _ in range(nodes)]
            for x in range(g.order):
                if not self.alive[x]:
                    continue
                a = len(head)
                arc(2 * x, 2 * x + 1, 1, 0)
                adj[2 * x].append(a)
                adj[2 * x + 1].append(a + 1)
            for a_, b_, _ in g.edges:
                if not (self.alive[a_] and self.alive[b_]):
                    continue
                for x, y in ((a_, b_), (b_, a_)):
                    a = len(head)
                    arc(2 * x + 1, 2 * y, edge_cap, 0)
                    adj[2 * x + 1].append(a)
                    adj[2 * y].append(a + 1)
        else:
            dead = f.members
            adj = [[] for _ in range(g.order)]
            for e, (x, y, _) in enumerate(g.edges):
                if e in dead:
                    continue
                a = len(head)
                arc(x, y, 1, 1)
                adj[x].append(a)
                adj[y].append(a + 1)
        # neighbor-id order keeps BFS and decomposition independent of edge ids
        for row in adj:
            row.sort(key=head.__getitem__)
        self.adj = [tuple(row) for row in adj]
        self.head = np.asarray(head, dtype=np.int32)
        self.cap0 = np.asarray(cap0, dtype=np.int32)
        self.cap = self.cap0.copy()
        self.ptr = np.zeros(len(adj) + 1, dtype=np.int32)
        self.ptr[1:] = np.cumsum([len(row) for row in adj])
        self.arcs = np.fromiter((a for row in adj for a in row), dtype=np.int32, count=len(head))
        self.degrees = surviving_degrees(g, f)
        self._pair = None

    def _terminals(self, u: int, v: int) -> tuple[int, int]:
        if self.mode == VERTEX:
            return 2 * u + 1, 2 * v
        return u, v

    def _check_pair(self, u, v) -> tuple[int, int]:
        u, v = self.g.vertex(u), self.g.vertex(v)
        if u == v:
            raise AqError("endpoints must be distinct")
        if self.mode == VERTEX and not (self.alive[u] and self.alive[v]):
            raise AqError("an endpoint is in the vertex fault set")
        return u, v

    def max_flow(self, u: int, v: int, limit: int | None = None) -> int:
        """Value of a maximum u-v flow (stopping early once ``limit`` is reached)."""
        s, t = self._terminals(u, v)
        if limit is None:
            limit = int(self.ptr[s + 1] - self.ptr[s])
        np.copyto(self.cap, self.cap0)
        flow = _augment(self.head, self.ptr, self.arcs, self.cap, s, t, limit)
        self._pair = (u, v)
        return int(flow)

    def decompose(self) -> tuple[tuple[int, ...], ...]:
        """Split the current flow into u-v paths (lowest neighbor id first)."""
        u, v = self._pair
        s, t = self._terminals(u, v)
        head = self.head.tolist()
        rem = np.maximum(self.cap0 - self.cap, 0).tolist()
        paths = []
        while True:
            start = next((a for a in self.adj[s] if rem[a]), None)
            if start is None:
                break
            walk = [s]
            arcs: list[int] = []
            pos = {s: 0}
            x = s
            while x != t:
                a = next(a for a in self.adj[x] if rem[a])
                rem[a] -= 1
                y = head[a]
                if y in pos:
                    # drop the cycle; its arcs are already consumed
                    cut = pos[y]
                    for z in walk[cut + 1 :]:
                        del pos[z]
                    del walk[cut + 1 :]
                    del arcs[cut:]
                else:
                    pos[y] = len(walk)
                    walk.append(y)
                    arcs.append(a)
                x = y
            if self.mode == VERTEX:
                verts = [walk[0] // 2]
                for node in walk[1:]:
                    if node // 2 != verts[-1]:
                        verts.append(node // 2)
                paths.append(tuple(verts))
            else:
                paths.append(tuple(walk))
        return tuple(paths)

    def source_side(self) -> set[int]:
        """Residual-reachable nodes from the source after :meth:`max_flow`."""
        s, _ = self._terminals(*self._pair)
        head, cap = self.head.tolist(), self.cap.tolist()
        seen = {s}
        queue = [s]
        for x in queue:
            for a in self.adj[x]:
                if cap[a] and head[a] not in seen:
                    seen.add(head[a])
                    queue.append(head[a])
        return seen


def verify_bundle(g, f: FaultSet | None, bundle: PathBundle) -> None:
    """Raise AqError unless every path is valid in G - f and the family is disjoint."""
    f = _check_mode(f, bundle.mode)
    dead_v = f.members if f.is_vertex else frozenset()
    dead_e = f.members if not f.is_vertex else frozenset()
    used_vertices: set[int] = set()
    used_edges: set[int] = set()
    for p in bundle.paths:
        if p[0] != bundle.source or p[-1] != bundle.target:
            raise AqError(f"path {p} has wrong endpoints")
        if len(set(p)) != len(p):
            raise AqError(f"path {p} revisits a vertex")
        if dead_v.intersection(p):
            raise AqError(f"path {p} uses a faulty vertex")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise AqError(f"path {p} steps along a non-edge ({a}, {b})")
            e = g.edge_id(a, b)
            if e in dead_e:
                raise AqError(f"path {p} uses faulty edge {e}")
            if bundle.mode == EDGE:
                if e in used_edges:
                    raise AqError(f"edge {e} shared between paths")
                used_edges.add(e)
        if bundle.mode == VERTEX:
            inner = set(p[1:-1])
            if inner & used_vertices:
                raise AqError(f"path {p} shares an internal vertex")
            used_vertices |= inner
    if bundle.mode == VERTEX and sum(1 for p in bundle.paths if len(p) == 2) > 1:
        raise AqError("the direct edge is used twice")


def _disjoint_paths(g, f, u, v, mode):
    net = FlowNetwork(g, f, mode)
    u, v = net._check_pair(u, v)
    count = net.max_flow(u, v)
    bundle = PathBundle(u, v, net.decompose(), mode)
    verify_bundle(g, net.f, bundle)
    if bundle.count != count:
        raise AqError(f"decomposition produced {bundle.count} paths for flow {count}")
    return count, bundle


def max_vertex_disjoint_paths(g, f: FaultSet | None, u, v) -> tuple[int, PathBundle]:
    """Maximum number of internally vertex-disjoint u-v paths in G - f, with the paths."""
    return _disjoint_paths(g, f, u, v, VERTEX)


def max_edge_disjoint_paths(g, f: FaultSet | None, u, v) -> tuple[int, PathBundle]:
    """Maximum number of edge-disjoint u-v paths in G - f, with the paths."""
    return _disjoint_paths(g, f, u, v, EDGE)


def local_connectivity(g, f: FaultSet | None, u, v, mode: str = VERTEX) -> int:
    net = FlowNetwork(g, f, mode)
    return net.max_flow(*net._check_pair(u, v))


def min_cut(g, f: FaultSet | None, u, v, mode: str | None = None) -> frozenset[int]:
    """Minimum u-v cut in G - f: vertex ids (vertex mode) or edge ids (edge mode).

    Vertex mode requires u and v non-adjacent in G - f.
    """
    mode = mode or (f.kind if f is not None else VERTEX)
    net = FlowNetwork(g, f, mode, edge_cap=g.order)
    u, v = net._check_pair(u, v)
    if mode == VERTEX and g.has_edge(u, v):
        raise AqError("vertex cuts need non-adjacent endpoints")
    count = net.max_flow(u, v)
    side = net.source_side()
    if mode == VERTEX:
        cut = frozenset(x for x in range(g.order) if 2 * x in side and 2 * x + 1 not in side)
    else:
        cut = frozenset(
            e
            for e, (a, b, _) in enumerate(g.edges)
            if e not in net.f.members and ((a in side) != (b in side))
        )
    if len(cut) != count:
        raise AqError(f"cut of size {len(cut)} does not match flow {count}")
    return cut


def is_strongly_menger(g, f: FaultSet | None = None, mode: str | None = None) -> MengerVerdict:
    """Does G - f join every surviving pair by min(deg u, deg v) disjoint paths?

    Pairs are scanned in canonical order, so the witness on failure is the
    lexicographically first failing pair.
    """
    mode = mode or (f.kind if f is not None else VERTEX)
    if g.n < 2:
        raise AqError("strong Menger checks need n >= 2")
    net = FlowNetwork(g, f, mode)
    deg = net.degrees
    alive = [x for x in range(g.order) if deg[x] >= 0]
    checked = 0
    for i, u in enumerate(alive):
        du = deg[u]
        for v in alive[i + 1 :]:
            need = min(du, deg[v])
            checked += 1
            if need == 0:
                continue
            got = net.max_flow(u, v, limit=need)
            if got < need:
                return MengerVerdict(False, mode, (u, v, got, need), checked)
    return MengerVerdict(True, mode, None, checked)
