"""Construction of the augmented k-ary n-cube AQ_{n,k}.

Vertices are n-digit base-k strings ``a_n ... a_1``.  Internally every vertex
is its canonical integer id ``sum(a_i * k**(i-1))``, so digit ``a_1`` is the
least significant.  Two kinds of edges exist:

* traditional ``(i, s)``: digit ``a_i`` moves by ``s`` (mod k), ``1 <= i <= n``;
* augmented ``(<=i, s)``: digits ``a_1 .. a_i`` all move by ``s``, ``2 <= i <= n``.

Every vertex of AQ_{n,k} with n >= 2 has degree 4n - 2; AQ_{1,k} is a k-cycle.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import AqError

__all__ = [
    "AqParams",
    "EdgeKind",
    "AqGraph",
    "make_graph",
    "encode",
    "decode",
    "neighbor_by_kind",
    "subcube_vertices",
    "extra_neighbors",
    "common_neighbors",
    "cross_common_neighbors",
    "edge_kinds",
    "cross_edges",
    "open_neighborhood",
    "translate",
    "write_edgelist",
    "write_dot",
]


@dataclass(frozen=True)
class AqParams:
    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise AqError(f"n and k must be integers, got n={self.n!r}, k={self.k!r}")
        if self.n < 1:
            raise AqError(f"AQ_{{n,k}} needs n >= 1, got n={self.n}")
        if self.k < 3:
            raise AqError(f"AQ_{{n,k}} needs k >= 3, got k={self.k}")

    @property
    def order(self) -> int:
        return self.k**self.n

    @property
    def degree(self) -> int:
        return 2 if self.n == 1 else 4 * self.n - 2


class EdgeKind(NamedTuple):
    """Edge label.  Tuple order gives the canonical neighbor order:
    traditional before augmented, ascending ``i``, ``-1`` before ``+1``."""

    augmented: bool
    i: int
    sign: int

    @classmethod
    def traditional(cls, i: int, sign: int) -> "EdgeKind":
        return cls(False, i, sign)

    @classmethod
    def aug(cls, i: int, sign: int) -> "EdgeKind":
        return cls(True, i, sign)

    @classmethod
    def parse(cls, text: str) -> "EdgeKind":
        tag, i, s = text.split(",")
        if tag not in ("T", "A"):
            raise AqError(f"bad edge kind {text!r}")
        return cls(tag == "A", int(i), int(s))

    def reverse(self) -> "EdgeKind":
        return EdgeKind(self.augmented, self.i, -self.sign)

    def __str__(self) -> str:
        return f"{'A' if self.augmented else 'T'},{self.i},{self.sign:+d}"


def edge_kinds(n: int) -> list[EdgeKind]:
    """All edge kinds valid in dimension n, in canonical order."""
    kinds = [EdgeKind(False, i, s) for i in range(1, n + 1) for s in (-1, 1)]
    kinds += [EdgeKind(True, i, s) for i in range(2, n + 1) for s in (-1, 1)]
    return kinds


def encode(digits: Sequence[int], k: int) -> int:
    """Canonical id of a vertex given as ``(a_n, ..., a_1)``."""
    vid = 0
    for d in digits:
        if not 0 <= d < k:
            raise AqError(f"digit {d} outside [0, {k})")
        vid = vid * k + d
    return vid


def decode(vid: int, n: int, k: int) -> tuple[int, ...]:
    """Digits ``(a_n, ..., a_1)`` of canonical id ``vid``."""
    if not 0 <= vid < k**n:
        raise AqError(f"vertex id {vid} outside [0, {k**n})")
    out = []
    for _ in range(n):
        vid, d = divmod(vid, k)
        out.append(d)
    return tuple(reversed(out))


def _step(vid: int, kind: EdgeKind, n: int, k: int) -> int:
    digits = list(decode(vid, n, k))  # digits[n - i] is a_i
    lo = 1 if kind.augmented else kind.i
    for i in range(lo, kind.i + 1):
        digits[n - i] = (digits[n - i] + kind.sign) % k
    return encode(digits, k)


def _check_kind(kind: EdgeKind, n: int) -> None:
    if kind.sign not in (-1, 1):
        raise AqError(f"edge sign must be -1 or +1, got {kind.sign}")
    lo = 2 if kind.augmented else 1
    if not lo <= kind.i <= n:
        raise AqError(f"edge kind {kind} invalid for n={n}")


@dataclass(frozen=True, eq=False)
class AqGraph:
    """Immutable adjacency structure of AQ_{n,k}.

    ``adjacency[u]`` is the canonically ordered tuple of ``(neighbor, kind)``
    pairs; ``nbrs[u]`` and ``incident[u]`` are the matching neighbor ids and
    edge ids.  ``edges[e] = (u, v, kind)`` with ``u < v`` and ``kind`` read
    from ``u``.
    """

    params: AqParams
    adjacency: tuple[tuple[tuple[int, EdgeKind], ...], ...]
    edges: tuple[tuple[int, int, EdgeKind], ...]
    nbrs: tuple[tuple[int, ...], ...] = field(repr=False)
    incident: tuple[tuple[int, ...], ...] = field(repr=False)
    nbr_masks: tuple[int, ...] = field(repr=False)
    edge_index: dict = field(repr=False)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def order(self) -> int:
        return len(self.adjacency)

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def degree(self) -> int:
        return self.params.degree

    def __repr__(self) -> str:
        return f"AqGraph(n={self.n}, k={self.k})"

    def vertex(self, v) -> int:
        """Normalize a vertex given as id, digit label (``"120"``) or digit tuple."""
        if isinstance(v, str):
            if len(v) != self.n or not v.isdigit():
                raise AqError(f"label {v!r} is not an {self.n}-digit string")
            return encode([int(c) for c in v], self.k)
        if isinstance(v, (tuple, list)):
            if len(v) != self.n:
                raise AqError(f"expected {self.n} digits, got {len(v)}")
            return encode(v, self.k)
        v = int(v)
        if not 0 <= v < self.order:
            raise AqError(f"vertex id {v} outside [0, {self.order})")
        return v

    def label(self, v: int) -> str:
        """Digit string ``a_n ... a_1``; digits above 9 would be ambiguous."""
        digits = decode(v, self.n, self.k)
        if self.k > 10:
            return ".".join(map(str, digits))
        return "".join(map(str, digits))

    def digits(self, v: int) -> tuple[int, ...]:
        return decode(v, self.n, self.k)

    def neighbors(self, v) -> tuple[int, ...]:
        return self.nbrs[self.vertex(v)]

    def has_edge(self, u, v) -> bool:
        u, v = self.vertex(u), self.vertex(v)
        return (min(u, v), max(u, v)) in self.edge_index

    def edge_id(self, u, v) -> int:
        u, v = self.vertex(u), self.vertex(v)
        try:
            return self.edge_index[(min(u, v), max(u, v))]
        except KeyError:
            raise AqError(f"({self.label(u)}, {self.label(v)}) is not an edge") from None

    def kind_of(self, u, v) -> EdgeKind:
        """Kind of edge (u, v) as seen from u."""
        u, v = self.vertex(u), self.vertex(v)
        for w, kind in self.adjacency[u]:
            if w == v:
                return kind
        raise AqError(f"({self.label(u)}, {self.label(v)}) is not an edge")

    def to_networkx(self):
        import networkx as nx

        G = nx.Graph()
        G.add_nodes_from(range(self.order))
        for e, (u, v, kind) in enumerate(self.edges):
            G.add_edge(u, v, id=e, kind=str(kind))
        return G


def make_graph(n: int | AqParams, k: int | None = None) -> AqGraph:
    """Build AQ_{n,k}.  Accepts ``make_graph(n, k)`` or ``make_graph(AqParams(n, k))``."""
    params = n if isinstance(n, AqParams) else AqParams(n, k)
    n, k = params.n, params.k
    kinds = edge_kinds(n)
    adjacency = []
    for u in range(params.order):
        row = tuple((_step(u, kind, n, k), kind) for kind in kinds)
        targets = {v for v, _ in row}
        if u in targets or len(targets) != len(row):
            raise AqError(f"construction error at vertex {u}: neighbors collide")
        adjacency.append(row)
    if any(len(row) != params.degree for row in adjacency):
        raise AqError("construction error: graph is not regular")

    edges = []
    edge_index = {}
    for u, row in enumerate(adjacency):
        for v, kind in row:
            if u < v:
                edge_index[(u, v)] = len(edges)
                edges.append((u, v, kind))
    nbrs = tuple(tuple(v for v, _ in row) for row in adjacency)
    incident = tuple(
        tuple(edge_index[(min(u, v), max(u, v))] for v in row) for u, row in enumerate(nbrs)
    )
    masks = tuple(sum(1 << v for v in row) for row in nbrs)
    return AqGraph(
        params=params,
        adjacency=tuple(adjacency),
        edges=tuple(edges),
        nbrs=nbrs,
        incident=incident,
        nbr_masks=masks,
        edge_index=edge_index,
    )


def neighbor_by_kind(g: AqGraph, u, kind: EdgeKind | str) -> int:
    """The neighbor of ``u`` reached along an edge of the given kind."""
    if isinstance(kind, str):
        kind = EdgeKind.parse(kind)
    _check_kind(kind, g.n)
    return _step(g.vertex(u), kind, g.n, g.k)


def subcube_vertices(g: AqGraph, i: int) -> frozenset[int]:
    """Vertices whose leading digit ``a_n`` equals ``i``; they induce a copy of AQ_{n-1,k}."""
    if g.n < 2:
        raise AqError("subcubes need n >= 2")
    if not 0 <= i < g.k:
        raise AqError(f"subcube index {i} outside [0, {g.k})")
    block = g.k ** (g.n - 1)
    return frozenset(range(i * block, (i + 1) * block))


def extra_neighbors(g: AqGraph, u) -> list[tuple[int, EdgeKind]]:
    """The four neighbors of ``u`` outside its own subcube."""
    if g.n < 2:
        raise AqError("extra neighbors need n >= 2")
    u = g.vertex(u)
    return [(v, kind) for v, kind in g.adjacency[u] if kind.i == g.n]


def common_neighbors(g: AqGraph, u, v) -> frozenset[int]:
    u, v = g.vertex(u), g.vertex(v)
    if u == v:
        raise AqError("common neighbors need two distinct vertices")
    return frozenset(g.nbrs[u]).intersection(g.nbrs[v])


def cross_common_neighbors(g: AqGraph, u, v) -> frozenset[int]:
    """Common neighbors of u and v lying outside u's subcube (its extra neighbors)."""
    u = g.vertex(u)
    return frozenset(x for x, _ in extra_neighbors(g, u)) & common_neighbors(g, u, v)


def open_neighborhood(g: AqGraph, U: Iterable[int], within: Iterable[int] | None = None) -> set[int]:
    """N(U) = union of N(x) for x in U, minus U; optionally restricted to ``within``."""
    U = {g.vertex(x) for x in U}
    out = set()
    for x in U:
        out.update(g.nbrs[x])
    out -= U
    if within is not None:
        out &= set(within)
    return out


def cross_edges(g: AqGraph, i: int, j: int) -> list[int]:
    """Ids of edges with one end in subcube i and the other in subcube j."""
    block = g.k ** (g.n - 1)
    out = []
    for e, (u, v, _) in enumerate(g.edges):
        a, b = u // block, v // block
        if {a, b} == {i % g.k, j % g.k} and a != b:
            out.append(e)
    return out


def translate(g: AqGraph, x: int, shift: int) -> int:
    """Digit-wise translation ``x + shift`` (mod k); an automorphism of AQ_{n,k}."""
    a, b = g.digits(x), g.digits(shift)
    return encode([(p + q) % g.k for p, q in zip(a, b)], g.k)


def write_edgelist(g: AqGraph, fh=None) -> str:
    """One ``<id_u> <id_v> <kind>`` line per edge, in edge-id order."""
    buf = io.StringIO()
    for u, v, kind in g.edges:
        buf.write(f"{u} {v} {kind}\n")
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def write_dot(g: AqGraph, fh=None) -> str:
    buf = io.StringIO()
    buf.write(f"graph AQ_{g.n}_{g.k} {{\n")
    for v in range(g.order):
        buf.write(f'  {v} [label="{g.label(v)}"];\n')
    for u, v, kind in g.edges:
        buf.write(f'  {u} -- {v} [kind="{kind}"];\n')
    buf.write("}\n")
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text
