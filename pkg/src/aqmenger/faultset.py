from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import AqError

VERTEX = "vertex"
EDGE = "edge"


@dataclass(frozen=True)
class FaultSet:
    """A set of faulty vertices (ids) or faulty edges (edge ids) of one graph."""

    kind: str
    members: frozenset = frozenset()
    provenance: str = ""

    def __post_init__(self):
        if self.kind not in (VERTEX, EDGE):
            raise AqError(f"fault kind must be 'vertex' or 'edge', got {self.kind!r}")
        object.__setattr__(self, "members", frozenset(int(x) for x in self.members))

    @classmethod
    def vertices(cls, g, items: Iterable = (), provenance: str = "") -> "FaultSet":
        fs = cls(VERTEX, frozenset(g.vertex(x) for x in items), provenance)
        return fs

    @classmethod
    def edges(cls, g, items: Iterable = (), provenance: str = "") -> "FaultSet":
        """Edge faults from edge ids or ``(u, v)`` pairs."""
        ids = set()
        for e in items:
            if isinstance(e, (tuple, list)):
                ids.add(g.edge_id(*e))
            else:
                e = int(e)
                if not 0 <= e < g.size:
                    raise AqError(f"edge id {e} outside [0, {g.size})")
                ids.add(e)
        return cls(EDGE, frozenset(ids), provenance)

    @property
    def is_vertex(self) -> bool:
        return self.kind == VERTEX

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, x) -> bool:
        return x in self.members

    def validate(self, g) -> "FaultSet":
        bound = g.order if self.is_vertex else g.size
        bad = [x for x in self.members if not 0 <= x < bound]
        if bad:
            raise AqError(f"{self.kind} faults {sorted(bad)[:5]} not in graph")
        return self

    def with_provenance(self, provenance: str) -> "FaultSet":
        return FaultSet(self.kind, self.members, provenance)

    def union(self, other: Iterable) -> "FaultSet":
        return FaultSet(self.kind, self.members | frozenset(other), self.provenance)

    def without(self, x) -> "FaultSet":
        return FaultSet(self.kind, self.members - {x}, self.provenance)

    def to_json(self, g=None) -> dict:
        out = {"kind": self.kind, "members": sorted(self.members), "provenance": self.provenance}
        if g is not None and not self.is_vertex:
            out["pairs"] = [list(g.edges[e][:2]) for e in sorted(self.members)]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FaultSet":
        return cls(data["kind"], frozenset(data["members"]), data.get("provenance", ""))


def surviving_degrees(g, f: FaultSet | None) -> list[int]:
    """Degree of every vertex in G - f; deleted vertices get degree -1."""
    if f is None or not f.members:
        return [len(row) for row in g.nbrs]
    if f.is_vertex:
        dead = f.members
        return [
            -1 if u in dead else sum(1 for v in row if v not in dead)
            for u, row in enumerate(g.nbrs)
        ]
    deg = [len(row) for row in g.nbrs]
    for e in f.members:
        u, v, _ = g.edges[e]
        deg[u] -= 1
        deg[v] -= 1
    return deg
