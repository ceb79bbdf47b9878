"""Fault-set generation: random, conditional, exhaustive, and optimality witnesses."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb

import numpy as np

from . import bounds
from .errors import AqError, HypothesisUnmet, InfeasibleRequest
from .faultset import EDGE, VERTEX, FaultSet, surviving_degrees
from .topology import EdgeKind, neighbor_by_kind

DEFAULT_CEILING = 10**7
CEILING_ENV = "AQMENGER_ENUM_CEILING"


def enumeration_ceiling(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    return int(os.environ.get(CEILING_ENV, DEFAULT_CEILING))


def _pool_size(g, kind: str) -> int:
    if kind == VERTEX:
        return g.order
    if kind == EDGE:
        return g.size
    raise AqError(f"fault kind must be 'vertex' or 'edge', got {kind!r}")


def random_fault_set(g, m: int, kind: str = VERTEX, seed=None) -> FaultSet:
    """Uniform m-subset of the vertices or edges, reproducible from ``seed``."""
    pool = _pool_size(g, kind)
    if not 0 <= m <= pool:
        raise AqError(f"cannot draw {m} {kind} faults from a pool of {pool}")
    rng = np.random.default_rng(seed)
    picked = rng.choice(pool, size=m, replace=False) if m else ()
    return FaultSet(kind, frozenset(int(x) for x in picked), f"random:seed={seed}")


def min_degree_after(g, edge_ids) -> int:
    deg = surviving_degrees(g, FaultSet(EDGE, frozenset(edge_ids)))
    return min(deg)


def conditional_edge_fault_set(g, m: int, seed=None, retries: int = 1000) -> FaultSet:
    """m faulty edges leaving every vertex with at least two live edges.

    Rejection sampling first (uniform over conditional sets); if ``retries``
    draws all fail, a greedy pass over a shuffled edge order that never
    drops a vertex below degree 2.
    """
    if m < 0:
        raise AqError("m must be non-negative")
    # delta >= 2 leaves at least |V| edges standing
    if m > g.size - g.order:
        raise AqError(f"no conditional edge set of size {m}: at most {g.size - g.order} edges may fail")
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        picked = rng.choice(g.size, size=m, replace=False) if m else np.empty(0, dtype=int)
        deg = [len(row) for row in g.nbrs]
        for e in picked:
            a, b, _ = g.edges[e]
            deg[a] -= 1
            deg[b] -= 1
        if min(deg) >= 2:
            return FaultSet(EDGE, frozenset(int(e) for e in picked), f"conditional:seed={seed}")
    deg = [len(row) for row in g.nbrs]
    chosen = []
    for e in rng.permutation(g.size):
        a, b, _ = g.edges[e]
        if deg[a] > 2 and deg[b] > 2:
            deg[a] -= 1
            deg[b] -= 1
            chosen.append(int(e))
            if len(chosen) == m:
                return FaultSet(EDGE, frozenset(chosen), f"conditional-greedy:seed={seed}")
    raise AqError(f"could not build a conditional edge set of size {m}")


def count_fault_sets(g, m: int, kind: str) -> int:
    return comb(_pool_size(g, kind), m)


def enumerate_fault_sets(
    g,
    m: int,
    kind: str = VERTEX,
    conditional: bool = False,
    ceiling: int | None = None,
    start: int = 0,
    stop: int | None = None,
):
    """All m-subsets in lexicographic order, as FaultSets tagged ``enum:<index>``.

    Indices count every subset, including ones dropped by the conditional
    filter, so shards ``[start, stop)`` partition the space.
    """
    pool = _pool_size(g, kind)
    total = comb(pool, m)
    limit = enumeration_ceiling(ceiling)
    if total > limit:
        raise InfeasibleRequest(
            f"C({pool},{m}) = {total} {kind} fault sets exceeds the ceiling {limit}; use sampling",
            count=total,
        )
    combos = islice(combinations(range(pool), m), start, stop)
    for idx, members in enumerate(combos, start):
        if conditional and min_degree_after(g, members) < 2:
            continue
        yield FaultSet(kind, frozenset(members), f"enum:{m}:{idx}")


@dataclass(frozen=True)
class WitnessCase:
    """A fault set and vertex pair that defeat strong Menger connectivity."""

    name: str
    n: int
    k: int
    fault: FaultSet
    u: int
    v: int
    mode: str
    required: int
    bound: int
    v_rule: str = "remark"
    extras: dict = field(default_factory=dict)

    def to_json(self, g=None) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "fault": self.fault.to_json(g),
            "pair": [self.u, self.v],
            "mode": self.mode,
            "required": self.required,
            "bound": self.bound,
            "v_rule": self.v_rule,
            "extras": self.extras,
        }

    @classmethod
    def from_json(cls, data: dict) -> "WitnessCase":
        u, v = data["pair"]
        return cls(
            name=data["name"],
            n=data["n"],
            k=data["k"],
            fault=FaultSet.from_json(data["fault"]),
            u=u,
            v=v,
            mode=data["mode"],
            required=data["required"],
            bound=data["bound"],
            v_rule=data.get("v_rule", "remark"),
            extras=data.get("extras", {}),
        )


def _closed(g, vertices) -> set[int]:
    out = set(vertices)
    for x in vertices:
        out.update(g.nbrs[x])
    return out


def _search_failing_v(g, fault: FaultSet, u: int, exclude, mode: str):
    """Smallest-id v of full surviving degree whose pair with u falls short."""
    from .menger import FlowNetwork

    net = FlowNetwork(g, fault, mode)
    full = bounds.degree(g.n)
    for v in range(g.order):
        if v == u or v in exclude or net.degrees[v] != full:
            continue
        if net.max_flow(u, v, limit=full) < full:
            return v
    return None


def remark2_fault_set(g, anchor=0, i: int = 2) -> tuple[int, int, FaultSet]:
    """(w, u, F) with w = anchor, u = w_(<=i,-1) and F = N(w) minus N[u]."""
    n = g.n
    if n < 3:
        raise HypothesisUnmet("the vertex witness needs n >= 3")
    if not 2 <= i <= n - 1:
        raise HypothesisUnmet(f"augmented index i must lie in [2, {n - 1}], got {i}")
    w = g.vertex(anchor)
    u = neighbor_by_kind(g, w, EdgeKind(True, i, -1))
    members = set(g.nbrs[w]) - _closed(g, [u])
    return w, u, FaultSet(VERTEX, frozenset(members), f"remark2:anchor={w}:i={i}")


def witness_remark2(g, anchor=0, i: int = 2, search: bool = True) -> WitnessCase:
    """Vertex witness: |F| = 4n-8 (k=3) or 4n-7 (k>=4) faults that break strong Menger.

    v is the smallest id outside N[N(w) | N(u)].  On graphs too small for such
    a v, ``search=True`` falls back to the smallest full-degree v whose pair
    with u verifiably falls short.
    """
    w, u, fault = remark2_fault_set(g, anchor, i)
    expected = bounds.witness_size("remark2", g.n, g.k)
    if len(fault) != expected:
        raise AqError(f"remark2 fault set has {len(fault)} vertices, expected {expected}")
    reach = _closed(g, set(g.nbrs[w]) | set(g.nbrs[u]))
    candidates = [x for x in range(g.order) if x not in reach and x not in (u, w)]
    rule = "remark"
    if candidates:
        v = candidates[0]
    elif search:
        v = _search_failing_v(g, fault, u, {w} | fault.members, VERTEX)
        rule = "search"
        if v is None:
            raise AqError("no vertex v completes the remark2 witness")
    else:
        raise AqError(f"AQ_{{{g.n},{g.k}}} has no vertex outside N[N(w) | N(u)]")
    full = bounds.degree(g.n)
    return WitnessCase("remark2", g.n, g.k, fault, u, v, VERTEX, full, full - 1, rule, {"w": w, "i": i})


def witness_remark3(g, anchor_edge=None) -> WitnessCase:
    """Edge witness: all 4n-3 edges at w except (u, w)."""
    if g.n < 2:
        raise HypothesisUnmet("the edge witness needs n >= 2")
    if anchor_edge is None:
        u = 0
        w = g.nbrs[0][0]
    else:
        u, w = (g.vertex(x) for x in anchor_edge)
    keep = g.edge_id(u, w)
    fault = FaultSet(
        EDGE,
        frozenset(e for e in g.incident[w] if e != keep),
        f"remark3:u={u}:w={w}",
    )
    outside = [x for x in range(g.order) if x not in _closed(g, [w])]
    if not outside:
        raise AqError("no vertex outside N[w]")
    full = bounds.degree(g.n)
    return WitnessCase("remark3", g.n, g.k, fault, u, outside[0], EDGE, full, full - 1, "remark", {"w": w})


def witness_remark4(g, anchor=0, search: bool = True) -> WitnessCase:
    """Conditional edge witness around the triangle u, u_(1,+1), u_(<=2,+1).

    F holds every edge at u1 and u2 except the triangle and (u1, u0):
    8n-9 edges, and every vertex keeps degree >= 2.  v is the smallest id
    outside N(u1) | N(u2); when no such vertex exists ``search=True`` takes
    the smallest full-degree v whose pair with u verifiably falls short.
    """
    if g.n < 2:
        raise HypothesisUnmet("the conditional witness needs n >= 2")
    u = g.vertex(anchor)
    u1 = neighbor_by_kind(g, u, EdgeKind(False, 1, 1))
    u2 = neighbor_by_kind(g, u, EdgeKind(True, 2, 1))
    if not g.has_edge(u1, u2):
        raise AqError("u, u_(1,+1), u_(<=2,+1) is not a triangle")
    u0 = min(set(g.nbrs[u1]) - {u, u2})
    keep = {g.edge_id(u, u1), g.edge_id(u, u2), g.edge_id(u1, u2), g.edge_id(u1, u0)}
    members = (set(g.incident[u1]) | set(g.incident[u2])) - keep
    fault = FaultSet(EDGE, frozenset(members), f"remark4:u={u}")
    if min_degree_after(g, members) < 2:
        raise AqError("remark4 fault set violates the minimum-degree condition")
    outside = [x for x in range(g.order) if x not in set(g.nbrs[u1]) | set(g.nbrs[u2])]
    rule = "remark"
    if outside:
        v = outside[0]
    elif search:
        v = _search_failing_v(g, fault, u, {u1, u2}, EDGE)
        rule = "search"
        if v is None:
            raise AqError("no vertex v completes the remark4 witness")
    else:
        raise AqError(f"AQ_{{{g.n},{g.k}}} has no vertex outside N(u1) | N(u2)")
    full = bounds.degree(g.n)
    return WitnessCase(
        "remark4", g.n, g.k, fault, u, v, EDGE, full, full - 1, rule, {"u0": u0, "u1": u1, "u2": u2}
    )


def build_witness(g, name: str, **kwargs) -> WitnessCase:
    builders = {"remark2": witness_remark2, "remark3": witness_remark3, "remark4": witness_remark4}
    if name not in builders:
        raise AqError(f"unknown witness {name!r}")
    return builders[name](g, **kwargs)


def shrink_probe(g, case: WitnessCase) -> list[dict]:
    """Re-test the witness with each single fault removed.

    Returns one record per removed element with the strong Menger verdict
    of the smaller set; these document how sharp the construction is.
    """
    from .menger import is_strongly_menger

    out = []
    for x in sorted(case.fault.members):
        verdict = is_strongly_menger(g, case.fault.without(x), case.mode)
        out.append({"removed": x, "holds": verdict.holds, "first_failing_pair": verdict.to_json().get("witness")})
    return out
