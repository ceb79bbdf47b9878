"""Component structure of AQ_{n,k} after deletions, and the large-component lemmas."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import bounds
from .errors import AqError, HypothesisUnmet
from .faultset import EDGE, VERTEX, FaultSet
from .topology import EdgeKind, neighbor_by_kind, open_neighborhood, subcube_vertices


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def surviving_masks(g, f: FaultSet | None) -> tuple[list[int], int]:
    """Neighbor bitmasks of G - f and the bitmask of surviving vertices."""
    full = (1 << g.order) - 1
    if f is None or not f.members:
        return list(g.nbr_masks), full
    if f.is_vertex:
        alive = full
        for x in f.members:
            alive &= ~(1 << x)
        return [m & alive for m in g.nbr_masks], alive
    masks = list(g.nbr_masks)
    for e in f.members:
        a, b, _ = g.edges[e]
        masks[a] &= ~(1 << b)
        masks[b] &= ~(1 << a)
    return masks, full


def component_masks(masks: list[int], alive: int) -> list[int]:
    """Connected components as vertex bitmasks, by frontier flooding."""
    comps = []
    rest = alive
    while rest:
        seen = frontier = rest & -rest
        while frontier:
            grow = 0
            for x in _bits(frontier):
                grow |= masks[x]
            frontier = grow & rest & ~seen
            seen |= frontier
        comps.append(seen)
        rest &= ~seen
    return comps


def largest_component_size(masks: list[int], alive: int) -> int:
    return max((c.bit_count() for c in component_masks(masks, alive)), default=0)


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[tuple[int, ...], ...]
    kind: str
    budget: int
    provenance: str = ""

    @property
    def large(self) -> tuple[int, ...]:
        return self.components[0] if self.components else ()

    @property
    def small_union(self) -> frozenset[int]:
        return frozenset(x for c in self.components[1:] for x in c)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.components]

    @property
    def largest_ties(self) -> list[tuple[int, ...]]:
        return [c for c in self.components if len(c) == len(self.large)]

    @property
    def connected(self) -> bool:
        return len(self.components) <= 1

    def to_json(self) -> dict:
        return {
            "sizes": self.sizes,
            "smallest_members": [c[0] for c in self.components],
            "kind": self.kind,
            "budget": self.budget,
            "provenance": self.provenance,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def components_after_faults(g, f: FaultSet | None = None) -> ComponentReport:
    """Components of G - f, largest first, ties broken by smallest member."""
    if f is not None:
        f.validate(g)
    masks, alive = surviving_masks(g, f)
    comps = [tuple(_bits(c)) for c in component_masks(masks, alive)]
    comps.sort(key=lambda c: (-len(c), c[0]))
    kind = f.kind if f is not None else VERTEX
    return ComponentReport(
        tuple(comps), kind, len(f) if f is not None else 0, f.provenance if f is not None else ""
    )


def _require(f: FaultSet, kind: str) -> None:
    if f.kind != kind:
        raise AqError(f"expected {kind} faults, got {f.kind}")


def check_large_component_vertex(g, f: FaultSet) -> bool:
    """Is there a component of G - F with at least |V| - |F| - 1 vertices?"""
    _require(f, VERTEX)
    budget = bounds.large_component_vertex_budget(g.n, g.k)
    if len(f) > budget:
        raise HypothesisUnmet(f"|F| = {len(f)} exceeds {budget} for AQ_{{{g.n},{g.k}}}")
    masks, alive = surviving_masks(g, f)
    return largest_component_size(masks, alive) >= g.order - len(f) - 1


@dataclass(frozen=True)
class ShapeVerdict:
    ok: bool
    component_count: int
    smaller: tuple[int, ...]
    singleton: bool
    triangle: bool
    triangle_matches: bool


def _is_formula_triangle(g, comp) -> bool:
    if len(comp) != 3:
        return False
    members = set(comp)
    for x in comp:
        if {x, neighbor_by_kind(g, x, EdgeKind(True, 2, -1)), neighbor_by_kind(g, x, EdgeKind(True, 2, 1))} == members:
            return True
    return False


def check_wz18_shape(g, f: FaultSet) -> ShapeVerdict:
    """Shape of a disconnected AQ_{n,3} - F with |F| <= 8n-12.

    Expected: exactly two components, the smaller a singleton, or (n = 3 only)
    a triangle {x, x_(<=2,-1), x_(<=2,+1)}.
    """
    _require(f, VERTEX)
    budget = bounds.two_component_budget(g.n, g.k)
    if len(f) > budget:
        raise HypothesisUnmet(f"|F| = {len(f)} exceeds {budget}")
    rep = components_after_faults(g, f)
    if rep.connected:
        raise HypothesisUnmet("the shape statement concerns disconnected G - F")
    smaller = rep.components[-1]
    singleton = len(smaller) == 1
    triangle = len(smaller) == 3 and all(
        g.has_edge(a, b) for a, b in combinations(smaller, 2)
    )
    matches = triangle and _is_formula_triangle(g, smaller)
    two = len(rep.components) == 2
    ok = two and (singleton or (g.n == 3 and matches))
    return ShapeVerdict(ok, len(rep.components), smaller, singleton, triangle, matches)


def check_large_component_edge(g, s: FaultSet, tier: int | str = 1) -> bool:
    """Does G - S keep a component of at least |V| - tier vertices?"""
    _require(s, EDGE)
    tier = {"one": 1, "two": 2}.get(tier, tier)
    budget = bounds.large_component_edge_budget(g.n, tier)
    if len(s) > budget:
        raise HypothesisUnmet(f"|S| = {len(s)} exceeds the tier-{tier} budget {budget}")
    masks, alive = surviving_masks(g, s)
    return largest_component_size(masks, alive) >= g.order - tier


@dataclass
class PremiseReport:
    budget: int
    max_faults: int
    trials: int
    passed: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)


def check_component_premise(g, budget: int, trials: int, seed=0, sizes: str = "max") -> PremiseReport:
    """Sample vertex sets V_f, |V_f| <= budget + r - 1, and test for a component
    of size >= |V| - |V_f| - 1 (r is the regular degree).

    ``sizes="max"`` samples at the largest size; ``"uniform"`` draws the size
    uniformly from 0..max.
    """
    r = g.degree
    top = budget + r - 1
    if budget < 0 or top >= g.order:
        raise AqError(f"|V_f| up to {top} is degenerate for a graph with {g.order} vertices")
    report = PremiseReport(budget, top, trials)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        m = top if sizes == "max" else int(rng.integers(0, top + 1))
        members = frozenset(int(x) for x in rng.choice(g.order, size=m, replace=False))
        masks, alive = surviving_masks(g, FaultSet(VERTEX, members))
        if largest_component_size(masks, alive) >= g.order - m - 1:
            report.passed += 1
        else:
            report.failed += 1
            report.counterexamples.append(sorted(members))
    return report


def check_expansion(g, max_size: int = 3) -> list[tuple[int, tuple[int, ...], int]]:
    """Violations of |N_{G - subcube i}(U)| >= 2|U| over all U within one subcube, |U| <= max_size."""
    bad = []
    for i in range(g.k):
        cube = sorted(subcube_vertices(g, i))
        outside = set(range(g.order)) - set(cube)
        for size in range(1, max_size + 1):
            for U in combinations(cube, size):
                got = len(open_neighborhood(g, U, within=outside))
                if got < 2 * size:
                    bad.append((i, U, got))
    return bad


def check_neighborhood_bound(g, exhaustive_upto: int = 3, samples: int = 0, seed=0) -> dict:
    """|N(U)| >= 8n-10 for 2 <= |U| <= 8n-16: exhaustive for small U, sampled beyond."""
    top, need = bounds.neighborhood_bound(g.n, g.k)
    out = {"checked": 0, "violations": [], "min_seen": None}

    def visit(U):
        got = len(open_neighborhood(g, U))
        out["checked"] += 1
        if out["min_seen"] is None or got < out["min_seen"]:
            out["min_seen"] = got
        if got < need:
            out["violations"].append(tuple(U))

    for size in range(2, min(exhaustive_upto, top) + 1):
        for U in combinations(range(g.order), size):
            visit(U)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        size = int(rng.integers(2, top + 1))
        visit(sorted(int(x) for x in rng.choice(g.order, size=size, replace=False)))
    return out
