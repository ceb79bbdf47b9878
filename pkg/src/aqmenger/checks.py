"""Exhaustive structural scans of AQ_{n,k}: regularity, edge kinds, subcubes, common neighbors."""

from __future__ import annotations

from collections import Counter

import numpy as np

from . import bounds
from .topology import AqGraph, make_graph, subcube_vertices, translate


def structure_violations(g: AqGraph, shifts: int = 64, seed=0) -> list[str]:
    """Empty list iff every structural property holds; otherwise one message per failure."""
    n, k = g.n, g.k
    out = []
    if g.order != k**n:
        out.append(f"|V| = {g.order}, expected {k**n}")
    want = bounds.degree(n)
    bad_deg = [u for u in range(g.order) if len(g.nbrs[u]) != want]
    if bad_deg:
        out.append(f"{len(bad_deg)} vertices without degree {want}")
    for u, row in enumerate(g.adjacency):
        if u in {v for v, _ in row} or len({v for v, _ in row}) != len(row):
            out.append(f"vertex {u}: loop or repeated neighbor")
        for v, kind in row:
            if (u, kind.reverse()) not in g.adjacency[v]:
                out.append(f"edge ({u}, {v}) of kind {kind} has no reverse")
        if n >= 2:
            kinds = Counter(kind.augmented for _, kind in row)
            if kinds[False] != 2 * n or kinds[True] != 2 * (n - 1):
                out.append(f"vertex {u}: {kinds[False]} traditional, {kinds[True]} augmented edges")
    if g.size * 2 != sum(len(r) for r in g.nbrs):
        out.append("edge list does not match adjacency")
    if n >= 2:
        block = k ** (n - 1)
        want_cross = bounds.cross_edge_count(n, k)
        counts = Counter()
        for u, v, _ in g.edges:
            a, b = u // block, v // block
            if a != b:
                counts[frozenset((a, b))] += 1
        for i in range(k):
            got = counts[frozenset((i, (i + 1) % k))]
            if got != want_cross:
                out.append(f"subcubes {i},{(i + 1) % k}: {got} cross edges, expected {want_cross}")
        if sum(counts.values()) != k * want_cross:
            out.append("cross edges join non-consecutive subcubes")
        small = make_graph(n - 1, k)
        small_edges = {(a, b, kind) for a, b, kind in small.edges}
        for i in range(k):
            cube = subcube_vertices(g, i)
            induced = {
                (u % block, v % block, kind)
                for u, v, kind in g.edges
                if u in cube and v in cube
            }
            if induced != small_edges:
                out.append(f"subcube {i} is not a copy of AQ_{{{n - 1},{k}}}")
    rng = np.random.default_rng(seed)
    picks = range(g.order) if g.order <= shifts else rng.choice(g.order, size=shifts, replace=False)
    edge_set = {(u, v, kind) for u, v, kind in g.edges}
    for s in picks:
        s = int(s)
        for u, v, kind in g.edges:
            a, b = translate(g, u, s), translate(g, v, s)
            image = (a, b, kind) if a < b else (b, a, kind.reverse())
            if image not in edge_set:
                out.append(f"translation by {g.label(s)} does not preserve edge ({u}, {v})")
                break
    return out


def cn_census(g: AqGraph) -> dict:
    """Common-neighbor counts of every pair, checked against the closed forms.

    Returns the adjacent-pair values grouped by edge kind, the overall
    maximum, and lists of violations (empty when everything matches).
    """
    masks = g.nbr_masks
    by_kind: dict[str, Counter] = {}
    adjacent_bad = []
    bound = bounds.cn_upper_bound(g.n, g.k)
    pair_max = 0
    bound_bad = []
    for u in range(g.order):
        mu = masks[u]
        for v in range(u + 1, g.order):
            cn = (mu & masks[v]).bit_count()
            pair_max = max(pair_max, cn)
            if cn > bound:
                bound_bad.append((u, v, cn))
        for v, kind in g.adjacency[u]:
            cn = (mu & masks[v]).bit_count()
            by_kind.setdefault(str(kind), Counter())[cn] += 1
            if cn != bounds.adjacent_cn(g.n, g.k, kind):
                adjacent_bad.append((u, v, str(kind), cn))
    return {
        "adjacent_by_kind": {kind: dict(c) for kind, c in sorted(by_kind.items())},
        "adjacent_violations": adjacent_bad,
        "max_cn": pair_max,
        "bound": bound,
        "bound_violations": bound_bad,
    }
