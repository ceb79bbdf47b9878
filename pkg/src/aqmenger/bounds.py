"""Closed-form values and fault budgets for AQ_{n,k}.

Each budget function raises :class:`HypothesisUnmet` when (n, k) lies outside
the range in which the corresponding statement is claimed.
"""

from __future__ import annotations

from .errors import HypothesisUnmet
from .topology import EdgeKind


def degree(n: int) -> int:
    return 2 if n == 1 else 4 * n - 2


def connectivity(n: int) -> int:
    """Vertex connectivity, equal to the edge connectivity, for n >= 2."""
    return 4 * n - 2


def cross_edge_count(n: int, k: int) -> int:
    """Edges between two consecutive subcubes."""
    return 2 * k ** (n - 1)


def adjacent_cn(n: int, k: int, kind: EdgeKind) -> int:
    """Common neighbors of the endpoints of an edge of the given kind."""
    if n < 2:
        raise HypothesisUnmet("common-neighbor counts are stated for n >= 2")
    if n == 2:
        return 3 if k == 3 else 2
    inner_augmented = kind.augmented and 2 <= kind.i <= n - 1
    if k == 3:
        return 5 if inner_augmented else 3
    return 4 if inner_augmented else 2


def cn_upper_bound(n: int, k: int) -> int:
    """Largest possible number of common neighbors of two distinct vertices."""
    if n < 2:
        raise HypothesisUnmet("common-neighbor bounds are stated for n >= 2")
    if k == 3:
        return 6
    return 2 if n == 2 else 4


def vertex_menger_budget(n: int, k: int) -> int:
    """Largest vertex-fault count under which strong Menger connectivity is guaranteed."""
    if k == 3:
        if n < 4:
            raise HypothesisUnmet(f"vertex result for k=3 needs n >= 4 (got n={n})")
        return 4 * n - 9
    if n < 2:
        raise HypothesisUnmet("vertex result needs n >= 2")
    return 4 * n - 8


def edge_menger_budget(n: int, k: int) -> int:
    if n < 2:
        raise HypothesisUnmet("edge result needs n >= 2")
    return 4 * n - 4


def conditional_edge_budget(n: int, k: int) -> int:
    if n < 2:
        raise HypothesisUnmet("conditional edge result needs n >= 2")
    return 8 * n - 10


def large_component_vertex_budget(n: int, k: int) -> int:
    """Vertex faults under which G - F keeps a component of size >= |V| - |F| - 1."""
    if k == 3:
        if n < 4:
            raise HypothesisUnmet(f"large-component vertex bound for k=3 needs n >= 4 (got n={n})")
        return 8 * n - 12
    if n < 2:
        raise HypothesisUnmet("large-component vertex bound needs n >= 2")
    return 8 * n - 11


def large_component_edge_budget(n: int, tier: int) -> int:
    """Edge faults under which a component of size >= |V| - tier survives (tier 1 or 2)."""
    if n < 2:
        raise HypothesisUnmet("large-component edge bounds need n >= 2")
    if tier == 1:
        return 8 * n - 7
    if tier == 2:
        return 12 * n - 13
    raise ValueError(f"tier must be 1 or 2, got {tier}")


def two_component_budget(n: int, k: int) -> int:
    """Vertex faults under which a disconnected AQ_{n,3} - F has the two-component shape."""
    if k != 3 or n < 3:
        raise HypothesisUnmet("two-component shape is stated for k=3, n>=3")
    return 8 * n - 12


def neighborhood_bound(n: int, k: int) -> tuple[int, int]:
    """(max |U|, min |N(U)|) for sets with 2 <= |U| <= 8n-16 when n >= 3, k >= 4."""
    if n < 3 or k < 4:
        raise HypothesisUnmet("the set-neighborhood bound needs n >= 3 and k >= 4")
    return 8 * n - 16, 8 * n - 10


def witness_size(name: str, n: int, k: int) -> int:
    if name == "remark2":
        return 4 * n - 8 if k == 3 else 4 * n - 7
    if name == "remark3":
        return 4 * n - 3
    if name == "remark4":
        return 8 * n - 9
    raise ValueError(f"unknown witness {name!r}")
