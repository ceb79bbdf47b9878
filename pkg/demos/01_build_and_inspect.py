"""Build a few augmented cubes and look at their basic shape.

Run with ``python demos/01_build_and_inspect.py``.
"""

from aqmenger import EdgeKind, make_graph, neighbor_by_kind
from aqmenger.checks import cn_census
from aqmenger.topology import cross_common_neighbors, extra_neighbors, subcube_vertices

g = make_graph(3, 3)
print(f"{g}: {g.order} vertices, {g.size} edges, every vertex has degree {g.degree}")

# Vertices are digit strings a_n ... a_1; the rightmost digit is the least significant.
u = g.vertex("120")
for kind in [EdgeKind.traditional(3, -1), EdgeKind.aug(2, -1), EdgeKind.aug(3, 1)]:
    print(f"  neighbor of 120 along {kind}: {g.label(neighbor_by_kind(g, u, kind))}")

# Each vertex has four neighbors outside its own subcube (two per adjacent subcube).
print("  extra neighbors of 120:", sorted(g.label(x) for x, _ in extra_neighbors(g, u)))
print("  subcube 1 has", len(subcube_vertices(g, 1)), "vertices")

# Common neighbors that leave the subcube of 120.
for other in ("112", "101"):
    print(f"  cross-subcube common neighbors of 120 and {other}:",
          sorted(g.label(x) for x in cross_common_neighbors(g, "120", other)))

# Adjacent pairs share a fixed number of neighbors that depends only on the edge kind.
census = cn_census(g)
for kind, counts in census["adjacent_by_kind"].items():
    print(f"  edges of kind {kind}: common-neighbor counts {counts}")
print("  largest common-neighbor count over all pairs:", census["max_cn"])
