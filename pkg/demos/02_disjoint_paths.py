"""Disjoint paths, cuts and the strong Menger property.

Run with ``python demos/02_disjoint_paths.py``.
"""

from aqmenger import EDGE, VERTEX, FaultSet, is_strongly_menger, make_graph
from aqmenger import max_vertex_disjoint_paths, min_cut

g = make_graph(2, 4)
u, v = g.vertex("00"), g.vertex("22")

count, bundle = max_vertex_disjoint_paths(g, None, u, v)
print(f"{count} internally vertex-disjoint paths from 00 to 22:")
for path in bundle.paths:
    print("  " + " -> ".join(g.label(x) for x in path))

# Menger duality: the smallest separating vertex set has the same size.
cut = min_cut(g, None, u, v, VERTEX)
print("a minimum vertex cut:", sorted(g.label(x) for x in cut))

# Delete two vertices and ask whether every surviving pair still has
# min(deg u, deg v) disjoint paths.
faults = FaultSet.vertices(g, ["01", "13"])
verdict = is_strongly_menger(g, faults, VERTEX)
print(f"after deleting 01 and 13: strongly Menger = {verdict.holds} ({verdict.pairs_checked} pairs)")

# Edge faults work the same way.
edge_faults = FaultSet.edges(g, [("00", "01"), ("00", "10"), ("22", "23")])
print("after deleting three edges:", is_strongly_menger(g, edge_faults, EDGE).to_json())
