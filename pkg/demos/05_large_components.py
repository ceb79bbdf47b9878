"""How much of the graph stays together after many faults.

Run with ``python demos/05_large_components.py``.
"""

from aqmenger import FaultSet, components_after_faults, make_graph
from aqmenger.components import check_component_premise, check_wz18_shape
from aqmenger.faults import random_fault_set

g = make_graph(2, 3)
for m in (9, 11):
    worst = min(components_after_faults(g, random_fault_set(g, m, "edge", seed)).sizes[0] for seed in range(2000))
    print(f"AQ_2,3 with {m} random edge faults: smallest largest-component over 2000 draws = {worst} of 9")

# Deleting the neighborhood of a vertex splits off exactly that vertex.
g = make_graph(3, 3)
f = FaultSet.vertices(g, g.nbrs[0])
print("AQ_3,3 minus N(000):", check_wz18_shape(g, f))

rep = check_component_premise(make_graph(3, 4), budget=4, trials=500, seed=0)
print(f"AQ_3,4 with {rep.max_faults} random vertex faults: {rep.passed}/{rep.trials} keep a near-spanning component")
