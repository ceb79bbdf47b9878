"""Fault sets one step past each guaranteed budget that do break the property.

Run with ``python demos/04_witnesses.py``.
"""

from aqmenger import build_witness, local_connectivity, make_graph
from aqmenger.faults import shrink_probe

for name, n, k in [("remark2", 3, 4), ("remark3", 2, 3), ("remark4", 2, 3)]:
    g = make_graph(n, k)
    case = build_witness(g, name)
    got = local_connectivity(g, case.fault, case.u, case.v, case.mode)
    print(f"AQ_{n},{k} {name}: {len(case.fault)} {case.mode} faults, pair "
          f"{g.label(case.u)}-{g.label(case.v)} has {got} disjoint paths, needs {case.required}")
    # Dropping any single fault restores the property, so the witness is tight.
    probe = shrink_probe(g, case)
    print(f"  with one fault removed the property holds in {sum(p['holds'] for p in probe)}/{len(probe)} cases")
