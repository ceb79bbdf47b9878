from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqmenger.errors import AqError
from aqmenger.faults import witness_remark2, witness_remark3
from aqmenger.faultset import EDGE, VERTEX, FaultSet, surviving_degrees
from aqmenger.menger import (
    FlowNetwork,
    PathBundle,
    is_strongly_menger,
    local_connectivity,
    max_edge_disjoint_paths,
    max_vertex_disjoint_paths,
    min_cut,
    verify_bundle,
)
from aqmenger.components import components_after_faults
from aqmenger.topology import make_graph

from oracles import disjoint_paths_count, min_cut_by_enumeration


@pytest.fixture(scope="module")
def aq23():
    return make_graph(2, 3)


def test_unfaulted_counts_equal_degree(aq23):
    for u, v in combinations(range(aq23.order), 2):
        assert max_vertex_disjoint_paths(aq23, None, u, v)[0] == 6
        assert max_edge_disjoint_paths(aq23, None, u, v)[0] == 6


def test_isolated_endpoint(aq23):
    far = next(x for x in range(1, aq23.order) if not aq23.has_edge(0, x))
    f = FaultSet.vertices(aq23, aq23.nbrs[0])
    assert max_vertex_disjoint_paths(aq23, f, 0, far)[0] == 0
    assert min_cut(aq23, f, 0, far) == frozenset()
    s = FaultSet(EDGE, frozenset(aq23.incident[0]))
    assert max_edge_disjoint_paths(aq23, s, 0, 4)[0] == 0
    assert min_cut(aq23, s, 0, 4) == frozenset()


def test_bundle_is_valid_and_serializable(aq23):
    count, bundle = max_vertex_disjoint_paths(aq23, None, 0, 4)
    assert bundle.count == count
    verify_bundle(aq23, None, bundle)
    again = PathBundle.from_json(bundle.to_json())
    assert again == bundle
    assert all(p[0] == 0 and p[-1] == 4 for p in bundle.paths)


def test_verify_bundle_rejects_overlap(aq23):
    _, bundle = max_vertex_disjoint_paths(aq23, None, 0, 4)
    longer = [p for p in bundle.paths if len(p) > 2]
    bad = PathBundle(0, 4, (longer[0], longer[0]), VERTEX)
    with pytest.raises(AqError):
        verify_bundle(aq23, None, bad)


def test_vertex_cut_separates(aq23):
    u = 0
    v = next(x for x in range(1, aq23.order) if not aq23.has_edge(u, x))
    cut = min_cut(aq23, None, u, v, VERTEX)
    assert len(cut) == 6
    rest = components_after_faults(aq23, FaultSet(VERTEX, cut))
    assert not any(u in c and v in c for c in rest.components)
    with pytest.raises(AqError):
        min_cut(aq23, None, 0, aq23.nbrs[0][0], VERTEX)


def test_edge_cut_separates(aq23):
    cut = min_cut(aq23, FaultSet(EDGE), 0, 5)
    assert len(cut) == 6
    rest = components_after_faults(aq23, FaultSet(EDGE, cut))
    assert not any(0 in c and 5 in c for c in rest.components)


def test_mode_and_endpoint_errors(aq23):
    f = FaultSet.vertices(aq23, [3])
    with pytest.raises(AqError):
        max_edge_disjoint_paths(aq23, f, 0, 4)
    with pytest.raises(AqError):
        max_vertex_disjoint_paths(aq23, f, 0, 3)
    with pytest.raises(AqError):
        max_vertex_disjoint_paths(aq23, None, 2, 2)


def test_strong_menger_examples():
    assert is_strongly_menger(make_graph(2, 4), None, VERTEX).holds
    g = make_graph(2, 3)
    verdict = is_strongly_menger(g, witness_remark3(g).fault, EDGE)
    assert not verdict.holds
    u, v, got, need = verdict.witness
    assert got <= 5 < need == 6


def test_remark2_pair_falls_short():
    g = make_graph(3, 4)
    case = witness_remark2(g)
    assert len(case.fault) == 5
    assert local_connectivity(g, case.fault, case.u, case.v, VERTEX) < 10


@pytest.mark.parametrize("mode", [VERTEX, EDGE])
def test_flow_matches_oracle_on_cycle(mode):
    g = make_graph(1, 5)
    for u, v in combinations(range(5), 2):
        assert local_connectivity(g, None, u, v, mode) == disjoint_paths_count(g, u, v, mode) == 2


@settings(max_examples=40, deadline=None)
@given(data=st.data(), mode=st.sampled_from([VERTEX, EDGE]))
def test_flow_matches_oracle_and_cut(aq23, data, mode):
    pool = aq23.order if mode == VERTEX else aq23.size
    members = data.draw(st.sets(st.integers(0, pool - 1), max_size=5))
    f = FaultSet(mode, frozenset(members))
    alive = [x for x in range(aq23.order) if mode == EDGE or x not in members]
    if len(alive) < 2:
        return
    u, v = data.draw(st.lists(st.sampled_from(alive), min_size=2, max_size=2, unique=True))
    got = local_connectivity(aq23, f, u, v, mode)
    assert got == disjoint_paths_count(aq23, u, v, mode, tuple(members))
    deg = surviving_degrees(aq23, f)
    assert got <= min(deg[u], deg[v])
    if mode == EDGE or not aq23.has_edge(u, v):
        assert len(min_cut(aq23, f, u, v, mode)) == got


def test_cut_size_matches_enumeration(aq23):
    for v in (4, 5, 8):
        if aq23.has_edge(0, v):
            continue
        assert len(min_cut(aq23, None, 0, v, VERTEX)) == min_cut_by_enumeration(aq23, 0, v, VERTEX)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), mode=st.sampled_from([VERTEX, EDGE]))
def test_adding_faults_never_helps(seed, mode):
    g = make_graph(2, 4)
    rng = np.random.default_rng(seed)
    pool = g.order if mode == VERTEX else g.size
    chain = [int(x) for x in rng.permutation(pool)[:6]]
    u, v = 0, 10
    chain = [x for x in chain if mode == EDGE or x not in (u, v)]
    last = None
    for i in range(len(chain) + 1):
        got = local_connectivity(g, FaultSet(mode, frozenset(chain[:i])), u, v, mode)
        assert last is None or got <= last
        last = got


def test_flow_network_is_reusable(aq23):
    net = FlowNetwork(aq23, None, EDGE)
    first = [net.max_flow(0, v) for v in range(1, 9)]
    assert first == [net.max_flow(0, v) for v in range(1, 9)] == [6] * 8
    assert net.max_flow(0, 4, limit=3) == 3


def test_results_are_deterministic(aq23):
    f = FaultSet(EDGE, frozenset([1, 5, 7]))
    a = max_edge_disjoint_paths(aq23, f, 0, 8)[1]
    b = max_edge_disjoint_paths(aq23, f, 0, 8)[1]
    assert a.dumps() == b.dumps()
    assert is_strongly_menger(aq23, f) == is_strongly_menger(aq23, f)
