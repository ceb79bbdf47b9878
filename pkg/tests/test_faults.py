from collections import Counter
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqmenger import bounds
from aqmenger.errors import AqError, HypothesisUnmet, InfeasibleRequest
from aqmenger.faults import (
    CEILING_ENV,
    WitnessCase,
    conditional_edge_fault_set,
    count_fault_sets,
    enumerate_fault_sets,
    min_degree_after,
    random_fault_set,
    shrink_probe,
    witness_remark2,
    witness_remark3,
    witness_remark4,
)
from aqmenger.faultset import EDGE, VERTEX, FaultSet, surviving_degrees
from aqmenger.menger import is_strongly_menger, local_connectivity
from aqmenger.topology import make_graph


@pytest.fixture(scope="module")
def aq23():
    return make_graph(2, 3)


def test_random_fault_set_basics(aq23):
    assert len(random_fault_set(aq23, 0, EDGE, 1)) == 0
    assert random_fault_set(aq23, 27, EDGE, 1).members == frozenset(range(27))
    assert random_fault_set(aq23, 4, VERTEX, 9) == random_fault_set(aq23, 4, VERTEX, 9)
    with pytest.raises(AqError):
        random_fault_set(aq23, 28, EDGE, 0)


def test_random_fault_set_is_roughly_uniform(aq23):
    counts = Counter()
    draws = 3000
    for seed in range(draws):
        counts.update(random_fault_set(aq23, 2, VERTEX, seed).members)
    expected = draws * 2 / 9
    chi2 = sum((counts[x] - expected) ** 2 / expected for x in range(9))
    assert chi2 < 26.1  # 0.999 quantile, 8 degrees of freedom


def test_conditional_sets(aq23):
    s = conditional_edge_fault_set(aq23, 6, seed=0)
    assert len(s) == 6 and min_degree_after(aq23, s.members) >= 2
    empty = conditional_edge_fault_set(aq23, 0, seed=0)
    assert len(empty) == 0 and min(surviving_degrees(aq23, empty)) == 6
    with pytest.raises(AqError):
        conditional_edge_fault_set(aq23, 19, seed=0)


@settings(max_examples=40, deadline=None)
@given(m=st.integers(0, 12), seed=st.integers(0, 10**6))
def test_conditional_generator_keeps_degree_two(aq23, m, seed):
    s = conditional_edge_fault_set(aq23, m, seed=seed)
    assert len(s) == m
    assert min(surviving_degrees(aq23, s)) >= 2


def test_enumeration_counts(aq23):
    assert sum(1 for _ in enumerate_fault_sets(aq23, 4, EDGE)) == 17550 == comb(27, 4)
    only = list(enumerate_fault_sets(aq23, 0, EDGE))
    assert len(only) == 1 and len(only[0]) == 0
    assert count_fault_sets(aq23, 3, VERTEX) == 84
    with pytest.raises(InfeasibleRequest) as info:
        list(enumerate_fault_sets(make_graph(3, 4), 13, VERTEX))
    assert info.value.count == comb(64, 13)


def test_enumeration_shards_partition(aq23):
    full = [f.members for f in enumerate_fault_sets(aq23, 3, EDGE)]
    halves = [f.members for f in enumerate_fault_sets(aq23, 3, EDGE, stop=1000)]
    halves += [f.members for f in enumerate_fault_sets(aq23, 3, EDGE, start=1000)]
    assert halves == full


def test_enumeration_conditional_filter(aq23):
    sets = list(enumerate_fault_sets(aq23, 5, EDGE, conditional=True))
    assert all(min_degree_after(aq23, f.members) >= 2 for f in sets)
    assert len(sets) < comb(27, 5)


def test_ceiling_env_override(aq23, monkeypatch):
    monkeypatch.setenv(CEILING_ENV, "100")
    with pytest.raises(InfeasibleRequest):
        next(enumerate_fault_sets(aq23, 2, EDGE))


@pytest.mark.parametrize("n,k", [(3, 3), (3, 4), (3, 5), (4, 3)])
def test_remark2_size_and_failure(n, k):
    g = make_graph(n, k)
    case = witness_remark2(g)
    assert len(case.fault) == bounds.witness_size("remark2", n, k)
    assert case.v not in (case.u, case.extras["w"])
    assert local_connectivity(g, case.fault, case.u, case.v, VERTEX) < case.required == 4 * n - 2
    if g.order <= 81:
        assert not is_strongly_menger(g, case.fault, VERTEX).holds


def test_remark2_search_fallback_on_aq33():
    g = make_graph(3, 3)
    case = witness_remark2(g)
    assert case.v_rule == "search"
    with pytest.raises(AqError):
        witness_remark2(g, search=False)
    assert witness_remark2(make_graph(3, 4)).v_rule == "remark"


def test_remark2_index_range():
    with pytest.raises(HypothesisUnmet):
        witness_remark2(make_graph(3, 4), i=3)
    with pytest.raises(HypothesisUnmet):
        witness_remark2(make_graph(2, 4))


@pytest.mark.parametrize("n,k", [(2, 3), (2, 4), (3, 3), (3, 4)])
def test_remark3_witness(n, k):
    g = make_graph(n, k)
    case = witness_remark3(g)
    assert len(case.fault) == 4 * n - 3
    assert local_connectivity(g, case.fault, case.u, case.v, EDGE) <= 4 * n - 3
    assert not is_strongly_menger(g, case.fault, EDGE).holds


@pytest.mark.parametrize("n,k", [(2, 3), (2, 4), (3, 3)])
def test_remark4_witness(n, k):
    g = make_graph(n, k)
    case = witness_remark4(g)
    assert len(case.fault) == 8 * n - 9
    assert min(surviving_degrees(g, case.fault)) >= 2
    assert local_connectivity(g, case.fault, case.u, case.v, EDGE) < case.required
    assert not is_strongly_menger(g, case.fault, EDGE).holds


def test_witness_json_roundtrip(aq23):
    case = witness_remark4(aq23)
    again = WitnessCase.from_json(case.to_json(aq23))
    assert again.fault.members == case.fault.members
    assert (again.u, again.v, again.required, again.v_rule) == (case.u, case.v, case.required, case.v_rule)


def test_shrink_probe_records_every_element(aq23):
    case = witness_remark3(aq23)
    probe = shrink_probe(aq23, case)
    assert [p["removed"] for p in probe] == sorted(case.fault.members)
    assert all(p["holds"] for p in probe)


def test_faultset_json_roundtrip(aq23):
    f = FaultSet.edges(aq23, [(0, aq23.nbrs[0][0]), 5], provenance="hand")
    data = f.to_json(aq23)
    assert FaultSet.from_json(data) == f
    assert len(data["pairs"]) == 2


def test_seeds_accept_sequences(aq23):
    a = random_fault_set(aq23, 5, EDGE, [3, 4])
    b = random_fault_set(aq23, 5, EDGE, np.array([3, 4]))
    assert a.members == b.members
