import csv
import io
import json
import re

import networkx as nx
import pytest

from aqmenger.errors import AqError, HypothesisUnmet, InfeasibleRequest
from aqmenger.harness import (
    EXIT_COUNTEREXAMPLE,
    SCHEMA_VERSION,
    CampaignConfig,
    CampaignReport,
    csv_summary,
    export_graph,
    replay,
    run_campaign,
)
from aqmenger.topology import AqParams


def test_witness3_campaign():
    rep = run_campaign(CampaignConfig(2, 3, "witness3"))
    assert rep.totals["sets_tested"] == 1
    assert rep.totals["expected_failures_confirmed"] == 1
    assert rep.passed and rep.totals["failures"] == 0
    record = rep.expected_failures[0]
    assert record["achieved"] <= 5 < record["required"] == 6


def test_sampled_thm3_small():
    rep = run_campaign(CampaignConfig(2, 3, "thm3", trials=300, seed=4))
    assert rep.totals["sets_tested"] == 300 and rep.totals["failures"] == 0
    assert rep.totals["by_size"] == {"6": 300}


def test_exhaustive_covers_all_sizes():
    rep = run_campaign(CampaignConfig(2, 3, "thm2", mode="exhaustive", budget=2))
    assert rep.totals["by_size"] == {"0": 1, "1": 27, "2": 351}
    assert rep.counterexamples == []


def test_monotone_component_target_enumerates_one_size():
    rep = run_campaign(CampaignConfig(2, 3, "lemma8", mode="exhaustive", budget=3))
    assert rep.totals["by_size"] == {"3": 2925}


def test_report_is_deterministic_and_job_independent():
    cfg = CampaignConfig(2, 3, "thm2", trials=200, seed=11, budget=5, probe=True)
    one = run_campaign(cfg)
    two = run_campaign(CampaignConfig(2, 3, "thm2", trials=200, seed=11, budget=5, probe=True, jobs=3))
    assert one.dumps(include_wall_time=False) == two.dumps(include_wall_time=False)
    assert one.digest() == two.digest()


def test_exhaustive_parallel_merge():
    base = dict(n=2, k=3, target="lemma9", mode="exhaustive", budget=4)
    one = run_campaign(CampaignConfig(**base))
    four = run_campaign(CampaignConfig(**base, jobs=4))
    assert one.digest() == four.digest()


def test_probe_finds_and_replays_counterexamples():
    rep = run_campaign(CampaignConfig(2, 3, "thm2", trials=400, seed=0, budget=5, probe=True))
    assert rep.counterexamples and rep.exit_code == EXIT_COUNTEREXAMPLE
    assert rep.totals["failures"] == len(rep.counterexamples)
    indices = [cx["index"] for cx in rep.counterexamples]
    assert indices == sorted(indices)
    results = replay(json.loads(rep.dumps()))
    assert results and all(ok for _, ok in results)


def test_replay_detects_tampering():
    rep = run_campaign(CampaignConfig(2, 3, "thm2", trials=400, seed=0, budget=5, probe=True))
    data = json.loads(rep.dumps())
    data["counterexamples"][0]["failure"]["witness"]["achieved"] += 1
    assert replay(data)[0] == (data["counterexamples"][0]["index"], False)


def test_budget_over_bound_needs_probe():
    with pytest.raises(AqError):
        run_campaign(CampaignConfig(2, 3, "thm2", budget=5))


def test_hypothesis_and_infeasible_errors():
    with pytest.raises(HypothesisUnmet):
        run_campaign(CampaignConfig(2, 3, "thm1"))
    with pytest.raises(InfeasibleRequest) as info:
        run_campaign(CampaignConfig(2, 3, "lemma9", mode="exhaustive"))
    assert info.value.count > 10**7
    with pytest.raises(InfeasibleRequest):
        run_campaign(CampaignConfig(7, 4, "thm2"))
    with pytest.raises(InfeasibleRequest):
        run_campaign(CampaignConfig(2, 3, "thm2", mode="exhaustive", ceiling=100))


def test_config_validation():
    with pytest.raises(AqError):
        CampaignConfig(2, 3, "thm9")
    with pytest.raises(AqError):
        CampaignConfig(2, 3, "thm2", mode="all")
    with pytest.raises(AqError):
        CampaignConfig(2, 2, "thm2")


def test_thm1_notes_and_empirical_target():
    rep = run_campaign(CampaignConfig(2, 4, "thm1", trials=20))
    assert rep.passed and "edge connected" in rep.notes[0]
    emp = run_campaign(CampaignConfig(3, 3, "thm1_empirical", trials=50))
    assert emp.passed and emp.counterexamples == []
    assert emp.totals["observed_failures"] == len(emp.observations)


def test_scan_targets():
    for target in ("structure", "cn", "expansion"):
        rep = run_campaign(CampaignConfig(3, 3, target))
        assert rep.passed, target
    cn = run_campaign(CampaignConfig(3, 3, "cn")).details
    assert cn["adjacent_by_kind"]["A,2,+1"] == {"5": 27}


def test_report_schema_roundtrip():
    rep = run_campaign(CampaignConfig(2, 3, "witness4"))
    data = json.loads(rep.dumps())
    assert data["schema_version"] == SCHEMA_VERSION
    assert "jobs" not in data["config"]
    again = CampaignReport.from_json(data)
    assert again.digest() == rep.digest()


def test_csv_summary_one_row_per_campaign():
    reps = [run_campaign(CampaignConfig(2, 3, t)) for t in ("witness3", "structure")]
    rows = list(csv.DictReader(io.StringIO(csv_summary(reps))))
    assert [r["target"] for r in rows] == ["witness3", "structure"]
    assert rows[0]["digest"] == reps[0].digest()


def test_export_graph(tmp_path):
    assert len(export_graph(AqParams(2, 3), "edgelist").splitlines()) == 27
    assert len(export_graph(AqParams(1, 4), "edgelist").splitlines()) == 4
    path = tmp_path / "g.dot"
    export_graph(AqParams(2, 3), "dot", path)
    assert path.read_bytes() == export_graph(AqParams(2, 3), "dot").encode()
    lines = path.read_text().splitlines()
    assert re.fullmatch(r"graph AQ_2_3 \{", lines[0]) and lines[-1] == "}"
    node = re.compile(r'  \d+ \[label="\d+"\];')
    edge = re.compile(r'  \d+ -- \d+ \[kind="[TA],\d+,[+-]1"\];')
    assert sum(bool(node.fullmatch(x)) for x in lines) == 9
    assert sum(bool(edge.fullmatch(x)) for x in lines) == 27
    assert len(lines) == 2 + 9 + 27
    with pytest.raises(OSError):
        export_graph(AqParams(2, 3), "dot", tmp_path / "missing" / "g.dot")


def test_exported_edgelist_rebuilds_graph():
    text = export_graph(AqParams(2, 4), "edgelist")
    G = nx.parse_edgelist(text.splitlines(), nodetype=int, data=False)
    assert G.number_of_nodes() == 16 and all(d == 6 for _, d in G.degree)
