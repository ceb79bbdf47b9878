import json

import pytest

from aqmenger.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--n", "3", "--k", "4")
    assert code == 0
    assert json.loads(out) == {"n": 3, "k": 4, "order": 64, "degree": 10, "edges": 320}


def test_export_edgelist_and_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "--n", "2", "--k", "3")
    assert code == 0 and len(out.splitlines()) == 27
    dest = tmp_path / "g.dot"
    code, _, _ = run(capsys, "export", "--n", "2", "--k", "3", "--format", "dot", "--out", str(dest))
    assert code == 0 and dest.read_text().startswith("graph AQ_2_3 {")


def test_verify_pass_and_csv(capsys, tmp_path):
    report, table = tmp_path / "r.json", tmp_path / "r.csv"
    code, _, err = run(
        capsys, "verify", "--n", "2", "--k", "3", "--target", "thm3",
        "--trials", "50", "--out", str(report), "--csv", str(table),
    )
    assert code == 0 and "PASS" in err
    assert json.loads(report.read_text())["totals"]["failures"] == 0
    assert len(table.read_text().splitlines()) == 2


def test_verify_counterexample_then_replay(capsys, tmp_path):
    report = tmp_path / "probe.json"
    code, _, _ = run(
        capsys, "verify", "--n", "2", "--k", "3", "--target", "thm2",
        "--budget", "5", "--probe", "--out", str(report),
    )
    assert code == 2
    code, out, _ = run(capsys, "replay", str(report))
    assert code == 0 and "reproduced" in out and "NOT" not in out


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--n", "2", "--k", "3", "--target", "witness4")
    assert code == 0
    assert json.loads(out)["totals"]["expected_failures_confirmed"] == 1


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["verify", "--n", "2", "--k", "3", "--target", "thm1"], 3),
        (["verify", "--n", "2", "--k", "3", "--target", "lemma9", "--mode", "exhaustive"], 4),
        (["verify", "--n", "2", "--k", "3", "--target", "thm2", "--budget", "5"], 1),
        (["verify", "--n", "2", "--k", "3", "--target", "nope"], 1),
        (["export", "--n", "0", "--k", "3"], 1),
    ],
)
def test_exit_codes(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected


def test_ceiling_env_var(capsys, monkeypatch):
    monkeypatch.setenv("AQMENGER_ENUM_CEILING", "10")
    code, _, err = run(capsys, "verify", "--n", "2", "--k", "3", "--target", "thm2", "--mode", "exhaustive")
    assert code == 4 and "ceiling 10" in err
