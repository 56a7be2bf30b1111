import json

import pytest
from click.testing import CliRunner

from hopfkit.cli import main
from hopfkit.families import parse_ref


@pytest.fixture
def runner():
    return CliRunner()


def kc2_json():
    return parse_ref("cyclic:2").to_json()


def test_verify_family_passes(runner):
    r = runner.invoke(main, ["verify", "taft:4,2,zeta4", "-N", "4"])
    assert r.exit_code == 0, r.output
    assert "PASS" in r.output


def test_verify_broken_structure_fails(runner, tmp_path):
    obj = kc2_json()
    obj["counit"] = ["1", "0"]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(obj))
    r = runner.invoke(main, ["verify", str(p)])
    assert r.exit_code == 1
    assert "FAIL" in r.output


def test_malformed_json_reports_position(runner, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "basis": [1,\n}')
    r = runner.invoke(main, ["verify", str(p)])
    assert r.exit_code == 2
    assert "line 3, column 1" in r.output


def test_unknown_ref_and_suite_exit_2(runner):
    assert runner.invoke(main, ["verify", "nosuch:1"]).exit_code == 2
    assert runner.invoke(main, ["suite", "nosuch"]).exit_code == 2


def test_dual_of_family_is_refused(runner):
    r = runner.invoke(main, ["dual", "dihedral"])
    assert r.exit_code == 2
    assert "handled by suites" in r.output


def test_dual_roundtrip_file(runner, tmp_path):
    out = tmp_path / "dual.json"
    r = runner.invoke(main, ["dual", "cyclic:2", "-o", str(out)])
    assert r.exit_code == 0, r.output
    r2 = runner.invoke(main, ["verify", str(out)])
    assert r2.exit_code == 0, r2.output


def test_suite_json_is_deterministic_across_jobs(runner, tmp_path):
    outs = []
    for jobs in ("1", "4"):
        p = tmp_path / f"r{jobs}.json"
        r = runner.invoke(main, ["suite", "taft-dual", "taft:2,1,-1", "--jobs", jobs, "--json", str(p)])
        assert r.exit_code == 0, r.output
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    rep = json.loads(outs[0])
    assert rep["status"] == "pass"
    assert rep["schema"] == "hopfkit-report/1"


def test_jobs_from_environment(runner):
    r = runner.invoke(main, ["suite", "w-filtration", "dihedral", "--json", "-"], env={"HOPFKIT_JOBS": "3"})
    assert r.exit_code == 0
    assert json.loads(r.output)["status"] == "pass"
    r = runner.invoke(main, ["suite", "w-filtration", "dihedral"], env={"HOPFKIT_JOBS": "many"})
    assert r.exit_code == 2


def test_timings_only_on_request(runner):
    r = runner.invoke(main, ["cosplit", "dihedral", "-N", "3", "--json", "-"])
    assert "seconds" not in r.output
    r = runner.invoke(main, ["cosplit", "dihedral", "-N", "3", "--json", "-", "--timings"])
    assert "seconds" in r.output


def _diag_algebra():
    return {"basis": ["e0", "e1"], "mult": [[0, 0, 0, "1"], [1, 1, 1, "1"]], "unit": ["1", "1"]}


def test_orbits_action_file_swap(runner, tmp_path):
    obj = {
        "hopf": "cyclic:2",
        "algebra": _diag_algebra(),
        "action": [[0, 0, ["1", "0"]], [0, 1, ["0", "1"]], [1, 0, ["0", "1"]], [1, 1, ["1", "0"]]],
    }
    p = tmp_path / "act.json"
    p.write_text(json.dumps(obj))
    r = runner.invoke(main, ["orbits", str(p), "--json", "-"])
    assert r.exit_code == 0, r.output
    rep = json.loads(r.output)
    checks = {c["name"]: c for c in rep["checks"]}
    assert len(checks["orbits"]["details"]["orbits"]) == 1
    assert checks["H_simple"]["details"]["holds"] is True


def test_orbits_incomplete_search_is_conditional(runner, tmp_path):
    # Q[x]/(x^2 - 2) has no Q-points, so the character search is incomplete
    obj = {
        "hopf": "cyclic:2",
        "algebra": {"basis": ["1", "x"], "unit": ["1", "0"],
                    "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "2"]]},
        "action": [[h, a, {str(a): "1"}] for h in (0, 1) for a in (0, 1)],
    }
    p = tmp_path / "act.json"
    p.write_text(json.dumps(obj))
    r = runner.invoke(main, ["orbits", str(p)])
    assert r.exit_code == 3, r.output


def test_orbits_bad_action_index(runner, tmp_path):
    obj = {"hopf": "cyclic:2", "algebra": _diag_algebra(), "action": [[5, 0, ["1", "0"]]]}
    p = tmp_path / "act.json"
    p.write_text(json.dumps(obj))
    assert runner.invoke(main, ["orbits", str(p)]).exit_code == 2


def test_orbits_family_ref(runner):
    r = runner.invoke(main, ["orbits", "taft:4,2,zeta4"])
    assert r.exit_code == 0, r.output
