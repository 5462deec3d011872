import json

import pytest

from hilbcomp.cli import main
from hilbcomp.verify import FAIL, INCONCLUSIVE, PASS, ConfigError, RunConfig, run_check, run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_structure_orbits(capsys):
    code, doc = run(capsys, "structure", "orbits", "--structure", "dlo", "--arity", "2", "--list")
    assert code == 0 and doc["orbits"] == 3 and len(doc["types"]) == 3


def test_structure_config_file(tmp_path, capsys):
    cfg = tmp_path / "rado.json"
    cfg.write_text(json.dumps({"kind": "rado", "scale": 8}))
    code, doc = run(capsys, "structure", "orbits", "--structure", str(cfg), "--arity", "2")
    assert doc["structure"] == "rado" and doc["orbits"] == 3


def test_semigroup_enumerate_from_generator_file(tmp_path, capsys):
    gens = tmp_path / "gens.txt"
    gens.write_text("0->1, 1->0\n0->1, 1->2, 2->0\n1->1, 2->2\n")
    out = tmp_path / "report.json"
    code, _ = run(capsys, "semigroup", "enumerate", "--gens", str(gens), "--out", str(out))
    doc = json.loads(out.read_text())
    assert code == 0 and doc["elements"] == 32
    assert doc["regular"] and doc["idempotents_commute"] and doc["unique_inverses"]


def test_semigroup_cap_is_inconclusive(tmp_path, capsys):
    gens = tmp_path / "gens.txt"
    gens.write_text("0->1, 1->0\n0->1, 1->2, 2->0\n")
    code, doc = run(capsys, "semigroup", "check", "--gens", str(gens), "--cap", "1")
    assert doc["status"] == "inconclusive"


def test_wap_product_and_check(capsys):
    code, doc = run(capsys, "wap", "product", "--p", "0,1/1,2", "--q", "0,1/1,2")
    # both classes carry the partial map {0->1}, whose square is empty
    assert code == 0 and doc["partial_map"] == []
    code, doc = run(capsys, "wap", "product", "--p", "0,1/1,2", "--q", "0,1/0,1")
    assert doc["partial_map"] == ["0->1"]
    code, doc = run(capsys, "wap", "check", "--structure", "dlo", "--support-size", "2")
    assert doc["idempotents_and_regular"]["status"] == "pass"
    assert doc["partial_map_homomorphism"]["status"] == "pass"


def test_hilb_commands(tmp_path, capsys):
    code, doc = run(capsys, "hilb", "coeff", "--relation", "eq:2", "--a", "0,1", "--b", "2,3", "--g", "2->0, 3->1")
    assert doc["value"] == "1/1"
    code, doc = run(capsys, "hilb", "decay", "--n", "50")
    assert doc["holds"] and doc["mode"] == "exact"
    vec = tmp_path / "v.json"
    vec.write_text(json.dumps([["1", "0", "1"], ["0", "1", "1"]]))
    code, doc = run(capsys, "hilb", "indisc", "--vectors", str(vec))
    assert doc["holds"] and doc["predicted_norm2"] == "3/2"
    code, doc = run(capsys, "hilb", "census", "--structure", "rado", "--c", "0,1", "--window", "20")
    assert doc["holds"] and doc["double_cosets"] == 26


def test_float_mode_needs_a_tolerance(capsys):
    assert main(["hilb", "decay", "--mode", "float"]) == 2
    assert main(["--tolerance", "0.1", "hilb", "decay"]) == 2
    code, doc = run(capsys, "hilb", "decay", "--mode", "float", "--tolerance", "1e-9", "--n", "20")
    assert doc["holds"]


def test_cb_commands(tmp_path, capsys):
    cloud = tmp_path / "cloud.json"
    cloud.write_text(json.dumps({"isolated": [], "families": [{"limit": ["0"], "rho2": "1", "depth": 1}]}))
    code, doc = run(capsys, "cb", "rank", "--cloud", str(cloud))
    assert doc["rank"] == 2 and doc["distance_set"] == ["0/1", "1/1", "2/1"]
    code, doc = run(capsys, "cb", "ambit", "--structure", "pure_set")
    assert doc["rank"] == 2 and doc["coset_bound"] == 2


def test_stab_commands(capsys):
    code, doc = run(capsys, "stab", "ladder", "--structure", "dlo", "--formula", "order", "--n", "10")
    assert doc["found"] and len(doc["witness"]["rows"]) == 10
    code, doc = run(capsys, "stab", "ladder", "--formula", "equality", "--n", "2", "--window", "30")
    assert not doc["found"] and doc["certified_none_within_window"]
    code, doc = run(capsys, "stab", "table", "--structure", "rado", "--relation", "eq:2", "--b", "0,1")
    assert all(v["agree"] for v in doc["arrays"].values())


def test_bad_structure_is_a_config_error(capsys):
    assert main(["structure", "orbits", "--structure", "tree"]) == 2


def test_verify_command_exit_codes(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--suites", "7,8", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"] == {"pass": 2, "fail": 0, "inconclusive": 0}
    assert main(["verify", "--suites", "5", "--mode", "float", "--tolerance", "0"]) == 1
    assert main(["verify", "--suites", "42"]) == 2


def test_verify_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"structures": ["pure_set"], "suites": [3], "support_cap": 2}))
    out = tmp_path / "r.json"
    assert main(["--config", str(cfg), "verify", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["structures"] == ["pure_set"]
    cfg.write_text(json.dumps({"windows": 3}))
    assert main(["--config", str(cfg), "verify"]) == 2


# --- the runner itself ---------------------------------------------------------------

def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(semigroup_cap=0)
    with pytest.raises(ConfigError):
        RunConfig(mode="float")
    with pytest.raises(ConfigError):
        RunConfig(tolerance=1e-9)
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"structures": [{"kind": "tree"}]})


def test_cap_one_is_inconclusive():
    rec = run_check(1, RunConfig(semigroup_cap=1))
    assert rec.status == INCONCLUSIVE
    assert "cap exceeded" in rec.evidence["generated"]


def test_float_tolerance_zero_shows_boundary_failures():
    rec = run_check(5, RunConfig(mode="float", tolerance=0.0, decay_n=2000, decay_truncation=200))
    assert rec.status == FAIL
    assert rec.evidence["boundary"]["failures"] > 0
    exact = run_check(5, RunConfig(decay_n=2000, decay_truncation=200))
    assert exact.status == PASS and exact.evidence["boundary"]["failures"] == 0


def test_reports_are_deterministic():
    cfg = RunConfig(suites=(6, 8), samples=20, clouds=20)
    assert run_verify(cfg).dumps() == run_verify(cfg).dumps()


def test_errors_inside_a_check_are_recorded(monkeypatch):
    from hilbcomp import verify

    def boom(cfg):
        raise RuntimeError("broken")

    monkeypatch.setitem(verify.CHECKS, 8, ("08 broken", boom))
    rec = run_check(8, RunConfig())
    assert rec.status == FAIL and "broken" in rec.evidence["error"]


def test_parallel_run_matches_serial():
    cfg = RunConfig(suites=(7, 8, 6), samples=10, clouds=10)
    serial = run_verify(cfg).dumps()
    parallel = run_verify(RunConfig(suites=(7, 8, 6), samples=10, clouds=10, jobs=2)).dumps()
    assert serial == parallel
