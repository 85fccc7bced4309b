"""Command-line interface: exit codes, JSON reports, seeding, file output."""

import json

import pytest

from expobasis.cli import main
from expobasis.jsonio import loads


@pytest.fixture()
def run(capsys, monkeypatch):
    monkeypatch.delenv("EXPOBASIS_SEED", raising=False)

    def _run(argv, env=None):
        if env:
            for key, value in env.items():
                monkeypatch.setenv(key, value)
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def test_beta_single_and_range(run):
    code, out, _ = run(["beta", "--M", "2"])
    assert code == 0
    rows = loads(out)["beta"]
    assert rows[0]["M"] == 2
    assert rows[0]["beta"] == pytest.approx(0.34084505690810829, abs=1e-15)
    assert abs(rows[0]["residual"]) < 1e-12

    code, out, _ = run(["beta", "--M", "2", "--M-max", "4"])
    assert [r["M"] for r in loads(out)["beta"]] == [2, 3, 4]


def test_certify_emits_schema_v1_certificate(run):
    code, out, _ = run(["certify", "interval-removal", "--N", "4", "--m", "1",
                        "--delta", "0.08"])
    assert code == 0
    doc = loads(out)
    assert doc["schema"] == "v1"
    assert doc["method"] == "interval_removal"
    assert doc["A"] == 0.018415909611543373
    assert doc["B"] == 9.907920451942282


def test_construct_includes_matrix_summary(run):
    code, out, _ = run(["construct", "perturbed-union", "--s", "2", "--a", "0,3",
                        "--epsilons", "0,1/3", "--delta", "0.0006"])
    assert code == 0
    doc = loads(out)
    assert set(doc) == {"schema", "certificate", "matrix"}
    assert doc["matrix"]["size"] == 6
    assert doc["matrix"]["nodes"] == [0, 1, 2, 10, 11, 12]
    assert doc["matrix"]["oracle_scale"] == 3.0


def test_oracle_reports_optimal_constants(run):
    code, out, _ = run(["oracle", "residue-orthogonal", "--s", "2", "--a", "0,3"])
    assert code == 0
    oracle = loads(out)["oracle"]
    assert oracle["condition"] == "nonsingular"
    assert oracle["A_opt"] == pytest.approx(2.0, abs=1e-9)
    assert oracle["B_opt"] == pytest.approx(2.0, abs=1e-9)


def test_verify_pass_is_exit_zero(run):
    code, out, _ = run(["verify", "residue-orthogonal", "--s", "2", "--a", "0,3",
                        "--trials", "10"])
    assert code == 0
    assert loads(out)["verdict"] == "pass"


def test_verify_reports_are_byte_identical(run):
    args = ["verify", "residue-orthogonal", "--s", "2", "--a", "0,3", "--trials", "10"]
    _, first, _ = run(args)
    _, second, _ = run(args)
    assert first == second


def test_seed_precedence(run):
    args = ["verify", "residue-orthogonal", "--s", "2", "--a", "0,3", "--trials", "10"]
    assert loads(run(args)[1])["sample"]["seed"] == 42
    assert loads(run(args, env={"EXPOBASIS_SEED": "7"})[1])["sample"]["seed"] == 7
    assert loads(run(args + ["--seed", "11"], env={"EXPOBASIS_SEED": "7"})[1])["sample"]["seed"] == 11


def test_bad_seed_env_is_a_precondition_error(run):
    code, _, err = run(["verify", "residue-orthogonal", "--s", "2", "--a", "0,3"],
                       env={"EXPOBASIS_SEED": "pony"})
    assert code == 1
    assert "EXPOBASIS_SEED" in err


def test_complement_verification_fails_with_exit_two(run, tmp_path):
    parent = tmp_path / "parent.json"
    code, out, _ = run(["certify", "residue-orthogonal", "--s", "1", "--a", "0",
                        "--output", str(parent)])
    assert code == 0
    assert out == ""  # --output suppresses stdout
    assert parent.exists()

    code, out, _ = run(["certify", "complement", "--Delta", "3", "--input", str(parent)])
    assert code == 0
    comp_doc = loads(out)
    assert comp_doc["method"] == "complement"
    assert "unverified_reflection_bounds" in comp_doc["flags"]
    comp = tmp_path / "comp.json"
    comp.write_text(out)

    code, out, _ = run(["verify", "--input", str(comp), "--trials", "20"])
    assert code == 2
    doc = loads(out)
    assert doc["verdict"] == "fail"
    assert doc["violations"]
    for violation in doc["violations"]:
        assert {"route", "index", "side", "value", "bound"} == set(violation)
    oracle_sides = {v["side"] for v in doc["violations"] if v["route"] == "oracle"}
    assert "upper" in oracle_sides


def test_inline_json_input(run):
    _, cert_text, _ = run(["certify", "residue-orthogonal", "--s", "2", "--a", "0,3"])
    code, out, _ = run(["verify", "--input", cert_text, "--trials", "10"])
    assert code == 0
    assert loads(out)["verdict"] == "pass"


def test_malformed_json_is_exit_three(run):
    code, _, err = run(["verify", "--input", "{bad"])
    assert code == 3
    assert "line 1" in err


def test_precondition_failures_are_exit_one(run):
    code, _, err = run(["certify", "lattice-subset", "--N", "12", "--M", "3",
                        "--u", "1", "--a", "0,1,6"])
    assert code == 1
    assert "SeparationError" in err

    code, _, err = run(["certify", "interval-removal", "--N", "4"])
    assert code == 1
    assert "--delta" in err


def test_unknown_method_is_an_argparse_error(run):
    with pytest.raises(SystemExit):
        main(["certify", "no-such-method"])


def test_regress_subcommand(run):
    code, out, _ = run(["regress"])
    assert code == 0
    doc = loads(out)
    assert doc["verdict"] == "pass"
    assert len(doc["regressions"]) == 9
    assert all(r["passed"] for r in doc["regressions"])


def test_report_bundles_all_routes(run):
    code, out, _ = run(["report", "interval-removal", "--N", "4", "--m", "1",
                        "--delta", "0.08", "--trials", "16"])
    assert code == 0
    doc = loads(out)
    assert set(doc) == {"schema", "certificate", "matrix", "oracle", "sample",
                        "regressions", "verdict", "violations"}
    assert doc["verdict"] == "pass"
    assert doc["violations"] == []


def test_text_format_renders_key_lines(run):
    code, out, _ = run(["report", "interval-removal", "--N", "4", "--m", "1",
                        "--delta", "0.08", "--trials", "16", "--format", "text"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "schema: v1"
    assert "  method: interval_removal" in lines
    assert any(line.startswith("verdict:") for line in lines)


def test_output_file_matches_stdout_payload(run, tmp_path):
    target = tmp_path / "cert.json"
    args = ["certify", "residue-orthogonal", "--s", "2", "--a", "0,3"]
    _, stdout_text, _ = run(args)
    code, out, _ = run(args + ["--output", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == stdout_text
