import json
import logging
import os

import pytest

from main import EXIT_CAP, EXIT_ERROR, EXIT_FINDING, EXIT_OK, run
from parsers.report_io import validate_document


@pytest.fixture(autouse=True)
def restore_root_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def invoke(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def golden(golden_dir, name):
    return os.path.join(golden_dir, name)


def test_construct_fnr_matches_golden(capsys, golden_dir):
    code, out, _ = invoke(capsys, "construct", "fnr", "--n", 7, "--r", 3)
    assert code == EXIT_OK
    with open(golden(golden_dir, "fnr_7_3.txt"), encoding="utf-8") as f:
        assert out == f.read()
    assert len(out.splitlines()) == 15


def test_construct_to_file_and_reload(capsys, tmp_path):
    target = tmp_path / "c62.json"
    code, out, _ = invoke(capsys, "construct", "complete", "--n", 6, "--k", 2, "--format", "json", "--output", target)
    assert code == EXIT_OK
    assert out == ""
    document = json.loads(target.read_text(encoding="utf-8"))
    validate_document(document)
    assert len(document["report"]["members"]) == 15
    code, out, _ = invoke(capsys, "filter", "--input", target, "--s", 2)
    assert code == EXIT_OK
    assert len(out.splitlines()) == 1 + 9


def test_verify_prop1_reports_cd_one(capsys):
    code, out, _ = invoke(capsys, "verify", "prop1", "--r", 3, "--k", 2, "--format", "json")
    assert code == EXIT_OK
    document = json.loads(out)
    validate_document(document)
    assert document["report"]["values"]["cd"] == 1
    assert document["report"]["passed"]


def test_gap_frick_on_prop2_r3_is_violated(capsys, golden_dir):
    code, out, _ = invoke(capsys, "gap", "frick", "--r", 3, "--input", golden(golden_dir, "prop2_r3.txt"))
    assert code == EXIT_FINDING
    assert "Violated" in out


def test_gap_satisfied_exits_zero(capsys, tmp_path):
    source = tmp_path / "c62.txt"
    invoke(capsys, "construct", "complete", "--n", 6, "--k", 2, "--output", source)
    code, out, _ = invoke(capsys, "gap", "frick", "--r", 3, "--input", source, "--format", "json")
    assert code == EXIT_OK
    document = json.loads(out)
    validate_document(document)
    assert document["report"]["verdict"] == "Satisfied"


def test_malformed_input_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("n 2\n5\n", encoding="utf-8")
    code, _, err = invoke(capsys, "chi", "--input", bad)
    assert code == EXIT_ERROR
    assert "line 2" in err


@pytest.mark.parametrize("argv", [
    [],
    ["construct"],
    ["chi"],
    ["construct", "fnr", "--n", "7"],
    ["construct", "fnr", "--n", "0", "--r", "3"],
    ["scan", "--n", "9:4"],
    ["nonsense"],
])
def test_usage_errors_exit_one(capsys, argv):
    assert run(argv) == EXIT_ERROR


def test_missing_file_exits_one(capsys, tmp_path):
    code, _, err = invoke(capsys, "chi", "--input", tmp_path / "absent.txt")
    assert code == EXIT_ERROR
    assert err


def test_domain_error_exits_one(capsys):
    code, _, _ = invoke(capsys, "verify", "afl", "--n", 5, "--k", 2, "--r", 3)
    assert code == EXIT_ERROR


def test_caps_exit_three(capsys, golden_dir):
    code, _, err = invoke(capsys, "defect", "--r", 2, "--input", golden(golden_dir, "prop2_r2.txt"),
                          "--max-defect-size", 1)
    assert code == EXIT_CAP
    assert "max_defect_size" in err
    code, _, _ = invoke(capsys, "kneser", "--r", 2, "--input", golden(golden_dir, "prop2_r3.txt"), "--max-edges", 5)
    assert code == EXIT_CAP


def test_member_cap_exits_three(capsys):
    code, out, err = invoke(capsys, "construct", "complete", "--n", 40, "--k", 20)
    assert code == EXIT_CAP
    assert out == ""
    assert "max_members" in err
    code, _, _ = invoke(capsys, "verify", "afl", "--n", 40, "--k", 20, "--r", 2)
    assert code == EXIT_CAP
    code, _, _ = invoke(capsys, "construct", "complete", "--n", 6, "--k", 3, "--max-members", 19)
    assert code == EXIT_CAP


def test_help_documents_unbounded_defaults(capsys):
    assert run(["defect", "--help"]) == EXIT_OK
    out = " ".join(capsys.readouterr().out.split())
    assert "--max-defect-size" in out
    assert "(default: unbounded)" in out
    assert "(default: unbounded; set one for large inputs)" in out


def test_colorable_exit_codes(capsys, golden_dir):
    c5 = golden(golden_dir, "c5.json")
    code, out, _ = invoke(capsys, "colorable", "--input", c5, "--m", 2)
    assert code == EXIT_FINDING
    assert out == "not 2-colorable\n"
    code, out, _ = invoke(capsys, "colorable", "--input", c5, "--m", 3, "--format", "json")
    assert code == EXIT_OK
    document = json.loads(out)
    validate_document(document)
    assert document["report"]["colorable"]


def test_chi_of_kneser_graph(capsys, tmp_path):
    source = tmp_path / "c52.txt"
    invoke(capsys, "construct", "complete", "--n", 5, "--k", 2, "--output", source)
    code, out, _ = invoke(capsys, "chi", "--input", source, "--kneser", 2)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "chi = 3"


def test_defect_and_refutation(capsys, golden_dir):
    prop2 = golden(golden_dir, "prop2_r2.txt")
    code, out, _ = invoke(capsys, "defect", "--r", 2, "--input", prop2)
    assert code == EXIT_OK
    assert out.splitlines()[:2] == ["cd_2 = 2", "removed (ground): [1, 3]"]
    code, out, _ = invoke(capsys, "defect", "--r", 3, "--input", golden(golden_dir, "prop2_r3.txt"),
                          "--refute", 2, "--format", "json")
    assert code == EXIT_OK
    document = json.loads(out)
    validate_document(document)
    assert document["report"]["total_refuted"] == 121
    code, _, _ = invoke(capsys, "defect", "--r", 2, "--input", prop2, "--refute", 2)
    assert code == EXIT_FINDING


def test_export_cnf_matches_golden(capsys, golden_dir):
    code, out, _ = invoke(capsys, "export-cnf", "--input", golden(golden_dir, "c5.json"), "--m", 2)
    assert code == EXIT_OK
    with open(golden(golden_dir, "c5_m2.cnf"), encoding="utf-8") as f:
        assert out == f.read()


def test_kneser_and_filter_text(capsys, golden_dir):
    code, out, _ = invoke(capsys, "filter", "--input", golden(golden_dir, "prop2_r2.txt"), "--s", 2)
    assert code == EXIT_OK
    assert out == "n 6\n1 3\n1 5\n3 5\n"
    code, out, _ = invoke(capsys, "kneser", "--input", golden(golden_dir, "prop2_r2.txt"), "--r", 2)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "# vertices 9"


def test_verify_subcommands(capsys, golden_dir):
    assert run(["verify", "prop2", "--r", "2"]) == EXIT_OK
    assert run(["verify", "ziegler", "--n", "6", "--k", "2", "--r", "2"]) == EXIT_OK
    assert run(["verify", "schrijver", "--n", "5", "--k", "2"]) == EXIT_OK
    assert run(["verify", "footnote", "--r", "3", "--n-max", "7", "--include-multiples"]) == EXIT_OK
    assert run(["verify", "remark", "--r", "2", "--input", golden(golden_dir, "prop2_r2.txt")]) == EXIT_OK
    capsys.readouterr()


def test_scan_plants_a_counterexample(capsys):
    code, out, _ = invoke(capsys, "scan", "--samples", 4, "--seed", 3, "--n", "4:6", "--members", "1:5",
                          "--plant-fnr", "7:3", "--format", "json")
    assert code == EXIT_FINDING
    document = json.loads(out)
    validate_document(document)
    assert document["report"]["reports"][0]["verdict"] == "Violated"
    assert any(rep["family"] == "F(7,3)" for rep in document["report"]["reports"])


DETERMINISM_MATRIX = [
    ["construct", "prop2", "--r", "2"],
    ["verify", "prop1", "--r", "2", "--k", "2"],
    ["gap", "frick", "--r", "3", "--input", "{golden}/prop2_r3.txt"],
    ["gap", "weak", "--r", "2", "--input", "{golden}/prop2_r2.txt"],
    ["defect", "--r", "2", "--input", "{golden}/prop2_r2.txt"],
    ["chi", "--input", "{golden}/prop2_r2.txt", "--kneser", "2"],
    ["scan", "--samples", "6", "--seed", "42", "--n", "4:7", "--members", "1:6"],
]


@pytest.mark.parametrize("argv", DETERMINISM_MATRIX)
def test_output_is_reproducible_across_threads(capsys, golden_dir, argv):
    argv = [a.format(golden=golden_dir) for a in argv] + ["--format", "json"]
    outputs = []
    codes = []
    for threads in ("1", "1", "4"):
        code, out, _ = invoke(capsys, *argv, "--threads", threads)
        codes.append(code)
        outputs.append(out)
    assert codes[0] == codes[1] == codes[2]
    assert outputs[0] == outputs[1] == outputs[2]
    validate_document(json.loads(outputs[0]))
