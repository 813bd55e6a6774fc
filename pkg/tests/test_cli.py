import json
import subprocess
import sys
from pathlib import Path

import pytest

from stablecore.cli import main

SAMPLE = '{"d":6,"rows":[6,6,6,4]}'
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_sample(capsys):
    code, out, _ = run(capsys, "check", "--input", SAMPLE, "--json")
    report = json.loads(out)
    assert code == 0
    assert report["g"] == 4 and report["Gd"]["holds"] and report["analytic_spread"] == 6


def test_check_text_marks_cell(capsys):
    code, out, _ = run(capsys, "check", "--input", SAMPLE)
    assert code == 0 and out.count("##") == 1 and "G_d: yes" in out


def test_check_reports_failing_gd(capsys):
    code, out, _ = run(capsys, "check", "--input", '{"d":4,"rows":[4,3,3]}', "--json")
    report = json.loads(out)
    assert code == 0 and not report["Gd"]["holds"] and report["Gd"]["s"] == 3


def test_generators_input_and_file(tmp_path, capsys):
    gens = ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3"]
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps({"d": 3, "generators": gens}))
    code, out, _ = run(capsys, "check", "--input", str(path), "--json")
    assert code == 0 and json.loads(out)["ideal"]["rows"] == [3, 3]


@pytest.mark.parametrize("payload, code", [
    ('{"d":4,"rows":[3,4]}', 3),
    ('{"d":2,"generators":["x1*x2","x2^2"]}', 3),
    ('{"d":4,"rows":', 2),
    ('{"rows":[1]}', 2),
    ('{"d":3,"generators":["x9"]}', 2),
    ('{"d":4,"rows":[4],"generators":["x1^2"]}', 2),
])
def test_error_exit_codes(capsys, payload, code):
    assert run(capsys, "check", "--input", payload)[0] == code


def test_unknown_flag_is_an_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", "--input", SAMPLE, "--frobnicate"])
    assert info.value.code == 2


def test_max_d_guard(capsys):
    assert run(capsys, "check", "--input", SAMPLE, "--max-d", "5")[0] == 2
    assert run(capsys, "socle", "--d", "9")[0] == 2


def test_core_golden(capsys):
    code, out, _ = run(capsys, "core", "--input", SAMPLE, "--json")
    report = json.loads(out)
    assert code == 0
    assert report["generators"] == (GOLDEN / "sample_core.txt").read_text().split()


def test_core_examples(capsys):
    code, out, _ = run(capsys, "core", "--input", '{"d":2,"rows":[2,2]}', "--json")
    assert json.loads(out)["generators"] == ["x1^3", "x1^2*x2", "x1*x2^2", "x2^3"]
    code, out, _ = run(capsys, "core", "--input", '{"d":3,"rows":[3]}', "--json")
    assert json.loads(out)["provenance"] == "formula-extrapolated"
    assert run(capsys, "core", "--input", '{"d":4,"rows":[4,3,3]}')[0] == 4


def test_no_trim_keeps_ambient_dimension(capsys):
    payload = '{"d":6,"rows":[4,2]}'
    _, out, _ = run(capsys, "check", "--input", payload, "--json")
    assert json.loads(out)["ideal"]["working_d"] == 4
    _, out, _ = run(capsys, "check", "--input", payload, "--json", "--no-trim")
    assert json.loads(out)["ideal"]["working_d"] == 6


def test_reduction_command(capsys):
    code, out, _ = run(capsys, "reduction", "--input", SAMPLE, "--json")
    report = json.loads(out)
    assert code == 0
    assert report["diagonal_reduction"]["generators"][-1] == "x1*x6"
    assert report["reduction"]["reduction_number"] <= 3


def test_socle_and_northcott_commands(capsys):
    code, out, _ = run(capsys, "socle", "--d", "3", "--json")
    assert code == 0 and json.loads(out)["socle"] == ["x1^3"]
    code, out, _ = run(capsys, "northcott", "--d", "4", "--json")
    assert code == 0
    assert run(capsys, "northcott")[0] == 2


def test_algorithm_jsonl(capsys):
    code, out, _ = run(capsys, "algorithm", "--input", '{"d":3,"rows":[3,3]}', "--json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert rows[0]["monomial"] == "x1*x3" and rows[-1]["monomial"] == "x1^2"
    assert [r["index"] for r in rows] == list(range(1, len(rows) + 1))


def test_certify_all_square(capsys):
    code, out, _ = run(capsys, "certify-all", "--input", '{"d":4,"rows":[4,4,4,4]}', "--json")
    report = json.loads(out)
    assert code == 0
    assert report["checks"]["reduction_number"] <= 3
    assert set(report) == {"ideal", "g", "provenance", "seed", "core_generators", "checks"}


def test_certify_all_gate(capsys):
    code, out, err = run(capsys, "certify-all", "--input", '{"d":4,"rows":[4,3,3]}', "--json")
    assert code == 4 and out == "" and "G_d" in err


def test_certify_all_names_failures(monkeypatch, capsys):
    import stablecore.cli as cli

    def broken(*args, **kwargs):
        raise cli.NonMembership(cli.parse_monomial("x1^2", 2))
    monkeypatch.setattr(cli, "certify_Im_in_J", broken)
    code, _, err = run(capsys, "certify-all", "--input", '{"d":2,"rows":[2,2]}')
    assert code == 5 and "Im_in_J" in err


def test_stdin_and_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stablecore", "check", "--input", "-", "--json"],
                          input=SAMPLE, capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["g"] == 4
