import json

import pytest
from gmpy2 import mpq

from niep.cli import main
from niep.matrix import Matrix
from niep.scalars import FLOAT, QComplex
from niep.serialize import dumps, matrix_from_json, matrix_to_json, parse_spectrum

RADO_EXAMPLE = [["0", "5", "0", "0", "1"], ["5", "0", "0", "0", "1"], ["1", "0", "0", "5", "0"], ["1", "0", "5", "0", "0"], ["0", "0", "4", "0", "2"]]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_realize_reproduces_the_rado_matrix(capsys):
    code, out, _ = run(capsys, "realize", "--spectrum", "[6,3,3,-5,-5]", "--criterion", "rado-example", "--backend", "rational")
    assert code == 0
    payload = json.loads(out)
    assert payload["entries"] == RADO_EXAMPLE
    assert payload["certificate"]["verification"]["passed"]


def test_check_lists_verdicts(capsys):
    code, out, _ = run(capsys, "check", "--spectrum", "[3,-1,-1,-1]")
    assert code == 0
    assert "suleimanova: PASS" in out.splitlines()


def test_universal_emits_one_matrix_per_partition(capsys):
    code, out, _ = run(capsys, "universal", "--spectrum", "[5,1,1,1]")
    assert code == 0
    results = json.loads(out)
    assert [r["recovered"][1][1] for r in results] == [[1, 1, 1], [2, 1], [3]]
    assert all(r["matches"] for r in results)


def test_realize_then_verify_round_trip(tmp_path, capsys):
    out_file = tmp_path / "m.json"
    assert main(["realize", "--spectrum", "[5,1,-1,-1,-1]", "--out", str(out_file)]) == 0
    code, out, _ = run(capsys, "verify", "--spectrum", "[5,1,-1,-1,-1]", "--matrix", str(out_file))
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--spectrum", "[5,1,-1,-1,0]", "--matrix", str(out_file))
    assert code == 2 and not json.loads(out)["passed"]


def test_spectrum_from_file(tmp_path, capsys):
    src = tmp_path / "s.json"
    src.write_text('{"lambda": [[6, 0], [-1, 1], [-1, -1]]}')
    code, out, _ = run(capsys, "realize", "--file", str(src))
    assert code == 0
    assert json.loads(out)["certificate"]["verification"]["passed"]


def test_input_errors_exit_1(capsys):
    assert run(capsys, "check", "--spectrum", "oops")[0] == 1
    assert run(capsys, "check", "--spectrum", '{"values": [1]}')[0] == 1
    assert run(capsys, "realize", "--spectrum", "[1, [0, 1]]")[0] == 1


def test_inapplicable_criterion_exits_2(capsys):
    code, _, err = run(capsys, "realize", "--spectrum", "[1,-1,-1]", "--criterion", "suleimanova")
    assert code == 2
    assert "no implemented criterion applies" in err


def test_auto_fallback_is_labeled_as_shifted(capsys):
    code, out, _ = run(capsys, "realize", "--spectrum", "[1,-1,-1]")
    payload = json.loads(out)
    assert "Perron-shifted" in payload["certificate"]["theorem"]
    assert payload["certificate"]["requested_spectrum"] == ["1", "-1", "-1"]


def test_guo_command(capsys):
    code, out, _ = run(capsys, "guo", "--spectrum", "[3,-1,-1,-1]")
    payload = json.loads(out)
    assert code == 0 and payload["bound"] == "3" and payload["lambda_1_meets_bound"]


@pytest.mark.parametrize("command", ["realize", "universal", "check"])
def test_output_is_deterministic(capsys, command):
    argv = [command, "--spectrum", "[4,1,1,-1,-1]"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_matrix_json_round_trip():
    m = Matrix.from_rows([[mpq(1, 3), 0], [2, mpq(-5, 7)]])
    assert matrix_from_json(dumps(matrix_to_json(m))) == m
    f = Matrix.from_rows([[0.1, 0.2], [0.3, 0.4]], FLOAT)
    assert matrix_from_json(dumps(matrix_to_json(f))) == f


def test_parse_spectrum_forms():
    assert parse_spectrum('[1, "-1/2"]') == [1, mpq(-1, 2)]
    assert parse_spectrum('{"lambda": [[2, 0], [-1, 3], [-1, -3]]}') == [2, QComplex(-1, 3), QComplex(-1, -3)]
