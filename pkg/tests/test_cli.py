import json

import pytest

from frobsig.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_matrix_worked_example(capsys):
    code, out, _ = run(capsys, "matrix", "--f", "x1^2+x1*x2", "--p", "3", "--e", "1")
    assert code == 0
    data = json.loads(out)
    assert data["rows"] == data["cols"] == 9
    assert ["0", "1", "x1"] == [str(v) for v in data["entries"][0]]
    assert [8, 6, "1"] == data["entries"][-1]


def test_matrix_identity_with_n_flag(capsys):
    code, out, _ = run(capsys, "matrix", "--f", "1", "--p", "3", "--e", "1", "--n", "1")
    assert code == 0
    assert json.loads(out)["entries"] == [[0, 0, "1"], [1, 1, "1"], [2, 2, "1"]]


def test_matrix_power_flag_equals_explicit_power(capsys):
    _, out1, _ = run(
        capsys, "matrix", "--f", "x1", "--p", "3", "--e", "2", "--power", "4"
    )
    _, out2, _ = run(capsys, "matrix", "--f", "x1^4", "--p", "3", "--e", "2")
    assert out1 == out2


def test_matrix_csv_format(capsys):
    code, out, _ = run(
        capsys, "matrix", "--f", "x1^2", "--p", "3", "--e", "1", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines()[0] == "row,col,entry"


def test_matrix_deterministic(capsys):
    args = ("matrix", "--f", "x1^2+x2", "--p", "3", "--e", "1")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_fsignature_closed_uv(capsys):
    code, out, _ = run(capsys, "fsignature", "--type", "uv", "--dvec", "2,1")
    assert code == 0
    assert json.loads(out)["closed_form"] == "5/12"


def test_fsignature_closed_z2(capsys):
    code, out, _ = run(capsys, "fsignature", "--type", "z2", "--dvec", "1,1")
    assert code == 0
    assert json.loads(out)["closed_form"] == "1/2"


def test_fsignature_empirical(capsys):
    code, out, _ = run(
        capsys, "fsignature", "--type", "uv", "--f", "x1^2", "--p", "5", "--emax", "3"
    )
    assert code == 0
    data = json.loads(out)
    assert data["empirical"][0] == {"e": 1, "s": "13/25"}
    assert data["closed_form"] == "1/2"


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--dvec", "2", "--p", "3", "--e", "1")
    assert code == 0
    data = json.loads(out)
    assert data["free_rank"] == 5
    assert data["summands"] == [{"c": [1], "multiplicity": 4}]


def test_freerank_z2(capsys):
    code, out, _ = run(
        capsys, "freerank", "--type", "z2", "--f", "x1^3", "--p", "3", "--e", "1"
    )
    assert code == 0
    assert json.loads(out)["free_rank"] == 0


def test_freerank_uv(capsys):
    code, out, _ = run(
        capsys, "freerank", "--type", "uv", "--f", "x1^2", "--p", "3", "--e", "1"
    )
    assert code == 0
    assert json.loads(out)["free_rank"] == 5


def test_verify(capsys):
    code, out, _ = run(
        capsys, "verify", "--f", "x1^2", "--p", "3", "--e", "1", "--k", "1"
    )
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_validation_exit_code(capsys):
    code, out, err = run(capsys, "matrix", "--f", "x1 +", "--p", "3", "--e", "1")
    assert code == 2
    assert out == "" and "error" in err
    code, _, _ = run(capsys, "matrix", "--f", "x1", "--p", "4", "--e", "1")
    assert code == 2
    code, _, _ = run(capsys, "freerank", "--type", "z2", "--f", "x1", "--p", "2", "--e", "1")
    assert code == 2


def test_resource_exit_code(capsys):
    code, _, err = run(capsys, "matrix", "--f", "x1", "--p", "3", "--e", "9")
    assert code == 3
    assert "bound" in err


def test_max_size_flag(capsys):
    code, _, _ = run(
        capsys,
        "matrix", "--f", "x1", "--p", "3", "--e", "2", "--max-size", "10",
    )
    assert code == 3


def test_missing_required_flag(capsys):
    code, _, err = run(capsys, "fsignature", "--dvec", "2,1")
    assert code == 2
    code, _, _ = run(capsys, "decompose", "--p", "3", "--e", "1")
    assert code == 2


def test_bad_dvec(capsys):
    code, _, _ = run(capsys, "decompose", "--dvec", "2,x", "--p", "3", "--e", "1")
    assert code == 2
    code, _, _ = run(capsys, "decompose", "--dvec", "0", "--p", "3", "--e", "1")
    assert code == 2
