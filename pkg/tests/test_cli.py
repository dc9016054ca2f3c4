import json
import shutil
import subprocess

import pytest

from kuechle_lab.cli import main
from kuechle_lab.pencils import standard_pencil
from kuechle_lab.scalars import QQ


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def std5(tmp_path):
    path = tmp_path / "std5.json"
    path.write_text(json.dumps(standard_pencil([1, 2, 3, 4, 5], QQ).to_json()))
    return str(path)


def test_pencil_analyze_file(capsys, std5):
    code, out, _ = run(capsys, "pencil", "analyze", "--input", std5)
    assert code == 0
    assert out["verdict"] == "smooth" and len(out["roots"]) == 5


def test_pencil_standard_form(capsys):
    code, out, _ = run(capsys, "pencil", "standard-form", "--standard", "1,2,3")
    assert code == 0 and out["a_values"] == ["1", "2", "3"]


def test_pencil_standard_form_singular_is_invalid(capsys):
    code, out, err = run(capsys, "pencil", "standard-form", "--standard", "1,1,2")
    assert code == 2 and out is None and "singular" in err


def test_pencil_enumerate(capsys):
    code, out, _ = run(capsys, "pencil", "enumerate", "--standard", "1,2", "--q", "3")
    assert code == 0 and out["count"] == 16
    code, out, _ = run(capsys, "pencil", "enumerate", "--standard", "1,2", "--q", "3", "--list")
    assert len(out["lagrangians"]) == 16


def test_enumerate_needs_prime_field(capsys, std5):
    code, _, err = run(capsys, "pencil", "enumerate", "--input", std5)
    assert code == 2


def test_d3(capsys):
    code, out, _ = run(capsys, "d3", "counts", "--q", "3", "--seed", "0")
    assert code == 0
    assert out["count_X"] == 64 + 3 * out["count_Z"]


def test_b4(capsys):
    code, out, _ = run(capsys, "b4", "lines", "--q", "2")
    assert out == {"q": 2, "lines_on_quadric": 105, "flag_divisor_count": 105, "equal": True}


def test_trivector_commands(capsys, tmp_path):
    assert run(capsys, "trivector", "stabilizer", "--form", "trace")[1]["dim"] == 8
    assert run(capsys, "trivector", "stabilizer", "--form", "zero")[1]["dim"] == 64
    assert run(capsys, "trivector", "stabilizer", "--form", "kuchle", "--p", "7")[1]["dim"] == 8
    path = tmp_path / "form.json"
    path.write_text(json.dumps({"dim": 8, "terms": [{"ijk": [1, 2, 3], "c": "1"}]}))
    assert run(capsys, "trivector", "stabilizer", "--form", str(path))[1]["dim"] == 48
    code, out, _ = run(capsys, "trivector", "invariant-dim")
    assert out["dim"] == 1 and out["proportional_to_trace_form"]
    code, out, _ = run(capsys, "trivector", "isotropic", "--form", "trace", "--subspace", "symmetric")
    assert out == {"isotropic": True, "subspace_dim": 5}


def test_trivector_char_3_rejected(capsys):
    code, _, err = run(capsys, "trivector", "stabilizer", "--form", "trace", "--p", "3")
    assert code == 2


def test_cq_commands(capsys, tmp_path):
    C = "[[1,0,0],[0,1,0],[0,0,0]]"
    Cp = "[[0,0,0],[0,0,0],[0,0,1]]"
    assert run(capsys, "cq", "classify", "--C", C, "--Cp", Cp)[1]["orbit"] == "Y1"
    point = tmp_path / "pt.json"
    point.write_text(json.dumps({"C": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "Cp": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code, g, _ = run(capsys, "cq", "g", "--point", str(point))
    assert g["dim"] == 3
    code, ph, _ = run(capsys, "cq", "phi", "--point", str(point))
    assert ph["dim"] == 5 and ph["isotropic"]
    code, cnt, _ = run(capsys, "cq", "count", "--q", "2")
    assert cnt["direct_count"] == 105
    code, ver, _ = run(capsys, "cq", "verify", "--budget", "5", "--seed", "0", "--p", "7")
    assert code == 0 and ver["passed"]


def test_cq_not_on_y(capsys):
    code, _, err = run(capsys, "cq", "classify", "--C", "[[1,0,0],[0,1,0],[0,0,1]]", "--Cp", "[[1,0,0],[0,2,0],[0,0,1]]")
    assert code == 2 and "scalar" in err


def test_chow_commands(capsys):
    code, out, _ = run(capsys, "chow", "degeneracy", "--c1", "4h", "--c2", "6h^2", "--c3", "4h^3", "--ring", "P3")
    assert out == {"ring": "P3", "discriminant": "8h", "corank2": "80h^3"}
    for name, total in [("b9", 48), ("d3", 16), ("c7", 6), ("b4", 4)]:
        assert run(capsys, "chow", "ledger", name)[1]["total"] == total


def test_corrupted_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"A": [[0, 1], [-1, 0]], "B": ')
    code, out, err = run(capsys, "pencil", "analyze", "--input", str(bad))
    assert code == 2 and out is None and "invalid JSON" in err
    code, _, err = run(capsys, "pencil", "analyze", "--input", str(tmp_path / "missing.json"))
    assert code == 2


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["pencil", "frobnicate"])
    assert exc.value.code == 2


def test_output_flag(capsys, tmp_path):
    dest = tmp_path / "out.json"
    assert main(["chow", "ledger", "b9", "--output", str(dest)]) == 0
    assert json.loads(dest.read_text())["total"] == 48
    assert capsys.readouterr().out == ""


def test_verify_all_budget_zero(capsys, tmp_path):
    dest = tmp_path / "r.json"
    assert main(["verify-all", "--seed", "0", "--budget", "0", "--output", str(dest)]) == 0
    report = json.loads(dest.read_text())
    assert report["status"] == "pass"
    names = [c["name"] for c in report["checks"]]
    assert "pfaffian_squared_equals_det" not in names
    assert all(c["anchor"] for c in report["checks"])


@pytest.mark.skipif(shutil.which("kuechle-lab") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["kuechle-lab", "chow", "ledger", "b9"], capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["total"] == 48
