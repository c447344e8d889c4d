import io
from pathlib import Path

import pytest

from metalie.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, SessionConfig, run

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_normalize():
    code, out, _ = call("normalize", "[a3,a2,a1]")
    assert code == EXIT_OK
    assert out.strip() == "[a3,a2,a1]: 1*[a3,a1]*a2 - 1*[a2,a1]*a3"
    assert call("normalize", "[a1,a3,a2]")[1].strip() == "[a1,a3,a2]: -1*[a3,a1]*a2"


def test_normalize_machine_format():
    code, out, _ = call("normalize", "--format", "machine", "--gens", "a1,a2", "[a1,a2]")
    assert code == EXIT_OK
    assert out.split() == ["result.[a2,a1]=-1"]
    code, out, _ = call("normalize", "--format", "machine", "--rank", "2", "[a1,a1]")
    assert out.split() == ["result.zero=1"]


def test_mul_in_algebra_file():
    code, out, _ = call("mul", "--algebra", str(SAMPLES / "torsion.alg"), "[a1,a2]", "a3")
    assert code == EXIT_OK and out.strip() == "product: 0"


def test_fitting():
    code, out, _ = call("fitting", str(SAMPLES / "heisenberg.alg"), "a1 + a2", "--format", "machine")
    assert code == EXIT_OK and "verdict=yes" in out.split()
    code, out, _ = call("fitting", str(SAMPLES / "torsion.alg"), "a3")
    assert code == EXIT_OK and "verdict: no" in out


def test_classify():
    code, out, _ = call("classify", str(SAMPLES / "torsion.alg"), "--format", "machine")
    assert code == EXIT_OK
    assert "verdict=not_semidomain" in out.split()
    code, out, _ = call("classify", str(SAMPLES / "free2.alg"))
    assert "verdict: strict_semidomain" in out


def test_product_with_report(tmp_path):
    report = tmp_path / "report.txt"
    code, out, _ = call("product", str(SAMPLES / "free2.alg"), str(SAMPLES / "abelian1.alg"),
                        "--verify-upto", "4", "--report", str(report))
    assert code == EXIT_OK
    assert report.read_text().strip() == out.strip()
    assert "algebra" in out


def test_product_name_clash_is_input_error():
    code, _, err = call("product", str(SAMPLES / "torsion.alg"), str(SAMPLES / "torsion.alg"))
    assert code == EXIT_INPUT and "shared" in err
    code, _, _ = call("product", str(SAMPLES / "torsion.alg"), str(SAMPLES / "torsion.alg"), "--rename")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ("normalize", "[a1,"),
    ("fitting", "/nonexistent.alg", "a1"),
    ("classify", str(SAMPLES / "torsion.alg"), "--bound", "0"),
    ("frobnicate",),
])
def test_input_errors(argv):
    assert call(*argv)[0] == EXIT_INPUT


def test_budget_exhaustion():
    code, _, err = call("classify", str(SAMPLES / "torsion.alg"), "--budget", "1")
    assert code == EXIT_BUDGET and "budget" in err


def test_replay_suite_is_stable():
    first = call("verify-paper", "--format", "machine", "--seed", "3")
    second = call("verify-paper", "--format", "machine", "--seed", "3")
    assert first[0] == EXIT_OK
    assert first == second
    assert all(line.endswith("=pass") for line in first[1].split())
    assert call("verify-paper", "-v") == call("verify-paper", "-v")


def test_session_config_validation():
    with pytest.raises(ValueError):
        SessionConfig("classify", bound=-1)
