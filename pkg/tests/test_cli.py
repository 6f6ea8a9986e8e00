import io
import json
from contextlib import redirect_stdout
from pathlib import Path

from chiralva import serialize
from chiralva.cli import main
from chiralva.equivalence import va_to_chiral
from chiralva.fixtures import a3_va
from chiralva.vertex import bump_structure_constant, tensor_with_ox

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_check_va_a3_four_pass_lines():
    code, out = run_cli("check-va", str(FIXTURES / "a3.json"))
    assert code == 0
    assert out.count("): PASS") == 4
    for label in ("truncation (trunc)", "d-derivative (l-1-0)", "skew-symmetry (skew)", "jacobi (jac-comp)"):
        assert label in out
    assert out.rstrip().endswith("result: PASS")


def test_roundtrip_a3_exact():
    code, out = run_cli("roundtrip", str(FIXTURES / "a3.json"))
    assert code == 0
    assert "roundtrip: EXACT" in out


def test_check_va_mutated_names_skew_witness():
    code, out = run_cli("check-va", str(FIXTURES / "a3_mutated.json"))
    assert code == 1
    skew_line = next(line for line in out.splitlines() if line.startswith("skew-symmetry"))
    assert "FAIL" in skew_line
    assert "u=" in skew_line and "v=" in skew_line and "m=" in skew_line


def test_check_chiral_fixture():
    code, out = run_cli("check-chiral", str(FIXTURES / "a3_chiral.json"))
    assert code == 0
    for label in ("d-module-morphism", "chiral-skew", "chiral-jacobi"):
        assert label in out


def test_compose_diff_zero_and_mutated(tmp_path):
    code, out = run_cli("compose-diff", str(FIXTURES / "a3_chiral.json"), "-1", "-1", "-1", "1", "t", "1")
    assert code == 0
    assert "result: ZERO" in out

    code, out = run_cli("compose-diff", str(FIXTURES / "a3_chiral.json"), "3", "4", "5", "t", "t", "t")
    assert code == 0
    assert out.count("(empty)") == 4

    A = va_to_chiral(bump_structure_constant(tensor_with_ox(a3_va()), 0, -1, 1, 1), checked=False)
    bad = tmp_path / "bad_chiral.json"
    bad.write_text(serialize.dumps(A), encoding="utf-8")
    code, out = run_cli("compose-diff", str(bad), "-1", "-1", "-1", "1", "t", "1")
    assert code == 1
    assert "result: NONZERO" in out
    assert "(k,l)=(0, 0)" in out.split("difference")[1]


def test_delta_suite_default_and_custom():
    code, out = run_cli("delta-suite")
    assert code == 0
    assert "two-term-delta" in out and "three-term-delta" in out
    assert "fundamental-property" in out and "derivative-transport" in out

    code, out = run_cli(
        "delta-suite", "--lhs", "delta(x1/x2) * x2^-1", "--rhs", "x2^-1 * delta(x1/x2)", "--box=-4:4"
    )
    assert code == 0

    code, out = run_cli("delta-suite", "--lhs", "delta(x1/x2)", "--rhs", "0", "--box=-3:3")
    assert code == 1


def test_reports_are_deterministic(tmp_path):
    r1 = tmp_path / "r1.txt"
    r2 = tmp_path / "r2.txt"
    code1, out1 = run_cli("check-va", str(FIXTURES / "a3.json"), "--report", str(r1))
    code2, out2 = run_cli("check-va", str(FIXTURES / "a3.json"), "--report", str(r2))
    assert code1 == code2 == 0
    assert out1 == out2
    assert r1.read_bytes() == r2.read_bytes() == out1.encode()


def test_json_format_report():
    code, out = run_cli("check-va", str(FIXTURES / "a3.json"), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert len(doc["checks"]) == 4


def test_translation_commands_round_trip_files(tmp_path):
    out_chiral = tmp_path / "a3_to_chiral.json"
    code, _ = run_cli("to-chiral", str(FIXTURES / "a3.json"), "--out", str(out_chiral))
    assert code == 0
    assert out_chiral.read_bytes() == (FIXTURES / "a3_chiral.json").read_bytes()

    out_va = tmp_path / "back.json"
    code, _ = run_cli("to-va", str(out_chiral), "--out", str(out_va))
    assert code == 0
    assert out_va.read_bytes() == (FIXTURES / "a3_qz.json").read_bytes()


def test_translation_rejects_mutated_input():
    code, out = run_cli("to-chiral", str(FIXTURES / "a3_mutated.json"))
    assert code == 1
    assert "FAIL" in out


def test_parse_and_contract_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope", encoding="utf-8")
    assert main(["check-va", str(bad)]) == 2
    assert main(["compose-diff", str(FIXTURES / "a3_chiral.json"), "0", "0", "0", "nope", "t", "1"]) == 2
    assert main(["check-va", str(FIXTURES / "a3.json"), "--window=junk"]) == 2
    assert main(["check-chiral", str(FIXTURES / "a3.json")]) == 2


def test_window_override_widens():
    code, out = run_cli("check-va", str(FIXTURES / "a3.json"), "--window=-7:3")
    assert code == 0
    assert "n in [-7..3]" in out
    code, out = run_cli("check-chiral", str(FIXTURES / "a3_chiral.json"), "--window=-6:2")
    assert code == 0
    assert "[-6..2]" in out


def test_module_entry_point():
    import subprocess, sys
    proc = subprocess.run(
        [sys.executable, "-m", "chiralva", "check-va", str(FIXTURES / "a3.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "result: PASS" in proc.stdout
