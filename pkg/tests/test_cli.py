import json
import subprocess
import sys

import pytest

from leftstable.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_extremal_disc(capsys):
    assert run(capsys, "extremal-disc", "--n", "48", "--x", "13") == (0, "0,11-13,22-26,33-48\n", "")


def test_hcont(capsys):
    assert run(capsys, "hcont", "--x", "1/2", "--d", "1")[:2] == (0, "1/6\n")


def test_hdisc_json(capsys):
    code, out, _ = run(capsys, "hdisc", "--n", "48", "--x", "12", "--format", "json")
    assert code == 0 and json.loads(out) == {"N": "48", "X": "12", "K": "5", "H": "3"}


def test_emit_curve_discrete(capsys):
    code, out, _ = run(capsys, "emit-curve", "--n", "48")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,h" and len(lines) == 48
    assert "13,3" in lines


def test_emit_curve_continuous(capsys):
    code, out, _ = run(capsys, "emit-curve", "--d", "1", "--grid-denominator", "60")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 61
    assert "1/2,1/6" in lines and "1,1/2" in lines


def test_emit_curve_bad_grid(capsys):
    assert run(capsys, "emit-curve", "--d", "1", "--grid-denominator", "0")[0] == 2


def test_sumset_negative_translated(capsys):
    code, out, err = run(capsys, "sumset", "--a=-2,0-1", "--b", "3")
    assert (code, out) == (0, "1,3-4\n") and "translated" in err


def test_stable_fail_exit(capsys):
    code, out, _ = run(capsys, "stable", "--a", "0,1,3")
    assert code == 1 and "WITNESS=(1,1,2)" in out


def test_stable_continuous(capsys):
    code, out, _ = run(capsys, "stable", "--continuous", "--a", '{"intervals": [["0","0"],["1/2","1"]]}')
    assert code == 0 and "STABLE=true" in out


def test_ruzsa_json_file(capsys, tmp_path):
    p = tmp_path / "a.json"
    p.write_text('{"intervals": [["0", "1"]]}')
    code, out, _ = run(capsys, "ruzsa", "--a", str(p), "--b", "[0,1/2]")
    assert code == 0 and "RESULT=PASS" in out


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--a", "0,2,4-6,8")
    assert code == 0 and "A1=0,2" in out and "RUN=(4,6)" in out


def test_envelope(capsys):
    code, out, _ = run(capsys, "envelope", "--a",
                       "[0,0],[11/30,3/5],[11/15,9/4],[7/3,5/2],[8/3,11/4],[3,3]")
    assert code == 0 and "PASSING_B=(1)" in out


@pytest.mark.parametrize("argv", [
    ["bogus"], ["hdisc", "--n", "48"], ["hdisc", "--n", "48", "--x", "3/2"],
    ["hdisc", "--n", "48", "--x", "60"], ["sumset", "--a", "3-1"], ["hcont", "--x", "1/0"],
    ["census", "--n", "40"], ["stable", "--a", "1,2"], ["hdisc", "--n", "48", "--x", "3", "--zzz"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_census_csv(capsys):
    code, out, err = run(capsys, "census", "--n", "9", "--jobs", "2")
    assert out.splitlines()[0] == "n,x,bound,achieved_max,num_extremal,total_enumerated"
    assert "9,4,2,3,1,7" in out.splitlines()
    assert code == 1 and "n=9 x=4" in err


def test_census_deterministic_across_jobs(capsys):
    a = run(capsys, "census", "--n", "18")[1]
    b = run(capsys, "census", "--n", "18", "--jobs", "4")[1]
    assert a == b


def test_verify_paper_lines(capsys):
    code, out, _ = run(capsys, "verify-paper")
    lines = out.splitlines()
    assert lines[-1].startswith("RESULT=")
    assert all(line.split()[0] in ("PASS", "FAIL") for line in lines[:-1])
    assert "PASS extremal_disc_48_13" in lines


def test_verify_paper_exit_zero(capsys):
    """Every bundled fixture passes. Fails on census_sharp (sharpness is false for n <= 24)."""
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0, out


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "leftstable.cli", "hdisc", "--n", "48", "--x", "13"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "3\n"
