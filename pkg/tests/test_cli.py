import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from tatecft.cli import emit_report, fmt_complex, main, parse_report, parse_s
from tatecft.duality import CASES, CheckResult
from tatecft.errors import DomainError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_symbol(capsys):
    assert run(capsys, "symbol", "--kronecker", "-D", "5", "-n", "13") == (0, "-1\n", "")
    assert run(capsys, "symbol", "--legendre", "-D", "4", "-n", "7")[:2] == (0, "1\n")


def test_lfunction_pi_over_four(capsys):
    code, out, _ = run(capsys, "lfunction", "--disc", "-4", "--s", "1")
    assert code == 0 and out.startswith("0.7853981634")
    code, out, _ = run(capsys, "lfunction", "--disc", "1", "--s", "2", "--completed")
    assert out.strip() == "0.5235987756"


def test_sduality_verify_small(capsys):
    code, out, _ = run(capsys, "sduality", "verify", "--pmax", "100")
    assert code == 0
    assert out.splitlines()[-1].startswith("ALL PASS (")


def test_sduality_fault_exit_one(capsys):
    code, out, _ = run(capsys, "sduality", "verify", "--pmax", "30", "--inject-fault", "5,13")
    assert code == 1
    fails = [line for line in out.splitlines() if line.endswith("FAIL")]
    assert fails and all(set(line.split()[1:3]) == {"5", "13"} for line in fails)


def test_sduality_case_filter(capsys):
    code, out, _ = run(capsys, "--json", "sduality", "verify", "--pmax", "50", "--case", "E")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and {r["case"] for r in rows[:-1]} == {"E"}
    assert rows[-1]["summary"]["failed"] == 0


def test_transform_and_amplitude(capsys):
    assert run(capsys, "sduality", "transform", "--wilson", "13:1", "--thooft-d", "5")[1] == "wilson 5:1 thooft-d 13\n"
    assert run(capsys, "amplitude", "--wilson", "13:1", "--thooft-d", "5")[1] == "-1\n"
    code, _, err = run(capsys, "amplitude", "--wilson", "5:1", "--thooft-d", "5")
    assert code == 2 and "coexist" in err


def test_funceq_and_fourier(capsys):
    code, out, _ = run(capsys, "funceq", "--disc", "-3", "--s", "0.4")
    assert code == 0 and out.endswith("OK\n")
    code, out, _ = run(capsys, "fourier-check", "--a", "1/2")
    assert code == 0 and " prefactor 2 " in out


def test_fields_commands(capsys):
    assert run(capsys, "classnumber", "--disc", "-23")[1] == "3\n"
    assert run(capsys, "blocks", "--disc", "-23")[1] == "3\n"
    assert run(capsys, "quadext", "--d", "3")[1] == "d 3 D 12 ramified 2:2,3:1\n"
    assert run(capsys, "classnumber", "--disc", "5")[0] == 2


def test_hecke_commands(capsys):
    assert run(capsys, "hecke-eval", "--disc", "5", "--idele", "real=13;13=13")[1] == "-1\n"
    assert run(capsys, "hecke-eval", "--disc", "5", "--idele", "real=5;5=5")[0] == 2
    assert run(capsys, "hecke-sweep", "--disc", "8", "--rmax", "1000")[0] == 0


def test_idele_command(capsys):
    code, out, _ = run(capsys, "idele", "real=13;13=13", "--power", "-1")
    assert code == 0 and "norm 1" in out and "valuations 13:-1" in out


def test_zeta_commands(capsys):
    assert run(capsys, "zeta", "local", "--p", "2", "--s", "2")[1] == "1.333333333\n"
    assert run(capsys, "zeta", "real", "--s", "1")[1] == "1\n"
    code, out, _ = run(capsys, "zeta", "global", "--disc", "1", "--s", "2", "--levels", "3:1")
    assert code == 0 and float(out) == pytest.approx(3.141592653589793 / 54)
    assert run(capsys, "zeta", "local", "--p", "2", "--chi", "0", "--s", "2")[0] == 2


def test_kummer_commands(capsys):
    code, out, _ = run(capsys, "kummer", "failure", "--q", "5")
    assert code == 0 and out == "q 5 disc_exp_v 4 mod3 1 obstruction PRESENT\n"
    assert run(capsys, "kummer", "failure", "--q", "17")[0] == 1
    assert run(capsys, "kummer", "failure", "--q", "17", "--expect", "absent")[0] == 0
    assert run(capsys, "kummer", "conductor", "--q", "5")[1] == "q 5 w 2 f_v 2 disc_exp_v 4 tame 5:2\n"
    code, out, _ = run(capsys, "kummer", "cubic-check", "--count", "10", "--seed", "3")
    assert code == 0 and out == "ALL PASS (10 pairs, seed 3)\n"
    assert run(capsys, "--seed", "3", "kummer", "cubic-check", "--count", "10")[1] == out


def test_usage_and_domain_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "symbol", "-D", "5", "-n", "13", "--bogus")[0] == 2
    code, _, err = run(capsys, "lfunction", "--disc", "1", "--s", "1")
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "lfunction", "--disc", "6", "--s", "2")[0] == 2
    assert run(capsys, "funceq", "--disc", "5", "--s", "x")[0] == 2


def test_reproducible_output(capsys):
    argv = ["--json", "sduality", "verify", "--pmax", "40"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.txt"
    code, out, _ = run(capsys, "--out", str(path), "sduality", "verify", "--pmax", "20")
    assert code == 0 and path.read_text() == out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tatecft", "symbol", "-D", "-4", "-n", "13"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"


def test_parse_s_and_format():
    assert parse_s("0.5,2") == 0.5 + 2j
    assert parse_s("3") == 3
    with pytest.raises(DomainError):
        parse_s("1,2,3")
    assert fmt_complex(0.5 - 2j) == "0.5-2j"
    assert fmt_complex(1 / 3) == "0.3333333333"


def test_empty_report():
    for mode in ("human", "json"):
        text = emit_report([], mode)
        assert len(text.splitlines()) == 1
        checks, summary = parse_report(text, mode)
        assert checks == []
    assert emit_report([], "human").startswith("ALL PASS (0 checks")


def test_single_failing_check(capsys):
    bad = [CheckResult("A", 5, 13, -1, 1)]
    text = emit_report(bad, "human")
    assert text.splitlines()[0].endswith("FAIL") and text.splitlines()[-1].startswith("FAILED 1 of 1")


checks = st.builds(
    CheckResult,
    st.sampled_from(CASES),
    st.integers(2, 10**4),
    st.integers(2, 10**4),
    st.sampled_from([-1, 1]),
    st.sampled_from([-1, 1]),
)


@settings(max_examples=20)
@given(st.lists(checks, max_size=30), st.sampled_from(["human", "json"]))
def test_report_round_trip(results, mode):
    parsed, summary = parse_report(emit_report(results, mode), mode)
    assert parsed == results
    if mode == "json":
        assert summary["total"] == len(results)
        assert summary["failed"] == sum(not r.ok for r in results)
