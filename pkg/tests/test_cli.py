import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from qgauss import cli
from qgauss.report import CheckReport

GOLDEN = Path(__file__).parent / "data" / "ck_table_8.csv"


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), stdout=buf)
    return code, buf.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line]


# table-ck ----------------------------------------------------------------

def test_table_csv_matches_golden_file():
    code, out = run("table-ck", "--max-i", "8", "--format", "csv")
    assert code == 0
    assert out == GOLDEN.read_text()


def test_table_single_row():
    code, out = run("table-ck", "--max-i", "1", "--format", "csv")
    assert (code, out) == (0, "1\n")


@pytest.mark.parametrize("bad", ["0", "65", "-3"])
def test_table_bad_bounds(bad):
    assert run("table-ck", "--max-i", bad)[0] == 2


def test_table_text_and_json():
    code, out = run("table-ck", "--max-i", "3")
    assert code == 0 and out.split() == ["1", "3", "1", "6", "6", "1"]
    code, out = run("table-ck", "--max-i", "3", "--format", "json")
    assert json.loads(out)["rows"] == [["1"], ["3", "1"], ["6", "6", "1"]]


# check-identity ----------------------------------------------------------

def test_unknown_identity():
    assert run("check-identity", "nosuch")[0] == 2


def test_lemma6_command():
    code, out = run("check-identity", "lemma6", "--i", "1..12", "--k", "1..i", "--format", "json",
                    "--workers", "1")
    rows = json_lines(out)
    assert code == 0
    assert len(rows) == 12 * 13 // 2
    assert all(r["status"] == "pass" and r["check"] == "lemma6" for r in rows)


def test_lemma8_command():
    code, out = run("check-identity", "lemma8", "--a", "1..6", "--b", "a+1..8", "--k", "0..a",
                    "--format", "json", "--workers", "1")
    expected = sum(a + 1 for a in range(1, 7) for b in range(a + 1, 9))
    assert code == 0 and len(json_lines(out)) == expected


@pytest.mark.parametrize("name", sorted(cli.IDENTITIES))
def test_every_identity_passes_on_a_small_range(name):
    spec = cli.IDENTITIES[name]
    argv = ["check-identity", name, "--format", "json", "--workers", "1"]
    small = {"X": "0..3", "Y": "0..3", "a": "1..3", "i": "1..3", "n": "2..8"}
    for p in spec.params:
        if p in small:
            argv += [f"--{p}", small[p]]
    code, out = run(*argv)
    assert code == 0, out
    assert json_lines(out)


def test_identity_parallel_order_matches_serial():
    args = ("check-identity", "theorem3", "--a", "1..4", "--i", "1..4", "--format", "json")
    _, serial = run(*args, "--workers", "1")
    _, parallel = run(*args, "--workers", "3")
    key = lambda text: [r["params"] for r in json_lines(text)]
    assert key(serial) == key(parallel)
    assert [r["params"] for r in json_lines(serial)] == [
        {"a": a, "i": i} for a in range(1, 5) for i in range(1, 5)]


def test_empty_range_is_usage_error():
    assert run("check-identity", "lemma1", "--a", "3..1")[0] == 2


@pytest.mark.parametrize("text", ["1..", "..3", "a+", "1..2*i", "x..y..z"])
def test_malformed_range(text):
    assert run("check-identity", "lemma1", "--a", text)[0] == 2


def test_unbound_name_is_usage_error():
    assert run("check-identity", "lemma1", "--a", "1..k")[0] == 2


def test_eval_bound_grammar():
    env = {"i": 5, "a": 2}
    assert cli.eval_bound("i", env) == 5
    assert cli.eval_bound("i + 1", env) == 6
    assert cli.eval_bound("a+i-3", env) == 4
    assert cli.eval_bound("-a", env) == -2
    assert cli.eval_bound("7", env) == 7
    for bad in ["", "i+", "i i", "2*i", "i++"]:
        with pytest.raises(cli.UsageError):
            cli.eval_bound(bad, env)


def test_dependent_iteration():
    ranges = {"i": cli.RangeSpec.parse("1..3"), "k": cli.RangeSpec.parse("1..i")}
    got = [(p["i"], p["k"]) for p in cli.iterate(("i", "k"), ranges)]
    assert got == [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
    assert str(cli.RangeSpec.parse("a+1..8")) == "a+1..8"
    assert list(cli.RangeSpec.parse("4").values({})) == [4]


# exit codes --------------------------------------------------------------

class _Fake:
    __name__ = "fake"

    def __init__(self, status):
        self.status = status

    def __call__(self, **params):
        if self.status == "raise":
            raise RuntimeError("boom")
        if params.get("a") == 2 and params.get("i") == 2:
            from qgauss.polyalg import IntPoly
            return CheckReport("fake", params, "fail", witness=IntPoly([0, -1]), failing_index=1)
        return CheckReport("fake", params, "pass")


def _seed(monkeypatch, status):
    spec = cli.IDENTITIES["lemma1"]
    monkeypatch.setitem(cli.IDENTITIES, "lemma1", cli.IdentitySpec(spec.params, spec.defaults, _Fake(status)))


def test_seeded_failure_exits_1(monkeypatch):
    _seed(monkeypatch, "fail")
    code, out = run("check-identity", "lemma1", "--a", "1..3", "--i", "1..3", "--workers", "1")
    assert code == 1
    assert "FAIL" in out and "witness: -q" in out


def test_seeded_error_exits_3(monkeypatch):
    _seed(monkeypatch, "raise")
    code, out = run("check-identity", "lemma1", "--a", "1..2", "--i", "1..2", "--workers", "1",
                    "--format", "json")
    assert code == 3
    assert {r["status"] for r in json_lines(out)} == {"error"}


def test_formula_disagreement_is_a_failure(monkeypatch):
    from qgauss import identities as ids

    def broken(i, k):
        raise ids.FormMismatch("c_k(i)", {"i": i, "k": k}, [5, 5, 6])

    monkeypatch.setattr(ids, "ck_coefficient", broken)
    code, out = run("check-identity", "ck", "--i", "2", "--k", "1", "--format", "json", "--workers", "1")
    (row,) = json_lines(out)
    assert code == 1 and row["status"] == "fail" and row["witness"] == ["0", "0", "1"]


def test_internal_error_exit_3(monkeypatch):
    def boom(args, out):
        raise RuntimeError("boom")
    monkeypatch.setitem(cli.COMMANDS, "table-ck", boom)
    assert run("table-ck")[0] == 3


def test_bad_workers():
    assert run("table-ck", "--workers", "0")[0] == 2


# JSON --------------------------------------------------------------------

def test_json_round_trip_is_byte_identical():
    _, out = run("check-conjecture", "2", "--max-n", "30", "--format", "json", "--workers", "1")
    lines = out.splitlines()
    assert lines
    for line in lines:
        assert CheckReport.from_json(line).to_json() == line
        row = json.loads(line)
        assert list(row) == ["check", "params", "status", "witness", "failing_index", "wall_time", "detail"]


def test_witness_big_integers_are_strings(monkeypatch):
    from qgauss.polyalg import IntPoly
    big = 2 ** 70 + 1
    rep = CheckReport("x", {"n": 1}, "fail", witness=IntPoly([0, big]), failing_index=1)
    line = rep.to_json()
    assert json.loads(line)["witness"] == ["0", str(big)]
    assert CheckReport.from_json(line).witness == IntPoly([0, big])


def test_csv_report_output():
    code, out = run("wz", "q1", "--a", "1..2", "--i", "1..2", "--format", "csv", "--workers", "1")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("check,params,status")
    assert len(lines) == 5 and lines[1].startswith("wz-q1,a=1;i=1,pass")


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "t.csv"
    code, out = run("table-ck", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == GOLDEN.read_text()


# conjectures -------------------------------------------------------------

def test_conjecture1_full_scan():
    code, out = run("check-conjecture", "1", "--max-n", "64", "--format", "json")
    rows = json_lines(out)
    assert code == 0
    assert len(rows) == sum(1 for _ in __import__("qgauss.verify").verify.enumerate_quadruples(64))
    assert all(r["status"] == "pass" for r in rows)


def test_conjecture3_theorem_regime():
    code, out = run("check-conjecture", "3", "--beta", "2", "--a", "1..8", "--b", "a+1..9",
                    "--format", "json", "--workers", "1")
    assert code == 0 and len(json_lines(out)) == 36


def test_conjecture4_small():
    code, _ = run("check-conjecture", "4", "--a", "0..4", "--b", "a+1..6", "--workers", "1")
    assert code == 0


def test_conjecture_bad_max_n():
    assert run("check-conjecture", "1", "--max-n", "0")[0] == 2
    assert run("check-conjecture", "1", "--max-n", "10001")[0] == 2
    assert run("check-conjecture", "5")[0] == 2


@pytest.mark.parametrize("which, extra, stop", [
    ("2", ["--max-n", "40"], 18),
    ("4", ["--a", "0..5", "--b", "a+1..7"], 2),
])
def test_checkpoint_resume_covers_remaining(tmp_path, which, extra, stop):
    ck = str(tmp_path / "scan.json")
    base = ["check-conjecture", which, *extra, "--format", "json", "--workers", "1"]
    _, full = run(*base)
    full_params = [json.dumps(r["params"]) for r in json_lines(full)]

    code, first = run(*base, "--checkpoint", ck, "--stop-after", str(stop))
    assert code == 0
    state = json.loads(Path(ck).read_text())
    assert state["last_completed"] == stop
    code, second = run(*base, "--checkpoint", ck)
    assert code == 0

    a = [json.dumps(r["params"]) for r in json_lines(first)]
    b = [json.dumps(r["params"]) for r in json_lines(second)]
    assert a and b
    assert not set(a) & set(b)
    assert a + b == full_params

    # a finished scan resumes to nothing
    code, third = run(*base, "--checkpoint", ck)
    assert code == 0 and third == ""


def test_checkpoint_for_other_scan_is_rejected(tmp_path):
    ck = str(tmp_path / "scan.json")
    run("check-conjecture", "1", "--max-n", "10", "--checkpoint", ck, "--workers", "1")
    assert run("check-conjecture", "1", "--max-n", "12", "--checkpoint", ck)[0] == 2
    assert run("check-conjecture", "2", "--max-n", "10", "--checkpoint", ck)[0] == 2
    assert not Path(ck + ".tmp").exists()


# wz ----------------------------------------------------------------------

def test_wz_q1_command():
    code, out = run("wz", "q1", "--a", "1..6", "--i", "1..6", "--format", "json")
    assert code == 0 and len(json_lines(out)) == 36


def test_wz_q_command():
    code, out = run("wz", "q", "--a", "1..4", "--i", "1..4", "--format", "json")
    rows = json_lines(out)
    assert code == 0 and len(rows) == 16 and {r["check"] for r in rows} == {"wz-q"}


@pytest.mark.parametrize("argv", [["wz", "q", "--a", "0", "--i", "1..3"],
                                  ["wz", "q1", "--i", "0"],
                                  ["wz", "qq"]])
def test_wz_usage_errors(argv):
    assert run(*argv)[0] == 2


# process-level -----------------------------------------------------------

def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qgauss", "table-ck", "--max-i", "2", "--format", "csv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n3,1\n"
    proc = subprocess.run([sys.executable, "-m", "qgauss", "check-identity", "nosuch"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "unknown identity" in proc.stderr


def test_selftest_command():
    code, out = run("selftest")
    assert code == 0
    assert len(out.splitlines()) == 11 and all(l.startswith("PASS") for l in out.splitlines())
