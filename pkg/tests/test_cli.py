import json
import subprocess
import sys
from pathlib import Path

import pytest

from covarray import are_equivalent, is_covering, parse_ca, read_ca
from covarray.cli import main
from covarray.constructions import fixed_matrix

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


class TestVerify:
    def test_ten_by_five(self, capsys):
        code, out, _ = run(capsys, "verify", "--strength", "3", str(GOLDEN / "CA10x5.ca"))
        assert code == 0 and "covering" in out

    def test_missing_witness(self, capsys):
        code, out, _ = run(capsys, "verify", "-t", "3", str(GOLDEN / "A.ca"))
        assert code == 1
        assert "not covering" in out and "miss pattern" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--json", "verify", "-t", "3", str(GOLDEN / "A.ca"))
        (rec,) = records(out)
        assert code == 1 and rec["record"] == "verify" and rec["covering"] is False
        assert len(rec["columns"]) == 3 and len(rec["pattern"]) == 3


class TestConstructAndCanon:
    @pytest.mark.parametrize("argv,t", [
        (["standard", "--m", "7"], 2), (["johnson-entringer", "--n", "6"], 4),
        (["hadamard"], 3), (["fixed", "--name", "B2"], 2),
    ])
    def test_construct(self, capsys, argv, t):
        code, out, _ = run(capsys, "construct", *argv)
        assert code == 0 and is_covering(parse_ca(out), t)

    def test_construct_to_file(self, capsys, tmp_path):
        path = tmp_path / "h.ca"
        code, out, _ = run(capsys, "construct", "hadamard", "-o", str(path))
        assert code == 0 and out == "" and read_ca(str(path)).shape == (12, 11)

    def test_canon_fixed_point_and_cert(self, capsys, tmp_path):
        src = str(GOLDEN / "B1.ca")
        cert = tmp_path / "ops.txt"
        code, once, _ = run(capsys, "canon", src, "--cert", str(cert))
        assert code == 0 and cert.read_text()
        p = tmp_path / "c.ca"
        p.write_text(once)
        _, twice, _ = run(capsys, "canon", str(p))
        assert once == twice
        assert are_equivalent(parse_ca(once), fixed_matrix("B1"))

    def test_pipe_round_trip(self):
        cmd = [sys.executable, "-m", "covarray"]
        a = subprocess.run(cmd + ["construct", "standard", "--m", "6"], capture_output=True, text=True, check=True)
        b = subprocess.run(cmd + ["canon"], input=a.stdout, capture_output=True, text=True, check=True)
        c = subprocess.run(cmd + ["canon", "-"], input=b.stdout, capture_output=True, text=True, check=True)
        assert b.stdout == c.stdout


class TestEquivNormalize:
    def test_equiv(self, capsys):
        code, out, _ = run(capsys, "equiv", str(GOLDEN / "A.ca"), str(GOLDEN / "B1.ca"))
        assert code == 0 and out.strip() == "equivalent"
        code, out, _ = run(capsys, "equiv", str(GOLDEN / "A.ca"), str(GOLDEN / "D.ca"))
        assert code == 1 and out.strip() == "inequivalent"

    def test_normalize(self, capsys, tmp_path):
        p = tmp_path / "x.ca"
        p.write_text("6 3 2\n111\n100\n010\n001\n010\n001\n")
        assert is_covering(read_ca(str(p)), 2)
        code, out, _ = run(capsys, "normalize", str(p))
        assert code == 0 and parse_ca(out).weights() == [3, 3, 3]
        code, out, _ = run(capsys, "normalize", str(p), "--target", "3")
        assert code == 0 and parse_ca(out).weights() == [3, 3, 3]
        code, out, _ = run(capsys, "normalize", str(p), "--except", "1")
        assert code == 0 and parse_ca(out) == read_ca(str(p))

    def test_normalize_rejects(self, capsys):
        code, _, err = run(capsys, "normalize", str(GOLDEN / "A.ca"))
        assert code == 2 and "PreconditionViolated" in err


class TestBoundsTable:
    def test_bounds(self, capsys):
        code, out, _ = run(capsys, "--json", "bounds", "--t", "5", "--n", "13")
        recs = records(out)
        assert code == 0
        assert {(r["rule"], r["value"]) for r in recs} >= {("roux", 48), ("table", 49)}

    def test_table(self, capsys):
        code, out, _ = run(capsys, "table", "--max-n", "12")
        assert code == 0
        line = next(x for x in out.splitlines() if x.startswith("CAN(4,12,2)"))
        assert "=" in line and "24" in line


class TestProofs:
    @pytest.mark.parametrize("name", ["24x12-unique", "48x13-nonexistent", "14x16-nonexistent"])
    def test_prove(self, capsys, name):
        code, out, _ = run(capsys, "prove", name)
        assert code == 0 and out.startswith(name)
        code2, out2, _ = run(capsys, "classify", "prove", name)
        def stable(text):
            return [x for x in text.splitlines() if "seconds" not in x]

        assert code2 == code and stable(out2) == stable(out)

    def test_classify(self, capsys, tmp_path):
        d = tmp_path / "reps"
        code, out, _ = run(capsys, "classify", "--m", "6", "--t", "2", "--n", "6", "--out-dir", str(d))
        assert code == 0 and "count=4" in out
        files = sorted(d.glob("*.ca"))
        assert len(files) == 4 and all(is_covering(read_ca(str(f)), 2) for f in files)

    def test_classify_json(self, capsys):
        code, out, _ = run(capsys, "--json", "classify", "--m", "12", "--t", "3", "--n", "11", "--count-only")
        (rec,) = records(out)
        assert code == 0 and rec["count"] == 1 and rec["params"] == [12, 3, 11, 2]

    def test_budget_exit(self, capsys, tmp_path):
        ck = tmp_path / "ck.json"
        code, _, err = run(capsys, "classify", "--m", "6", "--t", "2", "--n", "7", "--budget", "1",
                           "--checkpoint", str(ck))
        assert code == 3 and str(ck) in err and ck.exists()
        code, out, _ = run(capsys, "classify", "--m", "6", "--t", "2", "--n", "7", "--checkpoint", str(ck),
                           "--count-only")
        assert code == 0 and "count=3" in out


class TestReproduce:
    @pytest.mark.parametrize("target", ["table1", "thm54", "thm56", "thm58", "thm59", "lemma45", "lemma46",
                                        "cor52-range"])
    def test_match(self, capsys, target):
        code, out, _ = run(capsys, "reproduce", target)
        assert code == 0 and out.startswith(f"{target}: match")

    def test_mismatch_exits_one(self, capsys, monkeypatch):
        from covarray import cli

        monkeypatch.setitem(cli.REPRODUCERS, "table1", lambda: ([4, 3, 1, 1, 2], [4, 3, 1, 1, 1]))
        code, out, _ = run(capsys, "reproduce", "table1")
        assert code == 1 and "MISMATCH" in out and "expected=" in out


@pytest.mark.parametrize("argv,code", [
    ([], 2),
    (["nosuch"], 2),
    (["verify", "x.ca"], 2),
    (["verify", "-t", "2", "/nonexistent.ca"], 2),
    (["verify", "-t", "11", str(GOLDEN / "A.ca")], 2),
    (["construct", "standard"], 2),
    (["construct", "standard", "--m", "3"], 2),
    (["construct", "fixed", "--name", "Q"], 2),
    (["bounds", "--t", "2"], 2),
    (["classify"], 2),
    (["classify", "prove", "nope"], 2),
    (["classify", "--m", "4", "--t", "1", "--n", "2"], 2),
    (["prove", "nope"], 2),
    (["reproduce", "table9"], 2),
    (["--seed", "1", "table"], 2),
    (["verify", "--bogus", "-t", "2", str(GOLDEN / "A.ca")], 2),
    (["normalize", str(GOLDEN / "D.ca"), "--target", "3", "--except", "1"], 2),
    (["--help"], 0),
    (["table"], 0),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    if code:
        assert err


def test_bad_file_content(capsys, tmp_path):
    p = tmp_path / "bad.ca"
    p.write_text("2 2 2\n01\n")
    code, out, err = run(capsys, "verify", "-t", "1", str(p))
    assert code == 2 and out == "" and "ParseError" in err


@pytest.mark.parametrize("exc", ["inconsistency", "crash"])
def test_internal_errors_exit_three(capsys, monkeypatch, exc):
    from covarray import cli
    from covarray.errors import InternalInconsistency

    def boom(a, out):
        raise InternalInconsistency("x") if exc == "inconsistency" else RuntimeError("x")

    monkeypatch.setattr(cli, "cmd_table", boom)
    code, out, err = run(capsys, "table")
    assert code == 3 and out == "" and "internal error" in err
