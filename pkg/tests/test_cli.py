import json
import subprocess
import sys
from fractions import Fraction

import pytest

from nonfree.cli import main
from nonfree.roots import sqrt_bracket
from nonfree.search import RECORD_KEYS, Target, family_records, format_decimal, parse_range, reverify_jsonl, solve5


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestPhr:
    def test_length3(self, capsys):
        code, out, _ = run(capsys, "phr", "1", "54", "1")
        assert code == 0
        assert out.splitlines() == ["54*q - 52", "[-52, 54]"]

    def test_length5(self, capsys):
        code, out, _ = run(capsys, "phr", "1", "-1", "1", "-1", "2")
        assert out.splitlines()[0] == "2*q^2 - 8*q + 6"

    def test_zero_entry(self, capsys):
        code, _, err = run(capsys, "phr", "1", "0", "1")
        assert code == 2 and "nonzero" in err


class TestCheckCertify:
    def test_check_true(self, capsys):
        assert run(capsys, "check", "1", "54", "1", "--q", "26/27")[:2] == (0, "true\n")

    def test_check_false(self, capsys):
        assert run(capsys, "check", "1", "54", "1", "--q", "1/3")[:2] == (1, "false\n")

    def test_check_zero_q(self, capsys):
        assert run(capsys, "check", "1", "54", "1", "--q", "0")[0] == 2

    def test_certify(self, capsys):
        code, out, _ = run(capsys, "certify", "1", "-4", "1", "-1", "1", "-1", "--q", "5/2")
        assert code == 0
        obj = json.loads(out)
        assert obj["identity_verified"] and obj["nontrivial_verified"]
        assert obj["q"] == "5/2" and obj["kind"] == "half-relation"

    def test_certify_not_half_relation(self, capsys):
        assert run(capsys, "certify", "1", "54", "1", "--q", "1/2")[0] == 1


class TestOnestep:
    def test_rst(self, capsys):
        code, out, _ = run(capsys, "onestep", "3", "2", "3")
        obj = json.loads(out)
        assert code == 0 and obj["q"] == "1/3" and obj["identity_verified"]

    def test_search(self, capsys):
        code, out, _ = run(capsys, "onestep", "--q", "2", "--bound", "2")
        assert code == 0 and json.loads(out)["tuple"] == [1, 1, 1]

    def test_search_none(self, capsys):
        assert run(capsys, "onestep", "--q", "7/2", "--bound", "3")[:2] == (1, "none\n")

    def test_usage(self, capsys):
        assert run(capsys, "onestep", "1", "2")[0] == 2


class TestSolve5:
    def test_alt4_slot5(self, capsys, tmp_path):
        out_path = tmp_path / "alt4.jsonl"
        code, _, _ = run(capsys, "solve5", "1", "-1", "1", "-1", "--slot", "5", "--xbound", "1000", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        recs = [json.loads(l) for l in lines]
        assert all(list(r) == list(RECORD_KEYS) for r in recs)
        qs = {r["q"] for r in recs if r["tuple"][4] > 0}
        assert {"3", "8/3", "21/8", "55/21"} <= qs
        assert [r["tuple"][4] for r in recs] == sorted(r["tuple"][4] for r in recs)
        assert all(reverify_jsonl(out_path.read_text()))

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "solve5", "1", "1", "1", "1", "--xbound", "0")
        assert code == 0 and out == ""

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "solve5", "1", "-1", "1", "-1", "--slot", "5", "--xbound", "20", "--format", "csv")
        rows = out.splitlines()
        assert rows[0] == ",".join(RECORD_KEYS)
        assert "1,1 -1 1 -1 2,3,16,true,true," in rows

    def test_target_distance(self, capsys):
        code, out, _ = run(capsys, "solve5", "1", "-1", "1", "-1", "--slot", "5", "--xbound", "20", "--target", "3")
        recs = [json.loads(l) for l in out.splitlines()]
        hit = [r for r in recs if r["q"] == "3"]
        assert hit[0]["distance"] == "0.000000000000"

    def test_wrong_arity(self, capsys):
        assert run(capsys, "solve5", "1", "2", "3")[0] == 2


class TestOther:
    def test_families_pell(self, capsys):
        code, out, _ = run(capsys, "families", "pell", "--n", "2..5")
        lines = out.splitlines()
        assert code == 0 and len(lines) == 5
        assert lines[1].split()[:2] == ["n=2", "5/2"]
        assert lines[2].split()[:2] == ["n=3", "12/5"]
        assert all(l.endswith("true") for l in lines[1:])

    def test_families_geometric(self, capsys):
        code, out, _ = run(capsys, "families", "block", "--k", "3", "--s", "1", "--t", "3")
        assert "26/27" in out and "1 54 1" in out

    def test_families_bad(self, capsys):
        assert run(capsys, "families", "block", "--k", "1", "--s", "1", "--t", "1")[0] == 2

    def test_limits(self, capsys):
        code, out, _ = run(capsys, "limits", "3", "-2", "3")
        assert out.splitlines()[0] == "-(a3+a5)/(a3 a4 a5) = 1/3"

    def test_septic(self, capsys):
        code, out, _ = run(capsys, "septic", "--N", "10000")
        obj = json.loads(out)
        assert Fraction(obj["lo"]) < 3 + Fraction(1, 10**6) and abs(Fraction(obj["hi"]) - 3) < Fraction(1, 100)

    def test_hunt_pell_decreasing(self, capsys):
        # 12 printed decimals resolve the distances up to about n = 12
        code, out, _ = run(capsys, "hunt", "--source", "pell", "--n", "2..12", "--top", "100",
                           "--target", "2.414213562373,2.414213562374")
        recs = [json.loads(l) for l in out.splitlines()]
        by_n = sorted(recs, key=lambda r: abs(r["tuple"][1]))
        dists = [Fraction(r["distance"]) for r in by_n]
        assert all(a > b for a, b in zip(dists, dists[1:]))

    def test_pell_distances_exact(self):
        lo, hi = sqrt_bracket(2, 50)
        target = Target(1 + lo, 1 + hi)
        recs = family_records("pell", range(2, 31), target)
        assert all(a.distance > b.distance for a, b in zip(recs, recs[1:]))

    def test_hunt_exact_target_at_head(self, capsys):
        code, out, _ = run(capsys, "hunt", "--f1", "1", "--f2=-1", "--f3", "1", "--f4=-1", "--slot", "5",
                           "--xbound", "50", "--target", "8/3")
        head = json.loads(out.splitlines()[0])
        assert head["q"] == "8/3" and head["distance"] == "0.000000000000"

    def test_verify_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "r.jsonl"
        run(capsys, "solve5", "1", "-1", "1", "-1", "--slot", "5", "--xbound", "100", "--out", str(path))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
        tampered = path.read_text().replace('"q": "3"', '"q": "5"')
        path.write_text(tampered)
        assert run(capsys, "verify", str(path))[0] == 1


class TestHelpers:
    def test_parse_range(self):
        assert parse_range("-2..2") == [-2, -1, 1, 2]
        assert parse_range("3,1..2,3") == [3, 1, 2]

    def test_target(self):
        t = Target.parse("1/3")
        assert t.lo == t.hi == Fraction(1, 3)
        b = Target.parse("2.6180339887,2.6180339888")
        assert b.hi - b.lo == Fraction(1, 10**10)

    def test_format_decimal(self):
        assert format_decimal(Fraction(1, 3)) == "0.333333333333"
        assert format_decimal(Fraction(2, 3)) == "0.666666666667"
        assert format_decimal(Fraction(-5, 2), 2) == "-2.50"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nonfree", "check", "1", "54", "1", "--q", "26/27"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "true\n"


def test_solve5_thread_invariant():
    a = solve5((1, -1, 1, -1), 5, 3000, 2, threads=1)
    b = solve5((1, -1, 1, -1), 5, 3000, 2, threads=8)
    assert a == b
