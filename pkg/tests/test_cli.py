"""Command-line front end: formats, exit codes, caches, budget handling."""

import json

import pytest

from nonavg.cli import main

S3_17 = [0, 1, 3, 4, 9, 10, 12, 13, 27, 28, 30, 31, 36, 37, 39, 40, 81]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_plain(self, capsys):
        code, out, _ = run(capsys, "generate", "--tuple", "1,1", "--rule", "distinct", "--max-terms", "17")
        assert code == 0
        assert [int(line) for line in out.split()] == S3_17

    def test_zero_terms(self, capsys):
        code, out, _ = run(capsys, "generate", "--tuple", "1,1", "--max-terms", "0")
        assert code == 0 and out == ""

    def test_csv(self, capsys):
        code, out, _ = run(
            capsys, "generate", "--tuple", "1,1,1", "--rule", "distinct",
            "--max-value", "60", "--format", "csv",
        )
        assert code == 0
        values = [int(v) for v in out.strip().split(",")]
        assert values == [0, 1, 2, 3, 4, 12, 13, 14, 15, 16, 48, 49, 50, 51, 52, 60]
        assert len(values) == 16

    def test_csv_header(self, capsys):
        code, out, _ = run(
            capsys, "generate", "--tuple", "1,1", "--max-terms", "2", "--format", "csv", "--header",
        )
        assert code == 0 and out == "term\n0,1\n"

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "generate", "--tuple", "1,1", "--max-terms", "8", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload == {
            "tuple": "1,1",
            "rule": "distinct",
            "frontier": 13,
            "terms": [0, 1, 3, 4, 9, 10, 12, 13],
        }

    def test_malformed_tuple(self, capsys):
        code, _, err = run(capsys, "generate", "--tuple", "1,x", "--max-terms", "5")
        assert code == 1 and err

    def test_missing_caps(self, capsys):
        code, _, err = run(capsys, "generate", "--tuple", "1,1")
        assert code == 1

    def test_budget_exhaustion_flushes_partial(self, capsys, monkeypatch):
        monkeypatch.setenv("NONAVG_NODE_BUDGET", "4")
        code, out, err = run(capsys, "generate", "--tuple", "1,1", "--max-terms", "17")
        assert code == 2
        assert "budget" in err
        assert out.splitlines()[0] == "0"  # partial output flushed

    def test_cache_resume_byte_identical(self, capsys, tmp_path):
        cache = str(tmp_path / "s3.cache")
        # uninterrupted run
        code, full, _ = run(capsys, "generate", "--tuple", "1,1", "--max-terms", "17")
        assert code == 0
        # interrupted: a short run first, then resume with the real caps
        run(capsys, "generate", "--tuple", "1,1", "--max-terms", "6", "--cache", cache)
        code, resumed, _ = run(capsys, "generate", "--tuple", "1,1", "--max-terms", "17", "--cache", cache)
        assert code == 0
        assert resumed == full
        header = open(cache).readline()
        assert header == "# tuple=1,1 rule=distinct frontier=81\n"

    def test_cache_mismatch_regenerates(self, capsys, tmp_path):
        cache = str(tmp_path / "seq.cache")
        run(capsys, "generate", "--tuple", "1,1", "--max-terms", "6", "--cache", cache)
        code, out, _ = run(capsys, "generate", "--tuple", "1,1,1", "--max-terms", "6", "--cache", cache)
        assert code == 0
        assert [int(v) for v in out.split()] == [0, 1, 2, 3, 4, 12]


class TestDiscover:
    def test_known_row(self, capsys):
        code, out, _ = run(capsys, "discover", "--tuple", "1,1,2")
        assert code == 0
        payload = json.loads(out)
        assert payload["found"] is True
        assert payload["c"] == 16
        assert payload["R"] == [0, 1, 2, 3, 4]
        assert payload["overall"] is True
        assert payload["closed_form"] == "c=16 base=5 R=0,1,2,3,4"

    def test_invalid_tuple(self, capsys):
        code, _, err = run(capsys, "discover", "--tuple", "1,1,3")
        assert code == 1 and "not a valid" in err

    def test_bigger_row(self, capsys):
        code, out, _ = run(capsys, "discover", "--tuple", "1,1,1,1")
        payload = json.loads(out)
        assert code == 0 and payload["c"] == 122 and len(payload["R"]) == 12

    def test_caps_give_no_result_marker(self, capsys):
        code, out, _ = run(capsys, "discover", "--tuple", "1,1,1", "--max-frontier", "5")
        assert code == 2
        payload = json.loads(out)
        assert payload["found"] is False and payload["max_frontier"] == 5


class TestVerify:
    def test_table1_single_m(self, capsys):
        code, out, _ = run(capsys, "verify", "table1", "--m", "6")
        assert code == 0
        assert "PASS family prefix m=6" in out
        assert "FAIL" not in out

    def test_table2_row(self, capsys):
        code, out, _ = run(capsys, "verify", "table2", "--rows", "1,1,1")
        assert code == 0 and "PASS catalog row 1,1,1" in out

    def test_table2_multiple_rows(self, capsys):
        code, out, _ = run(capsys, "verify", "table2", "--rows", "1,1,2;1,1,2,4")
        assert code == 0
        assert out.count("PASS") == 2

    def test_props(self, capsys):
        code, out, _ = run(capsys, "verify", "props", "--tuple", "1,1", "--n", "4096")
        assert code == 0
        assert "PASS popcount residue law n<4096" in out
        assert "PASS bit-parity sequence law n<4096" in out


class TestBounds:
    def test_tuple_report(self, capsys):
        code, out, _ = run(capsys, "bounds", "--tuple", "1,1", "--n", "81")
        assert code == 0
        payload = json.loads(out)
        assert payload["exact"] == 16
        assert payload["lower"] == pytest.approx(8.0)
        assert payload["upper"] == pytest.approx(32.0)

    def test_cf_report(self, capsys):
        code, out, _ = run(capsys, "bounds", "--cf", "c=12 base=4 R=0,1,2,3,4", "--n", "48")
        assert code == 0
        assert json.loads(out)["exact"] == 10

    def test_scientific_n(self, capsys):
        code, out, _ = run(capsys, "bounds", "--section4", "--n", "1e10")
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 10 ** 10
        assert payload["matches"]["f"] == ["base5"]

    def test_missing_subject(self, capsys):
        code, _, err = run(capsys, "bounds", "--n", "10")
        assert code == 1
