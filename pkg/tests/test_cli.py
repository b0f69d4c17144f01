import json
import pytest

from uniserial.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture()
def a5_file(tmp_path):
    path = tmp_path / "a5.json"
    path.write_text(
        '{"degree": 5, "generators": ["(0,1,2,3,4)", "(0,1,2)"]}', encoding="utf-8"
    )
    return str(path)


@pytest.fixture()
def v4_file(tmp_path):
    path = tmp_path / "v4.json"
    path.write_text(
        '{"degree": 4, "generators": ["(0,1)(2,3)", "(0,2)(1,3)"]}', encoding="utf-8"
    )
    return str(path)


class TestAnalyze:
    def test_s4(self, capsys, tmp_path):
        path = tmp_path / "s4.json"
        path.write_text('{"degree": 4, "generators": ["(0,1)", "(0,1,2,3)"]}')
        rc, out, _ = run(capsys, "analyze", "--file", str(path))
        assert rc == 0
        payload = json.loads(out)
        assert payload["order"] == "24"
        assert payload["uniserial"] is True
        assert payload["chief_factors"] == [
            {"type": "C2", "width": 1, "frattini": False},
            {"type": "C3", "width": 1, "frattini": False},
            {"type": "C2", "width": 2, "frattini": False},
        ]

    def test_klein_not_uniserial(self, capsys, v4_file):
        rc, out, _ = run(capsys, "analyze", "--file", v4_file)
        assert rc == 0
        assert json.loads(out)["uniserial"] is False

    def test_malformed_json_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        rc, _, err = run(capsys, "analyze", "--file", str(path))
        assert rc == 2
        assert "cannot read" in err

    def test_missing_file_exits_2(self, capsys):
        rc, _, err = run(capsys, "analyze", "--file", "/nonexistent/g.json")
        assert rc == 2


class TestZetaCommand:
    def test_a5_self(self, capsys, a5_file):
        rc, out, _ = run(capsys, "zeta", "--file", a5_file, "--N", "self", "--s", "2")
        assert rc == 0
        payload = json.loads(out)
        assert payload["value"] == "7/15"
        assert payload["terms"] == [[5, 5], [6, 6], [10, 10]]
        assert "order_form_value" in payload  # differing display reading reported

    def test_deterministic_bytes(self, capsys, a5_file):
        rc1, out1, _ = run(capsys, "zeta", "--file", a5_file, "--s", "2")
        rc2, out2, _ = run(capsys, "zeta", "--file", a5_file, "--s", "2")
        assert rc1 == rc2 == 0 and out1 == out2


class TestMaxsub:
    def test_a5(self, capsys, a5_file):
        rc, out, _ = run(capsys, "maxsub", "--file", a5_file, "--N", "self")
        assert rc == 0
        rows = json.loads(out)
        assert [(r["index"], r["class_length"]) for r in rows] == [(5, 5), (6, 6), (10, 10)]
        assert all(r["contains_N"] is False for r in rows)


class TestGenprob:
    def test_enum(self, capsys, a5_file):
        rc, out, _ = run(capsys, "genprob", "--file", a5_file, "--d", "2", "--method", "enum")
        assert rc == 0
        assert json.loads(out)["value"] == "19/30"

    def test_moebius(self, capsys, a5_file):
        rc, out, _ = run(capsys, "genprob", "--file", a5_file, "--method", "moebius")
        assert rc == 0
        assert json.loads(out)["value"] == "19/30"

    def test_mc_deterministic(self, capsys, a5_file):
        args = ("--seed", "7", "genprob", "--file", a5_file, "--method", "mc",
                "--samples", "4000")
        rc1, out1, _ = run(capsys, *args)
        rc2, out2, _ = run(capsys, *args)
        assert rc1 == rc2 == 0 and out1 == out2
        mean = json.loads(out1)["mean"]
        assert abs(mean - 19 / 30) < 0.05


class TestAlphaCommand:
    def test_cyclic(self, capsys):
        rc, out, _ = run(capsys, "alpha", "C:7")
        assert rc == 0
        payload = json.loads(out)
        assert payload["alpha_exact"] == "7/1"
        assert payload["order"] == "7"

    def test_sporadic(self, capsys):
        rc, out, _ = run(capsys, "alpha", "Sp:M11")
        assert rc == 0
        payload = json.loads(out)
        assert payload["out_order"] == 1
        lo, hi = payload["alpha_interval"]
        assert 1.98 <= lo <= hi <= 1.99

    def test_bad_descriptor_exits_2(self, capsys):
        rc, _, err = run(capsys, "alpha", "X:9")
        assert rc == 2


class TestConstruct:
    def test_wreath(self, capsys, tmp_path, a5_file):
        c2 = tmp_path / "c2.json"
        c2.write_text('{"degree": 2, "generators": ["(0,1)"]}')
        rc, out, _ = run(capsys, "construct", "wreath", "--left", a5_file, "--right", str(c2))
        assert rc == 0
        payload = json.loads(out)
        assert payload["degree"] == 10 and payload["order"] == "7200"

    def test_affine(self, capsys, tmp_path):
        mats = tmp_path / "mats.json"
        mats.write_text(json.dumps({"p": 2, "n": 2, "matrices": [[0, 1, 1, 0], [1, 1, 0, 1]]}))
        rc, out, _ = run(capsys, "construct", "affine", "--p", "2", "--matrices", str(mats))
        assert rc == 0
        assert json.loads(out)["order"] == "24"

    def test_permmod(self, capsys):
        rc, out, _ = run(capsys, "construct", "permmod", "--n", "5", "--p", "5")
        assert rc == 0
        payload = json.loads(out)
        assert payload["sum_zero_dim"] == 4 and payload["constants_dim"] == 1

    def test_paper_example_affine_equality_bad_prime(self, capsys):
        rc, _, err = run(capsys, "construct", "paper-example", "affine-equality", "--p", "5")
        assert rc == 2
        assert "mod 8" in err


class TestPaperChecks:
    def test_selected_pass(self, capsys):
        rc, out, _ = run(capsys, "--format", "text", "paper-checks", "--select", "p2-a5")
        assert rc == 0
        assert "pass" in out and "p2-a5" in out

    def test_unknown_check_exits_2(self, capsys):
        rc, _, err = run(capsys, "paper-checks", "--select", "no-such-check")
        assert rc == 2

    def test_report_files_written(self, capsys, tmp_path):
        out_dir = tmp_path / "report"
        rc, out, _ = run(
            capsys, "paper-checks", "--select", "p2-a5,frattini-invariance",
            "--output-dir", str(out_dir),
        )
        assert rc == 0
        assert (out_dir / "ledger.csv").exists()
        assert (out_dir / "ledger.json").exists()
        ledger = json.loads((out_dir / "ledger.json").read_text())
        assert all(row["passed"] for row in ledger)

    def test_figures_rendered(self, capsys, tmp_path):
        out_dir = tmp_path / "figures"
        rc, _, _ = run(
            capsys, "paper-checks", "--select", "zeta-alpha-bound,alpha-battery",
            "--output-dir", str(out_dir),
        )
        assert rc == 0
        assert (out_dir / "zeta_bounds.png").stat().st_size > 0
        assert (out_dir / "alpha_battery.png").stat().st_size > 0


class TestOutputFile:
    def test_output_flag(self, capsys, a5_file, tmp_path):
        target = tmp_path / "out.json"
        rc, out, _ = run(
            capsys, "--output", str(target), "zeta", "--file", a5_file, "--s", "2"
        )
        assert rc == 0 and out == ""
        assert json.loads(target.read_text())["value"] == "7/15"
