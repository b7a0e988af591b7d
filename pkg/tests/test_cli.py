"""End-to-end tests of the command line interface."""

import json
import math

import pytest

from eigencount.cli import main


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


@pytest.fixture
def atom_line(tmp_path):
    # one unit-potential atom at x = 3 sitting on the line
    return write(tmp_path, "atom.json", {"type": "atoms", "points": [[3.0, 0.0, 1.0, 1.0]]})


@pytest.fixture
def square_grid(tmp_path):
    n = 8
    h = 2.0 / n
    return write(
        tmp_path,
        "grid.json",
        {
            "type": "grid",
            "origin": [-1.0, -1.0],
            "cell": [h, h],
            "mass": [[h * h] * n for _ in range(n)],
            "potential": [[1.0] * n for _ in range(n)],
        },
    )


class TestExitCodes:
    def test_ok(self, atom_line, capsys):
        assert main(["norms", "--input", atom_line]) == 0
        out = capsys.readouterr().out
        assert "luxemburg" in out and "weak_l1" in out

    def test_input_error_is_2(self, tmp_path, capsys):
        bad = write(tmp_path, "bad.json", {"type": "atoms", "points": [[0.0, 0.0, -1.0, 1.0]]})
        assert main(["norms", "--input", bad]) == 2
        assert "input error" in capsys.readouterr().err

    def test_unknown_const_is_2(self, atom_line, capsys):
        code = main(["bound-1d", "--input", atom_line, "--theorem", "est1", "--const", "bogus=1"])
        assert code == 2
        err = capsys.readouterr().err
        assert "bogus" in err and "kappa" in err

    def test_bad_alpha_is_2(self, capsys):
        assert main(["spectrum-strip", "--alpha", "nan", "--beta", "0", "--width", "1"]) == 2


class TestBound1D:
    def test_est1_atom_example(self, atom_line, capsys):
        assert main(["bound-1d", "--input", atom_line, "--theorem", "est1"]) == 0
        out = capsys.readouterr().out
        want = 1 + 5.06 * math.sqrt(3.0)
        line = next(l for l in out.splitlines() if l.startswith("bound:"))
        assert float(line.split()[-1]) == pytest.approx(want, rel=1e-12)

    def test_xgenest_kappa_const(self, atom_line):
        assert main(
            ["bound-1d", "--input", atom_line, "--theorem", "xgenest", "--const", "kappa=1.0"]
        ) == 0


class TestSpectrumStrip:
    def test_symmetric_example(self, capsys):
        assert main(["spectrum-strip", "--alpha", "1", "--beta", "-1", "--width", "2"]) == 0
        out = capsys.readouterr().out
        rows = {l.split()[0]: l.split()[-1] for l in out.splitlines() if l.strip()}
        assert float(rows["tau_1"]) == pytest.approx(-1.4392288398906452, abs=1e-9)
        assert float(rows["tau_2"]) == pytest.approx(0.0, abs=1e-9)

    def test_json_output(self, tmp_path):
        out_path = tmp_path / "spec.json"
        assert main(
            ["spectrum-strip", "--alpha", "4", "--beta", "4", "--width", "0.25",
             "--out", str(out_path)]
        ) == 0
        payload = json.loads(out_path.read_text())
        assert payload["lambda_1"] == pytest.approx(-16.0, rel=1e-10)
        # the gap to the next branch exceeds pi^2: the cap applies
        assert payload["lambda_2"] == pytest.approx(-16.0 + math.pi**2, rel=1e-10)


class TestOutputsAndPlots:
    def test_json_deterministic(self, atom_line, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        main(["bound-1d", "--input", atom_line, "--theorem", "est1", "--out", str(p1)])
        main(["bound-1d", "--input", atom_line, "--theorem", "est1", "--out", str(p2)])
        assert p1.read_bytes() == p2.read_bytes()
        payload = json.loads(p1.read_text())
        assert payload["method"] == "est1"
        assert {c["name"] for c in payload["constants"]} == {"coefficient", "threshold"}

    def test_svg_plot_written(self, square_grid, tmp_path):
        p = tmp_path / "terms.svg"
        assert main(
            ["bound-plane", "--input", square_grid, "--theorem", "laptnetrsol",
             "--plot", str(p)]
        ) == 0
        assert b"<svg" in p.read_bytes()[:400]

    def test_partition_roundtrip(self, square_grid, tmp_path):
        out = tmp_path / "part.json"
        assert main(
            ["partition", "--input", square_grid, "--n", "4", "--out", str(out)]
        ) == 0
        payload = json.loads(out.read_text())
        assert len(payload["breaks"]) == 3
        assert payload["breaks"] == sorted(payload["breaks"])
        assert payload["max_piece"] == pytest.approx(max(payload["piece_values"]), rel=1e-15)
        # V = 1 on a symmetric square: quarters project to quarter masses
        assert payload["breaks"][0] == pytest.approx(-0.5, abs=1e-9)
        assert payload["breaks"][2] == pytest.approx(0.5, abs=1e-9)


class TestVerify:
    def test_zero_potential_plane(self, tmp_path, capsys):
        n = 6
        h = 2.0 / n
        path = write(
            tmp_path,
            "zero.json",
            {
                "type": "grid",
                "origin": [-1.0, -1.0],
                "cell": [h, h],
                "mass": [[h * h] * n for _ in range(n)],
                "potential": [[0.0] * n for _ in range(n)],
            },
        )
        assert main(
            ["verify", "--input", path, "--theorem", "laptnetrsol",
             "--trunc", "4", "--h", "0.5"]
        ) == 0
        out = capsys.readouterr().out
        rows = {l.rsplit(None, 1)[0]: l.rsplit(None, 1)[1] for l in out.splitlines() if l.strip()}
        assert float(rows["bound"]) == 1.0
        assert int(rows["oracle count"]) == 0
        assert rows["bound >= count"] == "yes"

    def test_1d_verify_example(self, atom_line, capsys):
        assert main(
            ["verify", "--input", atom_line, "--theorem", "est1",
             "--trunc", "40", "--h", "0.05"]
        ) == 0
        out = capsys.readouterr().out
        rows = {l.rsplit(None, 1)[0]: l.rsplit(None, 1)[1] for l in out.splitlines() if l.strip()}
        assert rows["bound >= count"] == "yes"
        assert int(rows["oracle count"]) >= 1


class TestGest2Guard:
    def test_rejects_robin_walls(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "strip_atoms.json",
            {"type": "atoms", "points": [[0.0, 0.5, 1.0, 1.0]]},
        )
        code = main(
            ["bound-strip", "--input", path, "--theorem", "gest2",
             "--alpha", "1.0", "--beta", "0.0", "--width", "1.0"]
        )
        assert code == 2
        assert "gest2" in capsys.readouterr().err
