import json
import math

import numpy as np
import pytest

from lightningpoly import cli
from lightningpoly.approximant import (
    build_lp,
    eval_approximant,
    load_approximant,
)
from lightningpoly.core import PrototypeSpec, make_sector
from lightningpoly.quadrature import closed_form_I1

SQUARE2 = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]


def write_square(tmp_path):
    path = str(tmp_path / "square.json")
    with open(path, "w") as fh:
        json.dump(SQUARE2, fh)
    return path


def strip_wall_ms(csv_text: str) -> list[str]:
    return [",".join(line.split(",")[:-1])
            for line in csv_text.strip().splitlines()]


class TestApprox:
    def test_emit_load_eval_roundtrip(self, tmp_path, capsys):
        path = str(tmp_path / "approx.json")
        assert cli.run(["approx", "--alpha", "0.5", "--beta", "0.5",
                        "--n1", "9", "--emit", path]) == 0
        capsys.readouterr()
        assert cli.run(["approx", "--load", path,
                        "--eval", "0.3,0.1"]) == 0
        out = capsys.readouterr().out
        line = next(l for l in out.splitlines() if l.startswith("eval"))
        got = complex(*map(float, line.split("-> ")[1].split(",")))
        expect = eval_approximant(load_approximant(path), complex(0.3, 0.1))
        assert got == expect

    def test_build_matches_library(self, tmp_path):
        path = str(tmp_path / "approx.json")
        assert cli.run(["approx", "--alpha", "0.5", "--beta", "0.5",
                        "--n1", "9", "--emit", path]) == 0
        direct = build_lp(PrototypeSpec(kind="pow", alpha=0.5),
                          make_sector(0.5), "opt", 9)
        loaded = load_approximant(path)
        z = np.array([0.2 + 0.1j, 0.7 - 0.2j])
        np.testing.assert_array_equal(eval_approximant(loaded, z),
                                      eval_approximant(direct, z))

    def test_eval_at_pole_is_numerical_failure(self, capsys):
        # The outermost pole sits exactly at -C = -radius.
        assert cli.run(["approx", "--alpha", "0.5", "--n1", "9",
                        "--eval=-1,0"]) == 3
        assert "numerical failure" in capsys.readouterr().err


class TestSweep:
    def test_csv_decreasing_and_deterministic(self, tmp_path, capsys):
        argv = ["sweep", "--alpha", "0.5", "--beta", "0", "--sigma", "opt",
                "--n1", "9,16,25"]
        out_path = str(tmp_path / "sweep.csv")
        assert cli.run(argv + ["--out", out_path]) == 0
        stdout_text = capsys.readouterr().out
        with open(out_path) as fh:
            file_text = fh.read()
        assert stdout_text == file_text

        lines = file_text.strip().splitlines()
        assert len(lines) == 4
        idx = lines[0].split(",").index("sup_err")
        errs = [float(l.split(",")[idx]) for l in lines[1:]]
        assert errs == sorted(errs, reverse=True)

        assert cli.run(argv) == 0
        rerun_text = capsys.readouterr().out
        assert strip_wall_ms(rerun_text) == strip_wall_ms(file_text)

    def test_fit_report(self, tmp_path, capsys):
        report_path = str(tmp_path / "fit.json")
        assert cli.run(["sweep", "--alpha", "0.5", "--beta", "0",
                        "--n1", "9,16,25,36",
                        "--fit-report", report_path]) == 0
        capsys.readouterr()
        with open(report_path) as fh:
            report = json.load(fh)
        assert report["regime"] == "opt"
        assert report["pass"] is True
        assert report["predicted_slope"] == pytest.approx(-math.pi, rel=1e-12)


class TestSigmaCompare:
    def test_ordering_holds(self, capsys):
        assert cli.run(["sigma-compare", "--alpha", "0.5", "--beta", "0",
                        "--n1", "9,16,25"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["ordering_holds"] is True
        errs = {e["sigma"]: e["sup_err"] for e in report["errors_at_star"]}
        assert len(errs) == 3
        s_opt = report["sigma_opt"]
        assert errs[s_opt] == min(errs.values())


class TestTrapz:
    def test_closed_form_column(self, capsys):
        assert cli.run(["trapz", "--h", "1,0.5"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        header = lines[0].split(",")
        rows = [dict(zip(header, l.split(","))) for l in lines[1:]]
        for row in rows:
            h = float(row["h"])
            assert float(row["closed_form"]) == closed_form_I1(h)
            assert float(row["closed_form"]) == pytest.approx(
                math.pi / math.tanh(math.pi / h), rel=1e-15)
            assert abs(float(row["engine_minus_closed"])) < 1e-12
            lattice = float(row["lattice_minus_integral"])
            assert abs(lattice) <= float(row["poisson_bound"])


class TestFourier:
    def test_runge_slope(self, capsys):
        assert cli.run(["fourier", "--fn", "runge"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["pass"] is True
        assert report["reference"] == pytest.approx(-2.0 * math.pi)
        assert report["rel_dev"] < 0.05


class TestLaplaceCommands:
    def test_laplace_square(self, tmp_path, capsys):
        poly = write_square(tmp_path)
        sol_path = str(tmp_path / "solution.json")
        profile_path = str(tmp_path / "profile.csv")
        assert cli.run(["laplace", "--polygon", poly, "--n1", "12",
                        "--solution", sol_path,
                        "--profile", profile_path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["boundary_error"] < 1e-5
        assert report["refined_error"] < 10.0 * report["boundary_error"]
        with open(sol_path) as fh:
            sol_doc = json.load(fh)
        assert sol_doc["N1_per_corner"] == 12
        with open(profile_path) as fh:
            assert fh.readline().strip() == "arclength,abs_error"

    def test_laplace_inline_polygon(self, tmp_path, capsys):
        poly = write_square(tmp_path)
        assert cli.run(["laplace", "--polygon", poly, "--n1", "8"]) == 0
        from_file = json.loads(capsys.readouterr().out)
        inline = "[[-1,-1],[1,-1],[1,1],[-1,1]]"
        assert cli.run(["laplace", "--polygon", inline, "--n1", "8"]) == 0
        from_inline = json.loads(capsys.readouterr().out)
        assert from_inline == from_file

    def test_inline_polygon_bad_json(self, capsys):
        assert cli.run(["laplace", "--polygon", "[[0,0],[1,0]"]) == 2
        assert "error" in capsys.readouterr().err

    def test_conformal_square(self, tmp_path, capsys):
        poly = write_square(tmp_path)
        csv_path = str(tmp_path / "images.csv")
        assert cli.run(["conformal", "--polygon", poly, "--n1", "12",
                        "--n-boundary", "64", "--csv", csv_path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["arg_monotone"] is True
        assert report["modulus_deviation"] < 1e-5
        assert report["winding"] == pytest.approx(2.0 * math.pi, abs=1e-4)
        assert len(report["corner_images"]) == 4
        with open(csv_path) as fh:
            lines = fh.read().strip().splitlines()
        assert lines[0] == "z_re,z_im,f_re,f_im"
        assert len(lines) == 65
        f = np.array([complex(float(l.split(",")[2]), float(l.split(",")[3]))
                      for l in lines[1:]])
        np.testing.assert_allclose(np.abs(f), 1.0, atol=1e-5)


class TestExitCodes:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            cli.run(["frobnicate"])
        assert info.value.code == 2

    def test_bad_choice(self):
        with pytest.raises(SystemExit) as info:
            cli.run(["approx", "--mode", "fast"])
        assert info.value.code == 2

    def test_missing_polygon_file(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.json")
        assert cli.run(["laplace", "--polygon", missing]) == 2
        assert "error" in capsys.readouterr().err

    def test_bad_alpha(self, capsys):
        assert cli.run(["approx", "--alpha", "-1", "--n1", "9"]) == 2
        assert "error" in capsys.readouterr().err

    def test_bad_polygon_contents(self, tmp_path, capsys):
        path = str(tmp_path / "bad.json")
        with open(path, "w") as fh:
            fh.write("not json")
        assert cli.run(["laplace", "--polygon", path]) == 2


class TestHelpers:
    def test_parse_complex_forms(self):
        assert cli._parse_complex("0.5,-0.25") == complex(0.5, -0.25)
        assert cli._parse_complex("1+2j") == complex(1.0, 2.0)
        assert cli._parse_complex("1-0.5i") == complex(1.0, -0.5)

    def test_parse_sigma_forms(self):
        from lightningpoly.approximant import sigma_opt
        assert cli._parse_sigma("2.5", 0.5, 0.0) == 2.5
        assert cli._parse_sigma("opt", 0.5, 0.0) == sigma_opt(0.5, 0.0)
        assert (cli._parse_sigma("1.5opt", 0.5, 0.0)
                == 1.5 * sigma_opt(0.5, 0.0))
