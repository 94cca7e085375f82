import subprocess
import sys

import numpy as np
import pytest

from vppsim import read_csv
from vppsim.cli import main, snr_grid


class TestSnrGrid:
    def test_inclusive_endpoints(self):
        assert snr_grid(0.0, 20.0, 2.0) == [float(s) for s in range(0, 21, 2)]

    def test_single_point(self):
        assert snr_grid(5.0, 5.0, 2.0) == [5.0]

    def test_fractional_step(self):
        grid = snr_grid(0.0, 1.0, 0.25)
        assert len(grid) == 5
        assert grid[-1] == pytest.approx(1.0)

    def test_endpoint_not_overshot(self):
        assert snr_grid(0.0, 5.0, 2.0) == [0.0, 2.0, 4.0]

    def test_rejects_bad_step(self):
        with pytest.raises(ValueError):
            snr_grid(0.0, 10.0, 0.0)
        with pytest.raises(ValueError):
            snr_grid(0.0, 10.0, -1.0)

    def test_rejects_reversed_range(self):
        with pytest.raises(ValueError):
            snr_grid(10.0, 0.0, 2.0)


class TestMain:
    def run_main(self, tmp_path, *extra):
        out = tmp_path / "run.csv"
        argv = [
            "--tx", "2", "--users", "2",
            "--modulation", "qpsk",
            "--precoder", "inv",
            "--perturbation", "none",
            "--snr-start", "0", "--snr-stop", "4", "--snr-step", "2",
            "--trials", "50", "--seed", "3",
            "--out", str(out),
            *extra,
        ]
        return main(argv), out

    def test_writes_curve(self, tmp_path, capsys):
        code, out = self.run_main(tmp_path)
        assert code == 0
        assert "3 points" in capsys.readouterr().out
        curve = read_csv(out)
        assert [p.snr_db for p in curve.points] == [0.0, 2.0, 4.0]
        assert curve.config.users == 2
        assert all(p.trials == 50 for p in curve.points)

    def test_all_schemes_run(self, tmp_path):
        for precoder in ("inv", "rinv"):
            for pert in ("none", "discrete", "continuous", "combined"):
                out = tmp_path / f"{precoder}_{pert}.csv"
                code = main(
                    [
                        "--tx", "2", "--users", "2",
                        "--modulation", "16qam",
                        "--precoder", precoder,
                        "--perturbation", pert,
                        "--snr-start", "10", "--snr-stop", "10", "--snr-step", "1",
                        "--trials", "20", "--seed", "0",
                        "--window", "1",
                        "--out", str(out),
                    ]
                )
                assert code == 0
                assert out.exists()

    def test_seed_reproducibility(self, tmp_path):
        _, first = self.run_main(tmp_path)
        data = first.read_bytes()
        _, second = self.run_main(tmp_path)
        assert second.read_bytes() == data

    def test_no_early_stop_flag(self, tmp_path):
        code, out = self.run_main(tmp_path, "--no-early-stop")
        assert code == 0
        assert all(p.trials == 50 for p in read_csv(out).points)

    def test_invalid_geometry_exits_nonzero(self, tmp_path, capsys):
        out = tmp_path / "bad.csv"
        code = main(
            [
                "--tx", "2", "--users", "4",
                "--out", str(out),
            ]
        )
        assert code == 2
        assert capsys.readouterr().err != ""
        assert not out.exists()

    def test_unwritable_output_exits_nonzero(self, tmp_path, capsys):
        code = main(
            [
                "--tx", "2", "--users", "2",
                "--snr-start", "0", "--snr-stop", "0", "--snr-step", "1",
                "--trials", "5",
                "--out", str(tmp_path / "missing_dir" / "x.csv"),
            ]
        )
        assert code == 2
        assert capsys.readouterr().err != ""

    def test_bad_choice_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["--modulation", "8psk", "--out", str(tmp_path / "x.csv")])


def test_module_entry_point(tmp_path):
    out = tmp_path / "entry.csv"
    proc = subprocess.run(
        [
            sys.executable, "-m", "vppsim.cli",
            "--tx", "2", "--users", "2",
            "--snr-start", "0", "--snr-stop", "0", "--snr-step", "1",
            "--trials", "10", "--seed", "1",
            "--out", str(out),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
