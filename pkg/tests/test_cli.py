"""CLI surface: flags, CSV schema, determinism, exit codes."""

import csv
import math
from dataclasses import replace

import numpy as np
import pytest

from fading_emi import MI_APPROX_RATE, emi_approx, emi_exact, mi_awgn_approx
from fading_emi.channels import EtaMu, EtaMuFormat, KappaMu, Nakagami, Rayleigh
from fading_emi.cli import main

CSV_HEADER = "family,params,snr_db,emi_exact,emi_approx,emi_mc,mc_stderr"


def _read_csv(path):
    with open(path, encoding="utf-8") as fh:
        lines = [l for l in fh.read().splitlines() if not l.startswith("#")]
    assert lines[0] == CSV_HEADER
    return list(csv.DictReader(lines))


class TestEval:
    def test_rayleigh_approx(self, capsys):
        assert main(["eval", "--model", "rayleigh", "--snr-db", "0",
                     "--methods", "approx"]) == 0
        out = capsys.readouterr().out.strip()
        expected = 1.0 - 1.0 / (1.0 + MI_APPROX_RATE)
        assert out == f"approx {expected:.9f} 0.000e+00"

    def test_awgn_approx(self, capsys):
        assert main(["eval", "--model", "awgn", "--snr-db", "0",
                     "--methods", "approx"]) == 0
        value = float(capsys.readouterr().out.split()[1])
        assert value == pytest.approx(-math.expm1(-MI_APPROX_RATE), abs=1e-9)

    def test_multiple_methods(self, capsys):
        assert main(["eval", "--model", "nakagami", "--m", "2", "--snr-db", "3",
                     "--methods", "exact,approx,mc", "--mc-samples", "5000"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert [l.split()[0] for l in lines] == ["exact", "approx", "mc"]
        vals = [float(l.split()[1]) for l in lines]
        assert max(vals) - min(vals) < 0.05

    def test_invalid_parameter_exits_2(self, capsys):
        assert main(["eval", "--model", "nakagami", "--m", "0", "--snr-db", "0"]) == 2
        assert "m must be" in capsys.readouterr().err

    def test_missing_parameter_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--model", "eta-mu", "--eta", "0.5", "--snr-db", "0"])
        assert exc.value.code == 2

    def test_db_convention(self, capsys):
        # 10 dB means snr_bar = 10
        assert main(["eval", "--model", "rayleigh", "--snr-db", "10",
                     "--methods", "approx"]) == 0
        value = float(capsys.readouterr().out.split()[1])
        assert value == pytest.approx(emi_approx(Rayleigh(snr_bar=10.0)).value, abs=1e-9)


class TestSweep:
    def test_row_count_and_roundtrip(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--model", "rayleigh", "--snr-db-range", "-10:20:31",
                     "--methods", "exact,approx,mc", "--mc-samples", "20000",
                     "--seed", "9", "--out", str(out)]) == 0
        rows = _read_csv(out)
        assert len(rows) == 31
        ok_mc = 0
        for row in rows:
            gbar = 10.0 ** (float(row["snr_db"]) / 10.0)
            recomputed = emi_approx(Rayleigh(snr_bar=gbar)).value
            assert abs(float(row["emi_approx"]) - recomputed) <= 1e-9
            assert 0.0 <= float(row["emi_exact"]) <= 1.0
            if abs(float(row["emi_mc"]) - float(row["emi_exact"])) <= 3.0 * float(row["mc_stderr"]):
                ok_mc += 1
        assert ok_mc >= 30  # >= 99% of rows in the large-sample limit
        snr = [float(r["snr_db"]) for r in rows]
        assert snr == sorted(snr)

    def test_deterministic(self, tmp_path, capsys):
        args = ["sweep", "--model", "kappa-mu", "--kappa", "2", "--mu", "0.5",
                "--snr-db-range", "-5:5:5", "--methods", "approx,mc",
                "--mc-samples", "5000", "--seed", "3"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_unrequested_methods_empty(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        assert main(["sweep", "--model", "rician", "--k", "1",
                     "--snr-db-range", "0:10:3", "--methods", "approx",
                     "--out", str(out)]) == 0
        for row in _read_csv(out):
            assert row["emi_exact"] == "" and row["emi_mc"] == "" and row["mc_stderr"] == ""
            assert row["emi_approx"] != ""

    def test_bad_range_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--model", "rayleigh", "--snr-db-range", "nope",
                  "--out", "/tmp/x.csv"])
        assert exc.value.code == 2


class TestFigures:
    @pytest.fixture(scope="class")
    def fig_dir(self, tmp_path_factory):
        out = tmp_path_factory.mktemp("figs")
        code = main(["figures", "--out", str(out), "--mc-samples", "5000", "--seed", "1"])
        assert code == 0
        return out

    def test_all_files_exist(self, fig_dir):
        for name in ("fig1", "fig2", "fig3a", "fig3b", "fig4"):
            assert (fig_dir / f"{name}.csv").exists()

    def test_row_counts(self, fig_dir):
        assert len(_read_csv(fig_dir / "fig1.csv")) == 6 * 31
        assert len(_read_csv(fig_dir / "fig2.csv")) == 4 * 31
        assert len(_read_csv(fig_dir / "fig3a.csv")) == 9 * 31
        assert len(_read_csv(fig_dir / "fig3b.csv")) == 9 * 31
        assert len(_read_csv(fig_dir / "fig4.csv")) == 9 * 31

    def test_values_in_range_and_sorted(self, fig_dir):
        for name in ("fig1", "fig2", "fig3a", "fig3b", "fig4"):
            rows = _read_csv(fig_dir / f"{name}.csv")
            snr = [float(r["snr_db"]) for r in rows]
            assert snr == sorted(snr)
            for r in rows:
                for col in ("emi_approx", "emi_mc"):
                    assert 0.0 <= float(r[col]) <= 1.0

    def test_nakagami_ordering(self, fig_dir):
        rows = _read_csv(fig_dir / "fig1.csv")
        by_param = {}
        for r in rows:
            if r["family"] == "nakagami":
                by_param.setdefault(r["params"], {})[float(r["snr_db"])] = float(r["emi_approx"])
        for db, v8 in by_param["m=8"].items():
            assert v8 >= by_param["m=1"][db] - 1e-12

    def test_large_k_near_awgn(self, fig_dir):
        rows = _read_csv(fig_dir / "fig2.csv")
        k10 = {float(r["snr_db"]): float(r["emi_approx"]) for r in rows if r["params"] == "K=10"}
        assert abs(k10[10.0] - mi_awgn_approx(10.0)) <= 0.02

    def test_deterministic(self, tmp_path):
        args = ["figures", "--mc-samples", "2000", "--seed", "4"]
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        for name in ("fig1", "fig2", "fig3a", "fig3b", "fig4"):
            assert (a / f"{name}.csv").read_bytes() == (b / f"{name}.csv").read_bytes()


class TestSample:
    def test_export_and_mean(self, tmp_path, capsys):
        out = tmp_path / "samples.csv"
        assert main(["sample", "--model", "nakagami", "--m", "2", "--snr-db", "0",
                     "--n", "20000", "--seed", "5", "--out", str(out)]) == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert lines[0] == "gamma"
        vals = np.array([float(v) for v in lines[1:]])
        assert vals.size == 20000
        assert np.all(vals > 0.0)
        assert abs(vals.mean() - 1.0) < 0.05

    def test_ks_flag(self, tmp_path, capsys):
        out = tmp_path / "samples.csv"
        assert main(["sample", "--model", "rayleigh", "--snr-db", "0",
                     "--n", "5000", "--seed", "5", "--ks", "--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "ks_statistic" in text
        ks = float(text.split("ks_statistic")[1].split()[0])
        assert ks < 1.63 / math.sqrt(5000)


class TestValidateCommand:
    QUICK = ["validate", "--mc-samples", "20000", "--ks-samples", "4000",
             "--snr-points", "4", "--seed", "20260810"]

    def test_passes_on_defaults(self, capsys):
        assert main(self.QUICK) == 0
        out = capsys.readouterr().out
        assert "approx_vs_exact" in out and "PASS" in out and "all suites passed" in out

    def test_corrupted_rate_fails(self, capsys):
        assert main(self.QUICK + ["--mi-rate", "0.9"]) == 1
        captured = capsys.readouterr()
        assert "approx_vs_exact" in captured.err


class TestConfigFile:
    def test_config_supplies_defaults_flags_win(self, tmp_path, capsys):
        cfg = tmp_path / "cfg"
        cfg.write_text("mc-samples=4000\nseed=21\n")
        out = tmp_path / "s.csv"
        assert main(["--config", str(cfg), "sweep", "--model", "rayleigh",
                     "--snr-db-range", "0:5:2", "--methods", "mc",
                     "--out", str(out)]) == 0
        meta = out.read_text().splitlines()[1]
        assert "mc_samples=4000" in meta and "seed=21" in meta
        # explicit flag beats the config value
        assert main(["--config", str(cfg), "sweep", "--model", "rayleigh",
                     "--snr-db-range", "0:5:2", "--methods", "mc",
                     "--mc-samples", "6000", "--out", str(out)]) == 0
        assert "mc_samples=6000" in out.read_text().splitlines()[1]
