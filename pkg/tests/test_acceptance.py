"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single summary line (visible with ``pytest -rA`` or
``-s``).  The heavy Monte-Carlo criteria run at their full stated
sample counts, so this module takes several minutes.
"""

import csv
from dataclasses import replace

import numpy as np
import pytest

from fading_emi import QuadratureSpec, emi_approx, emi_exact, mi_awgn_approx
from fading_emi.cli import figure_specs, main
from fading_emi.validation import (
    db_to_linear,
    snr_db_grid,
    standard_grid,
    suite_awgn_convergence,
    suite_lemma_algebra,
    suite_mc_agreement,
    suite_mi_fidelity,
    suite_pdf_normalization,
    suite_reductions,
    suite_sampler_ks,
    suite_sampler_laplace,
)
from fading_emi.bpsk_mi import MI_APPROX_RATE

QUAD = QuadratureSpec()
SEED = 20260810
SNR_POINTS = 20


def _report(criterion: str, result) -> None:
    print(f"[{criterion}] {result.line()}")
    assert result.passed, result.line()


@pytest.fixture(scope="module")
def exact_grid():
    """Exact EMI at every (model, snr) grid point, shared by criteria 3 and 7."""
    cache = {}
    idx = 0
    for model in standard_grid():
        for db in snr_db_grid(SNR_POINTS):
            m = replace(model, snr_bar=db_to_linear(db))
            cache[idx] = emi_exact(m, QUAD).value
            idx += 1
    return cache


def test_criterion_1_lemma_algebra():
    _report("criterion 1", suite_lemma_algebra(QUAD, MI_APPROX_RATE, SNR_POINTS))


def test_criterion_2_mi_fidelity():
    _report("criterion 2", suite_mi_fidelity(QUAD, MI_APPROX_RATE))


def test_criterion_3_approx_vs_exact(exact_grid):
    worst = 0.0
    idx = 0
    for model in standard_grid():
        for db in snr_db_grid(SNR_POINTS):
            m = replace(model, snr_bar=db_to_linear(db))
            worst = max(worst, abs(emi_approx(m).value - exact_grid[idx]))
            idx += 1
    print(f"[criterion 3] approx_vs_exact max_abs_err={worst:.6g} bound=0.02 "
          f"{'PASS' if worst <= 0.02 else 'FAIL'}")
    assert worst <= 0.02


def test_criterion_4_reductions():
    _report("criterion 4", suite_reductions(MI_APPROX_RATE))


def test_criterion_5_pdf_normalization():
    _report("criterion 5", suite_pdf_normalization(QUAD))


def test_criterion_6_sampler_ks():
    _report("criterion 6 (KS)", suite_sampler_ks(SEED, 10**5))


def test_criterion_6_sampler_laplace():
    _report("criterion 6 (Laplace)", suite_sampler_laplace(SEED, MI_APPROX_RATE, 10**6))


def test_criterion_7_mc_agreement(exact_grid):
    _report("criterion 7",
            suite_mc_agreement(QUAD, SEED, 10**6, SNR_POINTS, exact_cache=exact_grid))


def test_criterion_8_awgn_convergence():
    _report("criterion 8", suite_awgn_convergence(MI_APPROX_RATE))


def _load_rows(path):
    with open(path, encoding="utf-8") as fh:
        lines = [l for l in fh.read().splitlines() if not l.startswith("#")]
    return list(csv.DictReader(lines))


def test_criterion_9_figures(tmp_path):
    mc_samples = 10**5
    out = tmp_path / "figs"
    assert main(["figures", "--out", str(out), "--mc-samples", str(mc_samples),
                 "--seed", str(SEED)]) == 0

    worst_gap = 0.0
    mc_ok = 0
    rows_total = 0
    for name, models in figure_specs().items():
        rows = _load_rows(out / f"{name}.csv")
        assert len(rows) == len(models) * 31
        # rebuild per-curve order: rows are sorted by snr_db then curve
        for row in rows:
            assert 0.0 <= float(row["emi_approx"]) <= 1.0
            assert 0.0 <= float(row["emi_mc"]) <= 1.0
        by_curve = {}
        for row in rows:
            key = (row["family"], row["params"])
            by_curve.setdefault(key, []).append(row)
        for model in models:
            from fading_emi.cli import _family_tag, _params_tag
            curve = by_curve[(_family_tag(model), _params_tag(model))]
            assert len(curve) == 31
            for row in curve:
                m = replace(model, snr_bar=db_to_linear(float(row["snr_db"])))
                exact = emi_exact(m, QUAD).value
                worst_gap = max(worst_gap, abs(float(row["emi_approx"]) - exact))
                rows_total += 1
                if abs(float(row["emi_mc"]) - exact) <= 3.0 * float(row["mc_stderr"]):
                    mc_ok += 1

    fraction = mc_ok / rows_total
    passed = worst_gap <= 0.02 and fraction >= 0.99
    print(f"[criterion 9] figures rows={rows_total} approx_vs_exact_max={worst_gap:.6g} "
          f"(bound 0.02), mc within 3 stderr: {fraction:.4f} (bound 0.99) "
          f"{'PASS' if passed else 'FAIL'}")
    assert worst_gap <= 0.02
    assert fraction >= 0.99

    # determinism: a second identical (cheap) run is byte-identical
    a, b = tmp_path / "det_a", tmp_path / "det_b"
    for d in (a, b):
        assert main(["figures", "--out", str(d), "--mc-samples", "2000",
                     "--seed", str(SEED)]) == 0
    for name in figure_specs():
        assert (a / f"{name}.csv").read_bytes() == (b / f"{name}.csv").read_bytes()
