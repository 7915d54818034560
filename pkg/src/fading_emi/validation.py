"""Cross-validation suites over the standard model/SNR grid.

Each suite compares two independent routes to the same quantity
(closed form vs quadrature, sampler vs density, Monte Carlo vs exact
EMI) and reports the worst discrepancy against its acceptance bound.
The CLI ``validate`` command and the acceptance tests both run these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bpsk_mi import DEFAULT_QUAD, MI_APPROX_RATE, QuadratureSpec, mi_awgn_approx, mi_awgn_exact
from .channels import (
    EtaMu,
    EtaMuFormat,
    FadingModel,
    KappaMu,
    Nakagami,
    Rayleigh,
    Rician,
    laplace_at,
    pdf,
)
from .emi import emi_approx, emi_exact, emi_reduction_check
from .quadrature import integrate_snr_density
from .sampling import RngState, emi_monte_carlo, ks_distance, sample_snr

__all__ = [
    "SuiteResult",
    "standard_grid",
    "snr_db_grid",
    "db_to_linear",
    "run_validation",
]

F1 = EtaMuFormat.FORMAT1
F2 = EtaMuFormat.FORMAT2


def db_to_linear(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def standard_grid(snr_bar: float = 1.0) -> list[FadingModel]:
    """The parameter grid every suite sweeps (SNR substituted per point).

    Includes negative-H eta-mu cases (Format 1 with eta > 1, Format 2
    with eta < 0), H = 0 degenerate points, and mu = 0.3 endpoint-
    singular densities.
    """
    g = snr_bar
    return [
        Rayleigh(snr_bar=g),
        Nakagami(m=0.5, snr_bar=g),
        Nakagami(m=0.65, snr_bar=g),
        Nakagami(m=1.0, snr_bar=g),
        Nakagami(m=2.5, snr_bar=g),
        Nakagami(m=4.0, snr_bar=g),
        Nakagami(m=8.0, snr_bar=g),
        Rician(k=0.0, snr_bar=g),
        Rician(k=0.5, snr_bar=g),
        Rician(k=1.0, snr_bar=g),
        Rician(k=3.0, snr_bar=g),
        Rician(k=7.0, snr_bar=g),
        Rician(k=15.0, snr_bar=g),
        EtaMu(format=F1, eta=0.25, mu=0.5, snr_bar=g),
        EtaMu(format=F1, eta=0.9, mu=1.0, snr_bar=g),
        EtaMu(format=F1, eta=2.2, mu=1.7, snr_bar=g),
        EtaMu(format=F1, eta=1.0, mu=0.75, snr_bar=g),
        EtaMu(format=F2, eta=-0.5, mu=0.3, snr_bar=g),
        EtaMu(format=F2, eta=0.35, mu=2.2, snr_bar=g),
        EtaMu(format=F2, eta=0.0, mu=1.25, snr_bar=g),
        KappaMu(kappa=0.5, mu=0.5, snr_bar=g),
        KappaMu(kappa=2.0, mu=1.0, snr_bar=g),
        KappaMu(kappa=5.0, mu=2.1, snr_bar=g),
        KappaMu(kappa=1.5, mu=0.3, snr_bar=g),
        KappaMu(kappa=0.1, mu=3.5, snr_bar=g),
        KappaMu(kappa=8.0, mu=1.6, snr_bar=g),
    ]


def snr_db_grid(points: int = 20) -> np.ndarray:
    return np.linspace(-10.0, 20.0, points)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_discrepancy: float
    bound: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        return f"{self.name} max_abs_err={self.max_discrepancy:.6g} bound={self.bound:g} {status}{extra}"


def _grid_points(snr_points: int):
    for model in standard_grid():
        for db in snr_db_grid(snr_points):
            yield replace(model, snr_bar=db_to_linear(db))


def suite_pdf_normalization(quad: QuadratureSpec, bound: float = 1e-6) -> SuiteResult:
    worst = 0.0
    for model in standard_grid():
        for gbar in (0.1, 1.0, 10.0):
            m = replace(model, snr_bar=gbar)
            total, _, _ = integrate_snr_density(
                lambda g: pdf(m, g), gbar,
                rel_tol=1e-10, abs_tol=1e-13, max_subdivisions=quad.max_subdivisions)
            worst = max(worst, abs(total - 1.0))
    return SuiteResult("pdf_normalization", worst, bound, worst <= bound)


def suite_laplace_consistency(quad: QuadratureSpec, rate: float, bound: float = 1e-6) -> SuiteResult:
    """Numeric E[exp(-s g)] against the closed form, relative error."""
    worst = 0.0
    for model in standard_grid():
        for gbar in (0.5, 4.0):
            m = replace(model, snr_bar=gbar)
            for s in (0.1, rate, 5.0):
                closed = laplace_at(m, s)
                numeric, _, _ = integrate_snr_density(
                    lambda g: np.exp(-s * g) * pdf(m, g), gbar,
                    rel_tol=1e-10, abs_tol=1e-14, max_subdivisions=quad.max_subdivisions)
                worst = max(worst, abs(numeric - closed) / closed)
    return SuiteResult("laplace_consistency", worst, bound, worst <= bound)


def suite_lemma_algebra(quad: QuadratureSpec, rate: float, snr_points: int = 20,
                        bound: float = 1e-6) -> SuiteResult:
    """Closed-form EMI against 1 - integral of exp(-rate g) f(g), absolute."""
    worst = 0.0
    for m in _grid_points(snr_points):
        numeric, _, _ = integrate_snr_density(
            lambda g: np.exp(-rate * g) * pdf(m, g), m.snr_bar,
            rel_tol=1e-10, abs_tol=1e-14, max_subdivisions=quad.max_subdivisions)
        worst = max(worst, abs(emi_approx(m, rate).value - (1.0 - numeric)))
    return SuiteResult("lemma_algebra", worst, bound, worst <= bound)


def suite_mi_fidelity(quad: QuadratureSpec, rate: float, bound: float = 0.02) -> SuiteResult:
    grid = np.logspace(-3.0, 3.0, 200)
    gap = np.abs(mi_awgn_exact(grid, quad) - mi_awgn_approx(grid, rate))
    worst = float(np.max(gap))
    return SuiteResult("mi_fidelity", worst, bound, worst <= bound)


def suite_approx_vs_exact(quad: QuadratureSpec, rate: float, snr_points: int = 20,
                          bound: float = 0.02) -> SuiteResult:
    worst = 0.0
    for m in _grid_points(snr_points):
        worst = max(worst, abs(emi_approx(m, rate).value - emi_exact(m, quad).value))
    return SuiteResult("approx_vs_exact", worst, bound, worst <= bound)


def suite_reductions(rate: float) -> SuiteResult:
    """The documented limit identities, each at its own tolerance."""
    checks = [
        (Nakagami(m=1.0, snr_bar=1.0), 1e-12),
        (KappaMu(kappa=3.0, mu=1.0, snr_bar=1.0), 1e-12),
        (Rician(k=1e-9, snr_bar=1.0), 1e-6),
        (KappaMu(kappa=1e-9, mu=2.5, snr_bar=1.0), 1e-6),
        (EtaMu(format=F2, eta=1.0 - 1e-6, mu=1.5, snr_bar=1.0), 1e-4),
        (EtaMu(format=F1, eta=1e-6, mu=2.0, snr_bar=1.0), 1e-4),
        (EtaMu(format=F1, eta=1.0 + 1e-6, mu=0.8, snr_bar=1.0), 1e-4),
    ]
    worst_ratio = 0.0
    detail = ""
    for model, tol in checks:
        disc = emi_reduction_check(model, rate).max_discrepancy
        ratio = disc / tol
        if ratio > worst_ratio:
            worst_ratio = ratio
            detail = f"worst={model!r} disc={disc:.3g} tol={tol:g}"
    return SuiteResult("reductions", worst_ratio, 1.0, worst_ratio <= 1.0, detail)


def suite_sampler_ks(seed: int, n: int = 10**5) -> SuiteResult:
    bound = 1.63 / math.sqrt(n)  # alpha = 0.01 asymptotic critical value
    worst = 0.0
    for stream, model in enumerate(standard_grid()):
        batch = sample_snr(model, n, RngState(seed, stream))
        worst = max(worst, ks_distance(batch))
    return SuiteResult("sampler_ks", worst, bound, worst <= bound, f"n={n}")


def suite_sampler_laplace(seed: int, rate: float, n: int = 10**6) -> SuiteResult:
    """Empirical exp(-rate g) mean within 4 standard errors of closed form."""
    worst = 0.0
    for stream, model in enumerate(standard_grid()):
        batch = sample_snr(model, n, RngState(seed, 1000 + stream))
        vals = np.exp(-rate * batch.snr_samples)
        stderr = float(np.std(vals, ddof=1) / math.sqrt(n))
        gap = abs(float(np.mean(vals)) - laplace_at(model, rate))
        worst = max(worst, gap / stderr)
    return SuiteResult("sampler_laplace", worst, 4.0, worst <= 4.0, f"n={n} (units of stderr)")


def suite_mc_agreement(quad: QuadratureSpec, seed: int, n: int = 10**6,
                       snr_points: int = 20, exact_cache: dict | None = None) -> SuiteResult:
    """Fraction of grid points with |MC - exact| <= 3 stderr (>= 99 percent)."""
    ok = 0
    total = 0
    for idx, m in enumerate(_grid_points(snr_points)):
        if exact_cache is not None and idx in exact_cache:
            exact = exact_cache[idx]
        else:
            exact = emi_exact(m, quad).value
            if exact_cache is not None:
                exact_cache[idx] = exact
        mc = emi_monte_carlo(m, n, seed + idx, quad)
        total += 1
        if abs(mc.value - exact) <= 3.0 * mc.error:
            ok += 1
    fraction = ok / total
    return SuiteResult("mc_agreement", 1.0 - fraction, 0.01, fraction >= 0.99,
                       f"{ok}/{total} points within 3 stderr, n={n}")


def suite_awgn_convergence(rate: float, bound: float = 1e-3) -> SuiteResult:
    gbar = 1.0
    target = mi_awgn_approx(gbar, rate)
    gap_m = abs(emi_approx(Nakagami(m=1e4, snr_bar=gbar), rate).value - target)
    gap_k = abs(emi_approx(Rician(k=1e4, snr_bar=gbar), rate).value - target)
    worst = max(gap_m, gap_k)
    return SuiteResult("awgn_convergence", worst, bound, worst <= bound,
                       f"nakagami={gap_m:.3g} rician={gap_k:.3g}")


def run_validation(quad: QuadratureSpec = DEFAULT_QUAD, seed: int = 20260810,
                   rate: float = MI_APPROX_RATE, mc_samples: int = 10**6,
                   ks_samples: int = 10**5, snr_points: int = 20) -> list[SuiteResult]:
    """Run every suite; all-pass is the definition of a healthy build."""
    return [
        suite_pdf_normalization(quad),
        suite_laplace_consistency(quad, rate),
        suite_lemma_algebra(quad, rate, snr_points),
        suite_mi_fidelity(quad, rate),
        suite_approx_vs_exact(quad, rate, snr_points),
        suite_reductions(rate),
        suite_sampler_ks(seed, ks_samples),
        suite_sampler_laplace(seed, rate, mc_samples),
        suite_mc_agreement(quad, seed, mc_samples, snr_points),
        suite_awgn_convergence(rate),
    ]
