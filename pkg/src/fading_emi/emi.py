"""Ergodic mutual information, three ways.

* ``emi_exact``: outer adaptive quadrature of E[I(gamma)] against the
  fading density, with the exact AWGN MI as the inner kernel.
* ``emi_approx``: the closed forms obtained by pushing the exponential
  MI approximation through each family's Laplace transform, i.e.
  ``1 - E[exp(-rate * gamma)]`` evaluated at rate = 0.6507.
* ``emi_series_reference``: truncated series mirroring the derivations
  behind the closed forms (exp-series for Rician/kappa-mu, binomial
  series for eta-mu); converges to ``emi_approx`` and exposes the
  truncation term as an error estimate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammaln, logsumexp

from .bpsk_mi import DEFAULT_QUAD, MI_APPROX_RATE, QuadratureSpec, mi_awgn_exact
from .channels import (
    Awgn,
    EtaMu,
    FadingModel,
    KappaMu,
    Nakagami,
    Rayleigh,
    Rician,
    eta_mu_geometry,
    laplace_at,
    pdf,
    validate,
)
from .errors import NoKnownReductionError, ParameterError, QuadratureConvergenceError
from .quadrature import integrate_snr_density

__all__ = [
    "EmiMethod",
    "EmiEstimate",
    "ReductionReport",
    "emi_exact",
    "emi_approx",
    "emi_series_reference",
    "emi_reduction_check",
]


class EmiMethod(enum.Enum):
    EXACT_QUADRATURE = "exact_quadrature"
    CLOSED_FORM = "closed_form"
    SERIES = "series"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class EmiEstimate:
    """An EMI value in bits/symbol with its method tag and error bound."""

    value: float
    method: EmiMethod
    error: float
    model: FadingModel


def emi_exact(model: FadingModel, quad: QuadratureSpec = DEFAULT_QUAD) -> EmiEstimate:
    """EMI by double quadrature: inner exact MI, outer adaptive on (0, inf)."""
    validate(model)
    if isinstance(model, Awgn):
        return EmiEstimate(mi_awgn_exact(model.snr_bar, quad), EmiMethod.EXACT_QUADRATURE, 0.0, model)

    def integrand(g: np.ndarray) -> np.ndarray:
        return mi_awgn_exact(g, quad) * pdf(model, g)

    value, err, converged = integrate_snr_density(
        integrand,
        model.snr_bar,
        rel_tol=quad.outer_rel_tol,
        abs_tol=quad.outer_abs_tol,
        max_subdivisions=quad.max_subdivisions,
    )
    estimate = EmiEstimate(min(max(value, 0.0), 1.0), EmiMethod.EXACT_QUADRATURE, err, model)
    if not converged:
        raise QuadratureConvergenceError(
            f"outer EMI quadrature did not reach tolerance within "
            f"{quad.max_subdivisions} subdivisions", estimate, err)
    return estimate


def emi_approx(model: FadingModel, rate: float = MI_APPROX_RATE) -> EmiEstimate:
    """Closed-form EMI approximation ``1 - E[exp(-rate * gamma)]``."""
    validate(model)
    return EmiEstimate(1.0 - laplace_at(model, rate), EmiMethod.CLOSED_FORM, 0.0, model)


def _exp_series_logs(log_y: float, n_terms: int) -> np.ndarray:
    # log of y^n / n! for n = 0..n_terms-1
    n = np.arange(n_terms, dtype=float)
    return n * log_y - gammaln(n + 1.0)


def emi_series_reference(model: FadingModel, n_terms: int,
                         rate: float = MI_APPROX_RATE) -> EmiEstimate:
    """Partial sum of the series the closed forms collapse from.

    Rician and kappa-mu reduce to the exponential series in
    ``y = mu kappa / (1 + rate gbar / (mu (1+kappa)))``; eta-mu reduces
    to the binomial series of ``(1 - x^2)^(-mu)`` in
    ``x = H / (h + rate gbar / (2 mu))`` with |x| < 1 guaranteed by the
    geometry.  The error field carries the last included term.
    """
    validate(model)
    if n_terms < 1:
        raise ParameterError(f"n_terms must be >= 1, got {n_terms}")
    gbar = model.snr_bar

    if isinstance(model, (Rician, KappaMu)):
        kappa = model.k if isinstance(model, Rician) else model.kappa
        mu = 1.0 if isinstance(model, Rician) else model.mu
        b = rate * gbar / (mu * (1.0 + kappa))
        pref_log = -mu * kappa - mu * math.log1p(b)
        if kappa == 0.0:
            term_logs = np.full(n_terms, -np.inf)
            term_logs[0] = 0.0
        else:
            term_logs = _exp_series_logs(math.log(mu * kappa) - math.log1p(b), n_terms)
    elif isinstance(model, EtaMu):
        geo = eta_mu_geometry(model.format, model.eta)
        mu = model.mu
        b = rate * gbar / (2.0 * mu)
        x = geo.cap_h / (geo.h + b)
        assert abs(x) < 1.0, "eta-mu series ratio must satisfy |x| < 1"
        pref_log = mu * math.log(geo.h) - 2.0 * mu * math.log(geo.h + b)
        if x == 0.0:
            term_logs = np.full(n_terms, -np.inf)
            term_logs[0] = 0.0
        else:
            n = np.arange(n_terms, dtype=float)
            term_logs = (gammaln(mu + n) - gammaln(mu) - gammaln(n + 1.0)
                         + n * 2.0 * math.log(abs(x)))
    else:
        raise ParameterError(
            f"series reference exists for Rician, eta-mu and kappa-mu only, got {model!r}")

    value = 1.0 - math.exp(pref_log + logsumexp(term_logs))
    last_term = math.exp(pref_log + term_logs[-1]) if np.isfinite(term_logs[-1]) else 0.0
    return EmiEstimate(value, EmiMethod.SERIES, last_term, model)


@dataclass(frozen=True)
class ReductionReport:
    """Outcome of comparing a model's EMI with its limiting counterpart."""

    model: FadingModel
    limit_model: FadingModel
    max_discrepancy: float
    snr_db_grid: tuple[float, ...]


def _reduction_target(model: FadingModel) -> FadingModel:
    if isinstance(model, Nakagami):
        return Rayleigh(snr_bar=model.snr_bar)
    if isinstance(model, Rician):
        return Rayleigh(snr_bar=model.snr_bar)
    if isinstance(model, KappaMu):
        if model.mu == 1.0:
            return Rician(k=model.kappa, snr_bar=model.snr_bar)
        return Nakagami(m=model.mu, snr_bar=model.snr_bar)
    if isinstance(model, EtaMu):
        geo = eta_mu_geometry(model.format, model.eta)
        # H -> 0 collapses to Nakagami(2 mu); the opposite extreme
        # (|H|/h -> 1) collapses to Nakagami(mu).  Pick the nearer limit.
        if abs(geo.cap_h) < 0.5 * geo.h:
            return Nakagami(m=2.0 * model.mu, snr_bar=model.snr_bar)
        return Nakagami(m=model.mu, snr_bar=model.snr_bar)
    raise NoKnownReductionError(f"no documented reduction for {model!r}")


def emi_reduction_check(model: FadingModel, rate: float = MI_APPROX_RATE,
                        points: int = 20) -> ReductionReport:
    """Compare closed-form EMI of ``model`` and its limit over an SNR sweep."""
    validate(model)
    target = _reduction_target(model)
    snr_db = np.linspace(-10.0, 20.0, points)
    worst = 0.0
    for db in snr_db:
        gbar = 10.0 ** (db / 10.0)
        a = emi_approx(replace(model, snr_bar=gbar), rate).value
        b = emi_approx(replace(target, snr_bar=gbar), rate).value
        worst = max(worst, abs(a - b))
    return ReductionReport(model, target, worst, tuple(snr_db))
