"""Fading-model definitions, SNR densities, and their Laplace transforms.

The instantaneous-SNR densities of the five supported families:

* Rayleigh:      f(g) = exp(-g/gbar) / gbar
* Nakagami-m:    f(g) = m^m g^(m-1) exp(-m g/gbar) / (Gamma(m) gbar^m)
* Rician-K:      kappa-mu with mu=1, kappa=K (exact equivalence)
* eta-mu:        f(g) = 2 sqrt(pi) mu^(mu+1/2) h^mu / (Gamma(mu) H^(mu-1/2))
                        * g^(mu-1/2)/gbar^(mu+1/2) * exp(-2 mu h g/gbar)
                        * I_(mu-1/2)(2 mu H g / gbar)
* kappa-mu:      f(g) = mu (1+k)^((mu+1)/2) / (k^((mu-1)/2) e^(mu k))
                        * g^((mu-1)/2)/gbar^((mu+1)/2)
                        * exp(-mu (1+k) g/gbar) * I_(mu-1)(2 mu sqrt(k(k+1)g/gbar))

All densities are assembled in log space on top of the scaled Bessel
evaluator so they stay finite wherever the density is positive, and the
closed-form Laplace transforms E[exp(-s*gamma)] are exposed alongside.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .special_fn import ln_gamma, log_bessel_i

__all__ = [
    "Awgn",
    "Rayleigh",
    "Nakagami",
    "Rician",
    "EtaMu",
    "KappaMu",
    "EtaMuFormat",
    "FadingModel",
    "Geometry",
    "validate",
    "eta_mu_geometry",
    "log_pdf",
    "pdf",
    "laplace_at",
    "gamma_power_near_zero",
]

# |H|/h below this is treated as the exact H=0 degenerate limit, where
# the eta-mu density collapses to Nakagami with m = 2 mu.
_H_DEGENERATE = 1e-8


class EtaMuFormat(enum.Enum):
    FORMAT1 = 1
    FORMAT2 = 2


@dataclass(frozen=True)
class Awgn:
    snr_bar: float


@dataclass(frozen=True)
class Rayleigh:
    snr_bar: float


@dataclass(frozen=True)
class Nakagami:
    m: float
    snr_bar: float


@dataclass(frozen=True)
class Rician:
    k: float
    snr_bar: float


@dataclass(frozen=True)
class EtaMu:
    format: EtaMuFormat
    eta: float
    mu: float
    snr_bar: float


@dataclass(frozen=True)
class KappaMu:
    kappa: float
    mu: float
    snr_bar: float


FadingModel = Awgn | Rayleigh | Nakagami | Rician | EtaMu | KappaMu


@dataclass(frozen=True)
class Geometry:
    """The (h, H) constants of the eta-mu density.

    ``h_minus_cap`` and ``h_plus_cap`` are h -+ H evaluated from
    cancellation-free per-format expressions; for eta near a Nakagami
    limit point, h and H individually blow up while their difference
    stays O(1).  Both formats satisfy h^2 - H^2 = h and h > |H|.
    """

    h: float
    cap_h: float
    h_minus_cap: float
    h_plus_cap: float

    def __post_init__(self):
        if not (self.h > abs(self.cap_h)):
            raise ParameterError(f"geometry requires h > |H|, got h={self.h}, H={self.cap_h}")


def eta_mu_geometry(format: EtaMuFormat, eta: float) -> Geometry:
    """Map eta to (h, H) for the requested format.

    Format 1 (power ratio, 0 < eta < inf):
        h = (2 + 1/eta + eta)/4,  H = (1/eta - eta)/4
    Format 2 (correlation, -1 < eta < 1):
        h = 1/(1 - eta^2),        H = eta/(1 - eta^2)
    """
    if format is EtaMuFormat.FORMAT1:
        if not (np.isfinite(eta) and 0.0 < eta):
            raise ParameterError(f"eta out of range for Format 1 (0 < eta < inf): {eta!r}")
        inv = 1.0 / eta
        return Geometry(
            h=(2.0 + inv + eta) / 4.0,
            cap_h=(inv - eta) / 4.0,
            h_minus_cap=(1.0 + eta) / 2.0,
            h_plus_cap=(1.0 + inv) / 2.0,
        )
    if format is EtaMuFormat.FORMAT2:
        if not (np.isfinite(eta) and -1.0 < eta < 1.0):
            raise ParameterError(f"eta out of range for Format 2 (-1 < eta < 1): {eta!r}")
        omsq = (1.0 - eta) * (1.0 + eta)
        return Geometry(
            h=1.0 / omsq,
            cap_h=eta / omsq,
            h_minus_cap=1.0 / (1.0 + eta),
            h_plus_cap=1.0 / (1.0 - eta),
        )
    raise ParameterError(f"unknown eta-mu format: {format!r}")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def validate(model: FadingModel) -> FadingModel:
    """Check every parameter constraint; return the model unchanged."""
    if not isinstance(model, (Awgn, Rayleigh, Nakagami, Rician, EtaMu, KappaMu)):
        raise ParameterError(f"not a fading model: {model!r}")
    _require(np.isfinite(model.snr_bar) and model.snr_bar > 0.0,
             f"mean SNR must be finite and > 0, got {model.snr_bar!r}")
    if isinstance(model, Nakagami):
        _require(np.isfinite(model.m) and model.m >= 0.5,
                 f"m must be >= 0.5, got {model.m!r}")
    elif isinstance(model, Rician):
        _require(np.isfinite(model.k) and model.k >= 0.0,
                 f"K must be >= 0, got {model.k!r}")
    elif isinstance(model, EtaMu):
        _require(np.isfinite(model.mu) and model.mu > 0.0,
                 f"mu must be > 0, got {model.mu!r}")
        eta_mu_geometry(model.format, model.eta)
    elif isinstance(model, KappaMu):
        _require(np.isfinite(model.kappa) and model.kappa >= 0.0,
                 f"kappa must be >= 0, got {model.kappa!r}")
        _require(np.isfinite(model.mu) and model.mu > 0.0,
                 f"mu must be > 0, got {model.mu!r}")
    return model


def _as_gamma_array(gamma, allow_zero: bool):
    arr = np.asarray(gamma, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"gamma must be finite, got {gamma!r}")
    if np.any(arr < 0.0) or (not allow_zero and np.any(arr == 0.0)):
        bound = ">= 0" if allow_zero else "> 0"
        raise DomainError(f"gamma must be {bound}")
    scalar = np.isscalar(gamma) or arr.ndim == 0
    return np.atleast_1d(arr), scalar


def _log_pdf_nakagami(m: float, snr_bar: float, g: np.ndarray) -> np.ndarray:
    return (m * (math.log(m) - math.log(snr_bar)) - ln_gamma(m)
            + (m - 1.0) * np.log(g) - m * g / snr_bar)


def _log_pdf_kappa_mu(kappa: float, mu: float, snr_bar: float, g: np.ndarray) -> np.ndarray:
    if kappa == 0.0:
        return _log_pdf_nakagami(mu, snr_bar, g)
    z = 2.0 * mu * np.sqrt(kappa * (kappa + 1.0) * g / snr_bar)
    return (math.log(mu)
            + 0.5 * (mu + 1.0) * math.log1p(kappa)
            - 0.5 * (mu - 1.0) * math.log(kappa)
            - mu * kappa
            + 0.5 * (mu - 1.0) * np.log(g)
            - 0.5 * (mu + 1.0) * math.log(snr_bar)
            - mu * (1.0 + kappa) * g / snr_bar
            + log_bessel_i(mu - 1.0, z))


def _log_pdf_eta_mu(geo: Geometry, mu: float, snr_bar: float, g: np.ndarray) -> np.ndarray:
    abs_h = abs(geo.cap_h)
    if abs_h < _H_DEGENERATE * geo.h:
        # 0/0 limit of the H-dependent factors: exactly Nakagami(2 mu).
        return _log_pdf_nakagami(2.0 * mu, snr_bar, g)
    # The density depends on H only through the even combination
    # I_(mu-1/2)(2 mu H g/gbar) / H^(mu-1/2), so |H| is used throughout;
    # this keeps negative-H parameterizations (Format 1 with eta > 1,
    # Format 2 with eta < 0) real and positive.
    z = 2.0 * mu * abs_h * g / snr_bar
    return (math.log(2.0) + 0.5 * math.log(math.pi)
            + (mu + 0.5) * math.log(mu)
            + mu * math.log(geo.h)
            - ln_gamma(mu)
            - (mu - 0.5) * math.log(abs_h)
            + (mu - 0.5) * np.log(g)
            - (mu + 0.5) * math.log(snr_bar)
            - 2.0 * mu * geo.h * g / snr_bar
            + log_bessel_i(mu - 0.5, z))


def log_pdf(model: FadingModel, gamma):
    """Natural log of the instantaneous-SNR density at ``gamma > 0``."""
    validate(model)
    g, scalar = _as_gamma_array(gamma, allow_zero=False)
    if isinstance(model, Awgn):
        raise ParameterError("AWGN has a degenerate (point-mass) SNR distribution; no density")
    if isinstance(model, Rayleigh):
        out = -math.log(model.snr_bar) - g / model.snr_bar
    elif isinstance(model, Nakagami):
        out = _log_pdf_nakagami(model.m, model.snr_bar, g)
    elif isinstance(model, Rician):
        out = _log_pdf_kappa_mu(model.k, 1.0, model.snr_bar, g)
    elif isinstance(model, KappaMu):
        out = _log_pdf_kappa_mu(model.kappa, model.mu, model.snr_bar, g)
    else:
        geo = eta_mu_geometry(model.format, model.eta)
        out = _log_pdf_eta_mu(geo, model.mu, model.snr_bar, g)
    return float(out[0]) if scalar else out.reshape(np.shape(gamma))


def gamma_power_near_zero(model: FadingModel) -> tuple[float, float]:
    """Small-gamma behavior f(g) ~ exp(log_coef) * g^power.

    Drives both the gamma=0 value of ``pdf`` and the endpoint
    regularization used when integrating densities with mu < 1 from 0.
    """
    validate(model)
    if isinstance(model, Awgn):
        raise ParameterError("AWGN has no density")
    if isinstance(model, Rayleigh):
        return 0.0, -math.log(model.snr_bar)
    if isinstance(model, Nakagami):
        return model.m - 1.0, model.m * (math.log(model.m) - math.log(model.snr_bar)) - ln_gamma(model.m)
    if isinstance(model, (Rician, KappaMu)):
        kappa = model.k if isinstance(model, Rician) else model.kappa
        mu = 1.0 if isinstance(model, Rician) else model.mu
        log_coef = (mu * math.log(mu) + mu * math.log1p(kappa) - mu * kappa
                    - ln_gamma(mu) - mu * math.log(model.snr_bar))
        return mu - 1.0, log_coef
    geo = eta_mu_geometry(model.format, model.eta)
    mu = model.mu
    log_coef = (2.0 * mu * math.log(2.0 * mu) + mu * math.log(geo.h)
                - ln_gamma(2.0 * mu) - 2.0 * mu * math.log(model.snr_bar))
    return 2.0 * mu - 1.0, log_coef


def pdf(model: FadingModel, gamma):
    """Density value; accepts ``gamma >= 0`` with the g=0 limit filled in."""
    validate(model)
    g, scalar = _as_gamma_array(gamma, allow_zero=True)
    out = np.empty_like(g)
    zero = g == 0.0
    if np.any(zero):
        power, log_coef = gamma_power_near_zero(model)
        if power > 0.0:
            limit = 0.0
        elif power < 0.0:
            limit = np.inf
        else:
            limit = math.exp(log_coef)
        out[zero] = limit
    if np.any(~zero):
        out[~zero] = np.exp(log_pdf(model, g[~zero]))
    return float(out[0]) if scalar else out.reshape(np.shape(gamma))


def laplace_at(model: FadingModel, s: float) -> float:
    """Closed-form E[exp(-s*gamma)] of the model's SNR distribution."""
    validate(model)
    if not np.isfinite(s) or s < 0.0:
        raise DomainError(f"s must be finite and >= 0, got {s!r}")
    gbar = model.snr_bar
    if isinstance(model, Awgn):
        return math.exp(-s * gbar)
    if isinstance(model, Rayleigh):
        return 1.0 / (1.0 + s * gbar)
    if isinstance(model, Nakagami):
        return math.exp(-model.m * math.log1p(s * gbar / model.m))
    if isinstance(model, (Rician, KappaMu)):
        kappa = model.k if isinstance(model, Rician) else model.kappa
        mu = 1.0 if isinstance(model, Rician) else model.mu
        b = s * gbar / (mu * (1.0 + kappa))
        # exp(mu k/(1+b) - mu k) rewritten cancellation-free
        return math.exp(-mu * math.log1p(b) - mu * kappa * b / (1.0 + b))
    geo = eta_mu_geometry(model.format, model.eta)
    mu = model.mu
    b = s * gbar / (2.0 * mu)
    # (h + b)^2 - H^2 factored through the stable h -+ H forms; the
    # factors are positive iff |h/H + s gbar/(2 mu H)| > 1, the condition
    # under which the underlying series representation converges.
    lo = geo.h_minus_cap + b
    hi = geo.h_plus_cap + b
    assert lo > 0.0 and hi > 0.0, "eta-mu series condition |h + b| > |H| violated"
    return math.exp(mu * (math.log(geo.h) - math.log(lo) - math.log(hi)))
