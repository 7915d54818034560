"""Instantaneous BPSK mutual information over AWGN.

The exact value is the Gaussian integral

    I(g) = 1 - E_U[ log2(1 + exp(-2 sqrt(g) U - 2 g)) ],   U ~ N(0, 1),

evaluated with Gauss-Hermite rules after absorbing the Gaussian weight
via ``u = sqrt(2) t``.  Plain Gauss-Hermite on the raw integrand stalls
around 1e-6 absolute near g ~ 10 (the integrand has complex poles a
distance ~ pi/(2 sqrt(g)) off the real axis), so for moderate and large
SNR the integrand is split exactly as

    log2(1 + e^z) = log2(e) * max(z, 0) + log2(1 + exp(-|z|)),

whose first part has a closed-form Gaussian mean, while the even,
exponentially-decaying remainder is integrated in the Fourier domain:
its transform is (1/ln 2) (1/w^2 - pi/(w sinh(pi w))), and the dual
integral again carries a Gaussian weight, now with the poles a distance
1 off the axis so the same Hermite rule converges to machine precision.
The measured worst-case absolute error of the combined scheme is below
2e-11 for g in [0, 100] at the default 64 nodes.

``mi_awgn_approx`` is the one-term exponential fit 1 - exp(-0.6507 g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, roots_hermite

from .errors import DomainError, ParameterError

__all__ = [
    "MI_APPROX_RATE",
    "QuadratureSpec",
    "DEFAULT_QUAD",
    "log2_one_plus_exp",
    "mi_awgn_exact",
    "mi_awgn_approx",
]

#: Rate constant of the exponential approximation 1 - exp(-rate * snr).
MI_APPROX_RATE = 0.6507

_LN2 = math.log(2.0)
_LOG2E = 1.0 / _LN2
_SQRT2 = math.sqrt(2.0)
_SQRT_PI = math.sqrt(math.pi)

# Branch boundaries of the exact evaluator (see module docstring).
_FOURIER_MIN = 1.0       # below: direct Gauss-Hermite is already ~1e-11
_REMAINDER_DROP = 48.0   # above: the remainder term is < 7e-12, dropped
_CHUNK = 1 << 16


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and tolerances for the exact-MI and exact-EMI integrals."""

    hermite_nodes: int = 64
    outer_rel_tol: float = 1e-8
    outer_abs_tol: float = 1e-12
    max_subdivisions: int = 256

    def __post_init__(self):
        if self.hermite_nodes < 16:
            raise ParameterError(f"hermite_nodes must be >= 16, got {self.hermite_nodes}")
        for name in ("outer_rel_tol", "outer_abs_tol"):
            tol = getattr(self, name)
            if not (0.0 < tol <= 1e-3):
                raise ParameterError(f"{name} must lie in (0, 1e-3], got {tol!r}")
        if self.max_subdivisions < 1:
            raise ParameterError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")


DEFAULT_QUAD = QuadratureSpec()

_node_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _hermite_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    rule = _node_cache.get(n)
    if rule is None:
        rule = roots_hermite(n)
        _node_cache[n] = rule
    return rule


def log2_one_plus_exp(x):
    """``log2(1 + e^x)`` without overflow for any finite ``x``."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"argument must be finite, got {x!r}")
    out = np.logaddexp(0.0, arr) * _LOG2E
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def _softplus_tail_transform(omega: np.ndarray) -> np.ndarray:
    """Fourier transform of log2(1 + exp(-|z|)).

    Equals (1/ln 2) [1/w^2 - pi/(w sinh(pi w))]; the small-argument
    cancellation is removed with the sinh(x)/x series.
    """
    x = math.pi * omega
    out = np.empty_like(omega)
    small = np.abs(x) < 0.5
    xs = x[small]
    xs2 = xs * xs
    sinhc = 1.0 + xs2 / 6.0 + xs2**2 / 120.0 + xs2**3 / 5040.0 + xs2**4 / 362880.0
    out[small] = math.pi**2 * (1.0 / 6.0 + xs2 / 120.0 + xs2**2 / 5040.0 + xs2**3 / 362880.0) / sinhc
    xl = x[~small]
    wl = omega[~small]
    out[~small] = 1.0 / (wl * wl) - math.pi / (wl * np.sinh(xl))
    return out * _LOG2E


def _norm_pdf(x: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def _mi_exact_chunk(g: np.ndarray, nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    n = nodes.size
    out = np.empty_like(g)
    fourier_hi = min(_REMAINDER_DROP, 0.75 * n)

    zero = g == 0.0
    direct = ~zero & ((g < _FOURIER_MIN) | ((g >= fourier_hi) & (g < _REMAINDER_DROP)))
    fourier = ~zero & (g >= _FOURIER_MIN) & (g < fourier_hi)
    closed = ~zero & (g >= _REMAINDER_DROP)

    out[zero] = 0.0

    if np.any(direct):
        gd = g[direct]
        z = -2.0 * np.sqrt(gd)[:, None] * (_SQRT2 * nodes)[None, :] - 2.0 * gd[:, None]
        vals = np.logaddexp(0.0, z) * _LOG2E
        out[direct] = 1.0 - (vals @ weights) / _SQRT_PI

    if np.any(fourier) or np.any(closed):
        sel = fourier | closed
        gs = g[sel]
        root = np.sqrt(gs)
        # Exact Gaussian mean of the piecewise-linear part of log2(1+e^z).
        linear = _LOG2E * (-2.0 * gs * ndtr(-root) + 2.0 * root * _norm_pdf(root))
        remainder = np.zeros_like(gs)
        fsel = fourier[sel]
        if np.any(fsel):
            gf = gs[fsel]
            s = 2.0 * np.sqrt(gf)
            omega = (_SQRT2 * nodes)[None, :] / s[:, None]
            integrand = _softplus_tail_transform(omega) * np.cos(omega * (-2.0 * gf)[:, None])
            remainder[fsel] = (integrand @ weights) * _SQRT2 / (2.0 * math.pi * s)
        out[sel] = 1.0 - (linear + remainder)

    return np.clip(out, 0.0, 1.0)


def mi_awgn_exact(gamma, quad: QuadratureSpec = DEFAULT_QUAD):
    """Exact BPSK mutual information in bits/symbol at SNR ``gamma >= 0``.

    Accepts scalars or arrays; the result is clamped to [0, 1] to absorb
    quadrature residues of order 1e-15.
    """
    arr = np.asarray(gamma, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise DomainError(f"gamma must be finite and >= 0, got {gamma!r}")
    nodes, weights = _hermite_rule(quad.hermite_nodes)
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    for start in range(0, flat.size, _CHUNK):
        stop = min(start + _CHUNK, flat.size)
        out[start:stop] = _mi_exact_chunk(flat[start:stop], nodes, weights)
    if np.isscalar(gamma) or arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def mi_awgn_approx(gamma, rate: float = MI_APPROX_RATE):
    """Exponential approximation ``1 - exp(-rate * gamma)`` in bits/symbol."""
    arr = np.asarray(gamma, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise DomainError(f"gamma must be finite and >= 0, got {gamma!r}")
    out = -np.expm1(-rate * arr)
    return float(out) if np.isscalar(gamma) or arr.ndim == 0 else out
