"""Complex Gaussians ``g_z(x) = exp(-z x^2 / 2)``, ``Re z > 0``.

This family is closed under the Fourier transform and contains the extremal
functions of the decay estimate, so every quantity of interest has a closed
form here:

* envelopes: ``|g_z| = g_{Re z}``, ``|g_z^| = |z|^{-1/2} g_{Re(1/z)}``
* Fourier transform: ``g_z^ = z^{-1/2} g_{1/z}``
* Bargmann transform: ``B g_z(w) = sqrt(2/(1+z)) exp(beta w^2 / 4)`` with
  ``beta = (1 - z)/(1 + z)``, obtained by completing the square.

All square roots are principal, evaluated as ``exp(log(.)/2)``; their
arguments have positive real part so the branch cut is never approached.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from .constants import GaussianEnvelopePair, _as_pair, solve_lemma21
from .hermite import LOG_PI, CoefficientSequence, HERMITE_INNER_PRODUCT


@dataclass(frozen=True)
class ComplexGaussian:
    z: complex

    parity = 0

    def __post_init__(self):
        z = complex(self.z)
        if not z.real > 0:
            raise ValueError(f"Re z must be positive, got z={z}")
        object.__setattr__(self, "z", z)

    @property
    def beta(self) -> complex:
        return (1 - self.z) / (1 + self.z)

    @property
    def bargmann_prefactor(self) -> complex:
        return cmath.exp(0.5 * cmath.log(2 / (1 + self.z)))

    def log_eval(self, x):
        x = np.asarray(x)
        if x.dtype.kind != "f":
            x = x.astype(float)
        return -(self.z * x * x) / 2

    def __call__(self, x):
        return np.exp(self.log_eval(x))

    def log_fourier(self, xi):
        scale, g_hat = fourier(self)
        return cmath.log(scale) + g_hat.log_eval(xi)

    def log_bargmann(self, w):
        w = np.asarray(w, dtype=complex)
        return 0.5 * cmath.log(2 / (1 + self.z)) + self.beta * w * w / 4


def envelope_exponents(g: ComplexGaussian) -> tuple[float, float]:
    """``(Re z, Re(1/z))``, the Gaussian exponents dominating ``|g|`` and ``|g^|``."""
    return g.z.real, (1 / g.z).real


def fourier(g: ComplexGaussian) -> tuple[complex, ComplexGaussian]:
    """``g_z^ = scale * g_{1/z}`` with ``scale = z^{-1/2}`` (principal)."""
    return cmath.exp(-0.5 * cmath.log(g.z)), ComplexGaussian(1 / g.z)


def extremal_function(pair) -> ComplexGaussian:
    """The Gaussian with ``Re z = a`` and ``Re(1/z) = b`` attaining the rate.

    ``z = (1 + u)/(1 - u)`` with ``u = i A exp(-2 i tau)``.
    """
    k = solve_lemma21(pair)
    u = 1j * k.A * cmath.exp(-2j * k.tau)
    return ComplexGaussian((1 + u) / (1 - u))


def extremal_imag_part(pair) -> float:
    """``sqrt(a (1 - ab) / b)``: closed form of ``Im z`` for the extremal member."""
    pair = _as_pair(pair)
    return math.sqrt(pair.a * (1 - pair.a * pair.b) / pair.b)


def closed_form_coefficients(g: ComplexGaussian, n_max: int) -> CoefficientSequence:
    """Exact ``<g_z, phi_n>`` for ``n <= n_max``.

    ``<g_z, phi_{2k}> = sqrt(2/(1+z)) pi^{1/4} sqrt((2k)!) beta^k / (2^k k!)``;
    odd entries vanish. Magnitudes are assembled from log-gamma so large
    ``n`` never forms a factorial.
    """
    if not 0 <= n_max <= 400:
        raise ValueError(f"n_max must be in [0, 400], got {n_max}")
    n = np.arange(n_max + 1)
    k = n // 2
    log_pref = 0.5 * cmath.log(2 / (1 + g.z))
    beta = g.beta
    log_beta = cmath.log(beta) if beta != 0 else complex(-np.inf, 0.0)
    lm = np.full(n_max + 1, -np.inf)
    ph = np.zeros(n_max + 1)
    even = n % 2 == 0
    ke = k[even]
    with np.errstate(invalid="ignore"):
        beta_part_re = np.where(ke > 0, ke * log_beta.real, 0.0)
    lm[even] = (log_pref.real + 0.25 * LOG_PI + 0.5 * gammaln(n[even] + 1)
                + beta_part_re - ke * math.log(2) - gammaln(ke + 1))
    ph[even] = log_pref.imag + np.where(ke > 0, ke * log_beta.imag, 0.0)
    return CoefficientSequence(lm, ph, HERMITE_INNER_PRODUCT)


@dataclass(frozen=True)
class MembershipReport:
    pair: GaussianEnvelopePair
    is_member: bool
    witness_constant: float
    violation_point: Optional[float]
    c_time: float
    c_freq: float


def default_grid(exponent: float, points: int = 801) -> np.ndarray:
    half = 12.0 / math.sqrt(min(exponent, 1.0))
    return np.linspace(-half, half, points)


def _side(log_abs, grid, exponent, slope_tol):
    grid = np.asarray(grid, dtype=float)
    log_ratio = log_abs + 0.5 * exponent * grid * grid
    top = float(np.max(log_ratio))
    r = np.abs(grid)
    outer = r >= 0.75 * r.max()
    finite = outer & np.isfinite(log_ratio)
    violation = None
    if finite.sum() >= 2:
        slope = np.polyfit(r[finite], log_ratio[finite], 1)[0]
        if slope > slope_tol:
            idx = np.flatnonzero(finite)
            violation = float(grid[idx[np.argmax(log_ratio[idx])]])
    return top, violation


def check_membership(f, pair, x_grid=None, xi_grid=None,
                     slope_tol: float = 1e-3) -> MembershipReport:
    """Smallest C with ``|f| <= C g_a`` and ``|f^| <= C g_b`` on the grids.

    Domination is declared violated when the log of ``|f|/g_a`` (or of the
    Fourier side) has slope above ``slope_tol`` in ``|x|`` over the outer
    quarter of the grid.
    """
    pair = _as_pair(pair)
    x_grid = default_grid(pair.a) if x_grid is None else np.asarray(x_grid, dtype=float)
    xi_grid = default_grid(pair.b) if xi_grid is None else np.asarray(xi_grid, dtype=float)
    for grid, e, name in ((x_grid, pair.a, "x_grid"), (xi_grid, pair.b, "xi_grid")):
        need = 12.0 / math.sqrt(min(e, 1.0))
        if np.max(np.abs(grid)) < need * (1 - 1e-12):
            raise ValueError(f"{name} must reach |x| >= {need:.6g}")
    log_fhat = np.asarray(f.log_fourier(xi_grid)).real
    log_f = np.asarray(f.log_eval(x_grid)).real
    top_t, viol_t = _side(log_f, x_grid, pair.a, slope_tol)
    top_f, viol_f = _side(log_fhat, xi_grid, pair.b, slope_tol)
    violation = viol_t if viol_t is not None else viol_f
    member = violation is None
    c_time, c_freq = math.exp(top_t), math.exp(top_f)
    witness = max(c_time, c_freq) if member else math.inf
    return MembershipReport(pair, member, witness, violation, c_time, c_freq)
