"""Bargmann transform, Cauchy-integral Taylor coefficients and ray bounds.

    Bf(w) = exp(-w^2/4) / sqrt(pi) * int exp(x w) exp(-x^2/2) f(x) dx

maps ``phi_n`` to ``w^n / sqrt(2^n n! sqrt(pi))``, so the Taylor coefficients
``c_n`` of ``Bf`` and the Hermite coefficients are related by
``<f, phi_n> = sqrt(2^n n! sqrt(pi)) c_n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import DecayConstants, _as_pair, solve_lemma21
from .gaussians import ComplexGaussian, check_membership
from .hermite import (
    BARGMANN_TAYLOR,
    HERMITE_INNER_PRODUCT,
    LOG_PI,
    CoefficientSequence,
    HermiteExpansion,
    QuadratureRule,
    gauss_hermite,
    log_hermite_norm,
)

ENVELOPE = 40.0
TWO_PI = 2 * math.pi

EQ3, EQ4, EQ5, EQ6 = "eq3", "eq4", "eq5", "eq6"


class AccuracyEnvelopeError(ValueError):
    """``|w|^2 A / 4`` beyond the range where quadrature sums stay accurate."""


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# evaluation

_default_rule: QuadratureRule | None = None


def _rule() -> QuadratureRule:
    global _default_rule
    if _default_rule is None:
        _default_rule = gauss_hermite(512)
    return _default_rule


def bargmann_log(f, w, A: float = 1.0, rule: QuadratureRule | None = None):
    """Principal ``log Bf(w)`` (complex), vectorized over ``w``.

    Closed form for complex Gaussians, exact monomial sum for Hermite
    expansions, Gauss-Hermite quadrature otherwise. Quadrature is refused
    outside ``|w|^2 A / 4 <= 40``.
    """
    w = np.asarray(w, dtype=complex)
    if isinstance(f, ComplexGaussian):
        return f.log_bargmann(w)
    if isinstance(f, HermiteExpansion):
        c = f.coefficients
        idx = c.nonzero_indices
        if idx.size == 0:
            return np.full(w.shape, complex(-np.inf, 0))
        logc = c.log_magnitude[idx] + 1j * c.phase[idx] - log_hermite_norm(idx)
        wf = w.reshape(-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            logw = np.log(wf)
            terms = logc[:, None] + idx[:, None] * logw[None, :]
        # w^0 = 1 also at w = 0
        terms = np.where(idx[:, None] == 0, logc[:, None], terms)
        re = terms.real
        top = np.max(re, axis=0)
        top = np.where(np.isfinite(top), top, 0.0)
        with np.errstate(under="ignore"):
            total = np.where(np.isneginf(re), 0, np.exp(terms - top)).sum(axis=0)
        with np.errstate(divide="ignore"):
            return (np.log(total) + top).reshape(w.shape)

    if np.any(np.abs(w) ** 2 * A / 4 > ENVELOPE):
        raise AccuracyEnvelopeError(
            f"|w|^2 A/4 exceeds {ENVELOPE}; quadrature-based Bargmann values would be unreliable")
    rule = _rule() if rule is None else rule
    x = rule.nodes.astype(float)
    logf = np.asarray(f.log_eval(x), dtype=complex)
    live = ~np.isneginf(logf.real)
    x, logf = x[live], logf[live]
    logw8 = rule.log_compensated.astype(float)[live]
    wf = w.reshape(-1)
    terms = (logw8 + logf - 0.5 * x * x)[None, :] + np.outer(wf, x)
    top = terms.real.max(axis=1, keepdims=True)
    total = np.exp(terms - top).sum(axis=1)
    out = np.log(total) + top[:, 0] - wf * wf / 4 - 0.5 * LOG_PI
    return out.reshape(w.shape)


def bargmann_eval(f, w, A: float = 1.0):
    return np.exp(bargmann_log(f, w, A))


# ---------------------------------------------------------------------------
# Taylor coefficients


def contour_points(n: int) -> int:
    return max(8 * n + 64, 256)


def contour_radius(n: int, A: float) -> float:
    return 1.0 if n == 0 else math.sqrt(2 * n / A)


def contour_coefficients(f, n_max: int, A: float = 1.0) -> CoefficientSequence:
    """Taylor coefficients of ``Bf`` from the Cauchy integral on ``|w| = sqrt(2n/A)``.

    Trapezoidal rule on the circle with ``max(8n + 64, 256)`` points; the
    integrand is divided by its largest modulus before summation. Coefficients
    forced to vanish by the parity of ``f`` are flagged as exact zeros.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    closed = isinstance(f, (ComplexGaussian, HermiteExpansion))
    if not closed and contour_radius(n_max, A) ** 2 * A / 4 > ENVELOPE:
        raise AccuracyEnvelopeError(
            f"contour radius for n={n_max} leaves the accuracy envelope; use n_max <= {int(2 * ENVELOPE)}")
    lm = np.empty(n_max + 1)
    ph = np.empty(n_max + 1)
    for n in range(n_max + 1):
        m = contour_points(n)
        radius = contour_radius(n, A)
        t = TWO_PI * np.arange(m) / m
        logb = bargmann_log(f, radius * np.exp(1j * t), A) - 1j * n * t
        top = logb.real.max()
        s = np.exp(logb - top).sum() / m
        with np.errstate(divide="ignore"):
            lc = np.log(s) + top - n * math.log(radius)
        lm[n], ph[n] = lc.real, lc.imag
    parity = getattr(f, "parity", None)
    if parity is not None:
        lm[(1 - parity)::2] = -np.inf
    return CoefficientSequence(lm, ph, BARGMANN_TAYLOR)


def coefficient_relation(seq: CoefficientSequence) -> CoefficientSequence:
    """Bargmann Taylor coefficients to Hermite coefficients.

    Multiplies by ``sqrt(2^n n! sqrt(pi))`` in log-domain. With the real
    ``phi_n`` and ``<f, phi_n> = int f phi_n`` the relation is linear, so the
    phases carry over unchanged.
    """
    if seq.kind != BARGMANN_TAYLOR:
        raise ValueError(f"expected a {BARGMANN_TAYLOR} sequence, got {seq.kind}")
    n = np.arange(len(seq))
    return CoefficientSequence(seq.log_magnitude + log_hermite_norm(n), seq.phase,
                               HERMITE_INNER_PRODUCT)


# ---------------------------------------------------------------------------
# ray bounds


def bound_exponent(k: DecayConstants, theta, tag: str):
    """Coefficient of ``r^2/4`` in the log of the bound with the given tag."""
    theta = np.asarray(theta, dtype=float)
    if tag == EQ3:
        return k.A * np.sin(2 * theta - 2 * k.tau)
    if tag == EQ4:
        return k.A * np.sin(-2 * theta - 2 * k.tau)
    if tag == EQ5:
        return k.mu + (1 - k.mu) * np.sin(theta) ** 2
    if tag == EQ6:
        return k.nu + (1 - k.nu) * np.cos(theta) ** 2
    raise ValueError(f"unknown bound tag {tag!r}")


def sector_tag(k: DecayConstants, theta: float, eps: float = 1e-14) -> str:
    """The bound that applies on the ray at angle ``theta``.

    Sharp bounds hold on ``[t0, t1]``, ``[t0 + pi, t1 + pi]`` (eq3) and
    ``[pi - t1, pi - t0]``, ``[2pi - t1, 2pi - t0]`` (eq4). Elsewhere the
    smaller of the two global bounds is used.
    """
    th = math.fmod(theta, TWO_PI)
    if th < 0:
        th += TWO_PI
    t0, t1 = k.theta0, k.theta1
    pi = math.pi

    def within(lo, hi):
        return any(lo - eps <= x <= hi + eps for x in (th, th - TWO_PI, th + TWO_PI))

    if within(t0, t1) or within(t0 + pi, t1 + pi):
        return EQ3
    if within(pi - t1, pi - t0) or within(TWO_PI - t1, TWO_PI - t0):
        return EQ4
    return EQ5 if bound_exponent(k, th, EQ5) <= bound_exponent(k, th, EQ6) else EQ6


def log_bound_prefactor(c: float, k: DecayConstants) -> float:
    """``log(C sqrt(2/(1+m)))``, used for every tag."""
    return math.log(c) + 0.5 * math.log(2 / (1 + k.m))


@dataclass(frozen=True, eq=False)
class RayBoundReport:
    theta: float
    r_samples: np.ndarray
    log_transform: np.ndarray
    log_bound: np.ndarray
    max_excess: float
    applicable_bound: str

    def passed(self, tol: float = math.log1p(1e-6)) -> bool:
        return self.max_excess <= tol


def ray_bound_check(f, pair, theta: float, r_max: float, samples: int = 64,
                    c_env: float | None = None) -> RayBoundReport:
    """Compare ``log|Bf(r e^{i theta})|`` with the sector's bound for ``0 <= r <= r_max``.

    ``c_env`` defaults to the membership witness constant of ``f``; a
    non-member raises :class:`PreconditionError`.
    """
    pair = _as_pair(pair)
    k = solve_lemma21(pair)
    if c_env is None:
        c_env = pair.c_env
    if c_env is None:
        rep = check_membership(f, pair)
        if not rep.is_member:
            raise PreconditionError(
                f"f is not in E({pair.a}, {pair.b}): domination fails near x={rep.violation_point}")
        c_env = rep.witness_constant
    if samples < 2 or not r_max > 0:
        raise ValueError("need samples >= 2 and r_max > 0")
    r = np.linspace(0.0, r_max, samples)
    tag = sector_tag(k, theta)
    log_t = bargmann_log(f, r * np.exp(1j * theta), k.A).real
    log_b = log_bound_prefactor(c_env, k) + float(bound_exponent(k, theta, tag)) * r * r / 4
    excess = log_t - log_b
    return RayBoundReport(float(theta), r, log_t, log_b, float(np.max(excess)), tag)


def ray_radius_limit(A: float, budget: float = 30.0) -> float:
    """Largest ``r`` with ``r^2 A / 4 <= budget``."""
    return math.sqrt(4 * budget / A)


# ---------------------------------------------------------------------------
# the three arc integrals


@dataclass(frozen=True)
class ArcIntegrals:
    n: int
    log_I: float
    log_J: float
    log_K: float
    constants: DecayConstants

    @property
    def j_normalized(self) -> float:
        """``log J_n - n/2 + log(n)/2``, which tends to ``log(pi)/2``."""
        return self.log_J - self.n / 2 + 0.5 * math.log(self.n)

    @property
    def i_ratio_bound(self) -> float:
        k = self.constants
        return k.theta0 / (k.peak_angle - k.theta0)

    @property
    def k_ratio_bound(self) -> float:
        k = self.constants
        return (math.pi / 2 - k.theta1) / (k.theta1 - k.peak_angle)

    @property
    def log_i_pointwise_bound(self) -> float:
        """``log(theta0 exp((n/2) sin(2 theta0 - 2 tau)))``."""
        k = self.constants
        return math.log(k.theta0) + self.n / 2 * math.sin(2 * k.theta0 - 2 * k.tau)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _log_peaked_integral(h, lo: float, hi: float, peak: float, n: int, levels: int = 48) -> float:
    """``log int_lo^hi exp(n h(t)) dt`` for ``h`` maximal at ``peak``.

    Composite Gauss-Legendre on panels that shrink geometrically toward the
    peak; the peak value is factored out before exponentiation.
    """
    if hi <= lo:
        return -math.inf
    hp = h(peak)
    cuts = {lo, hi, min(max(peak, lo), hi)}
    for side in (lo, hi):
        span = abs(side - peak)
        for j in range(levels):
            d = span * 0.5 ** j
            x = peak + math.copysign(d, side - peak)
            if lo <= x <= hi:
                cuts.add(x)
    cuts = sorted(cuts)
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        t = 0.5 * (b - a) * _GL_NODES + 0.5 * (a + b)
        total += 0.5 * (b - a) * float(np.dot(_GL_WEIGHTS, np.exp(n * (h(t) - hp))))
    return n * hp + math.log(total)


def ijk_integrals(pair, n: int) -> ArcIntegrals:
    """Logs of the arc integrals ``I_n`` (``[0, t0]``), ``J_n`` (``[t0, t1]``), ``K_n`` (``[t1, pi/2]``)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = solve_lemma21(pair)
    A, mu, nu, tau = k.A, k.mu, k.nu, k.tau

    def h_i(t):
        return (mu + (1 - mu) * np.sin(t) ** 2) / (2 * A)

    def h_j(t):
        return 0.5 * np.sin(2 * t - 2 * tau)

    def h_k(t):
        return (nu + (1 - nu) * np.cos(t) ** 2) / (2 * A)

    log_i = _log_peaked_integral(h_i, 0.0, k.theta0, k.theta0, n)
    log_j = _log_peaked_integral(h_j, k.theta0, k.theta1, k.peak_angle, n)
    log_k = _log_peaked_integral(h_k, k.theta1, math.pi / 2, k.theta1, n)
    return ArcIntegrals(n, log_i, log_j, log_k, k)
