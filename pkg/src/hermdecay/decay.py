"""Decay-rate estimation and end-to-end checks of the Hermite decay envelope.

The envelope for ``f`` in ``E(a, b)`` is

    |<f, phi_n>| <= C n^{-1/4} A^{n/2},    A = A(a, b),

and the extremal complex Gaussian attains it up to the constant. Everything
here works on log-magnitudes, so ``n`` in the hundreds is routine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .constants import _as_pair, decay_rate
from .gaussians import closed_form_coefficients, extremal_function
from .hermite import HERMITE_INNER_PRODUCT, LOG_PI, CoefficientSequence, hermite_values

REFERENCE_CONSTANT = (2 / math.pi ** 3) ** 0.25
MIN_NONZERO = 10


class InsufficientDataError(ValueError):
    pass


class TruncationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EnvelopeFit:
    n_range: tuple[int, int]
    fitted_rate: float
    fitted_power: float
    fitted_constant: float
    envelope_constant: float
    max_envelope_excess: float
    target_rate: float
    n: np.ndarray
    excess: np.ndarray

    def tail_slope(self, window: int = 50) -> float:
        """Least-squares slope of the excess over indices in the last ``window``."""
        sel = self.n > self.n_range[1] - window
        if sel.sum() < 2:
            return 0.0
        return float(np.polyfit(self.n[sel], self.excess[sel], 1)[0])


def _usable(seq: CoefficientSequence, n_lo: int):
    n = np.arange(len(seq))
    keep = (~seq.zero_mask) & (n >= n_lo)
    return n[keep], seq.log_magnitude[keep]


def envelope_excess(seq: CoefficientSequence, A: float, log_c: float = 0.0) -> np.ndarray:
    """``log|c_n| - [log C - log(n)/4 + (n/2) log A]`` for ``n >= 1``; ``-inf`` at zeros.

    Entry 0 is returned as ``nan`` (the envelope is stated for ``n >= 1``).
    """
    n = np.arange(len(seq), dtype=float)
    with np.errstate(divide="ignore"):
        env = log_c - 0.25 * np.log(n) + 0.5 * n * math.log(A)
    out = seq.log_magnitude - env
    out[0] = np.nan
    return out


def theorem13_envelope(seq: CoefficientSequence, pair, n_lo: int = 2,
                       log_c: float | None = None) -> EnvelopeFit:
    """Fit ``log|c_n| ~ log K + p log n + r n`` and measure the sharp envelope.

    The fit is least squares weighted by ``n``. Unless ``log_c`` is given, the
    envelope constant is the weighted mean of
    ``log|c_n| + log(n)/4 - (n/2) log A`` with the rate fixed at ``A(a, b)``.
    """
    if seq.kind != HERMITE_INNER_PRODUCT:
        raise ValueError("envelope check needs Hermite inner products")
    if n_lo < 2:
        raise ValueError("n_lo must be >= 2")
    pair = _as_pair(pair)
    A = decay_rate(pair)
    n, lm = _usable(seq, n_lo)
    if n.size < MIN_NONZERO:
        raise InsufficientDataError(
            f"{n.size} nonzero coefficients with n >= {n_lo}; need {MIN_NONZERO}")
    w = np.sqrt(n.astype(float))
    design = np.column_stack([np.ones(n.size), np.log(n), n.astype(float)])
    coef, *_ = np.linalg.lstsq(design * w[:, None], lm * w, rcond=None)
    resid_fixed = lm + 0.25 * np.log(n) - 0.5 * n * math.log(A)
    log_env_c = float(np.average(resid_fixed, weights=n)) if log_c is None else float(log_c)
    excess = resid_fixed - log_env_c
    return EnvelopeFit(
        n_range=(int(n[0]), int(seq.n_max)),
        fitted_rate=float(coef[2]),
        fitted_power=float(coef[1]),
        fitted_constant=float(math.exp(coef[0])),
        envelope_constant=math.exp(log_env_c),
        max_envelope_excess=float(excess.max()),
        target_rate=0.5 * math.log(A),
        n=n,
        excess=excess,
    )


def rate_estimate(seq: CoefficientSequence) -> float:
    """Geometric rate per unit ``n`` from consecutive nonzero ratios.

    Local slopes ``(log|c_m| - log|c_n|)/(m - n)`` over the last third of the
    nonzero entries are extrapolated linearly in ``1/n`` to ``n -> inf``; the
    extremal ratios carry a ``-1/(8k)`` first-order correction.
    """
    n = seq.nonzero_indices
    if n.size < MIN_NONZERO:
        raise InsufficientDataError(f"{n.size} nonzero entries; need {MIN_NONZERO}")
    lm = seq.log_magnitude[n]
    slopes = np.diff(lm) / np.diff(n)
    mids = 0.5 * (n[1:] + n[:-1]).astype(float)
    tail = slice(len(slopes) - max(len(slopes) // 3, 3), None)
    fit = np.polyfit(1.0 / mids[tail], slopes[tail], 1)
    return float(fit[1])


def stirling_conversion(n: int, A: float) -> float:
    """Bounded remainder when the contour estimate is converted to Hermite form.

    ``log[n^{-1/2} (Ae/2n)^{n/2}] + log sqrt(2^n n! sqrt(pi))``
    minus ``log[n^{-1/4} A^{n/2}]``; it tends to ``log(2 pi^2)/4``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    contour = -0.5 * math.log(n) + 0.5 * n * math.log(A * math.e / (2 * n))
    relation = 0.5 * (n * math.log(2) + gammaln(n + 1) + 0.5 * LOG_PI)
    target = -0.25 * math.log(n) + 0.5 * n * math.log(A)
    return contour + relation - target


STIRLING_LIMIT = 0.25 * math.log(2 * math.pi ** 2)


@dataclass(frozen=True, eq=False)
class SharpnessReport:
    constant_estimate: float
    reference_constant: float
    n: np.ndarray
    normalized: np.ndarray

    def tail_differences(self, past: int = 100) -> np.ndarray:
        sel = self.n[1:] > past
        return np.abs(np.diff(self.normalized))[sel]


def sharpness_report(pair, n_max: int = 200) -> SharpnessReport:
    """Limit of ``|<f, phi_n>| n^{1/4} A^{-n/2}`` over even ``n`` for the extremal ``f``.

    Reported next to ``(2/pi^3)^{1/4}``, not asserted against it.
    """
    if n_max < 100:
        raise ValueError("n_max must be >= 100")
    pair = _as_pair(pair)
    A = decay_rate(pair)
    seq = closed_form_coefficients(extremal_function(pair), n_max)
    n = np.arange(2, n_max + 1, 2)
    log_norm = seq.log_magnitude[n] + 0.25 * np.log(n) - 0.5 * n * math.log(A)
    vals = np.exp(log_norm)
    tail = n >= n_max // 2
    # first-order correction is O(1/n)
    fit = np.polyfit(1.0 / n[tail], vals[tail], 2)
    return SharpnessReport(float(fit[-1]), REFERENCE_CONSTANT, n, vals)


def eq1_reconstruction_check(t: float, r: float, n_max: int = 60, x_grid=None,
                             coefficients=None) -> tuple[float, float]:
    """Witness constant for ``sum_n e^{-2nt} phi_n`` in the tanh class.

    Returns ``(C, s)`` with ``s = tanh(2 r t)`` and ``C`` the smallest constant
    with ``|f(x)| <= C exp(-s x^2 / 2)`` on the grid. ``t = inf`` means
    ``f = phi_0``. Explicit ``coefficients`` override the geometric sequence.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    if x_grid is None:
        x_grid = np.linspace(-10.0, 10.0, 401)
    x_grid = np.asarray(x_grid, dtype=float)
    if coefficients is None:
        if math.isinf(t):
            coefficients = np.zeros(n_max + 1)
            coefficients[0] = 1.0
        else:
            tail = math.exp(-2 * n_max * t)
            if tail > 1e-14:
                raise TruncationError(f"truncation tail e^(-2 n_max t) = {tail:.3g} > 1e-14")
            coefficients = np.exp(-2.0 * t * np.arange(n_max + 1))
    coefficients = np.asarray(coefficients)
    s = math.tanh(2 * r * t)
    vals = coefficients @ hermite_values(len(coefficients) - 1, x_grid)
    with np.errstate(divide="ignore"):
        log_ratio = np.log(np.abs(vals)) + 0.5 * s * x_grid ** 2
    return float(np.exp(np.max(log_ratio))), s


@dataclass(frozen=True)
class BasketMember:
    label: str
    max_excess: float
    tail_slope: float


def _tail_slope(n, excess, n_hi, window):
    sel = (n > n_hi - window) & np.isfinite(excess)
    if sel.sum() < 2:
        return -math.inf
    return float(np.polyfit(n[sel], excess[sel], 1)[0])


def envelope_basket(pair, n_max: int = 200, n_gauss: int = 5, window: int = 50,
                    hermite_k: int = 10) -> list[BasketMember]:
    """Envelope excess of a basket of members of ``E(a, b)`` against one constant.

    The constant is the envelope constant of the extremal function; the basket
    holds the extremal, ``g_c`` for ``n_gauss`` values of ``c`` spread over
    ``[a, 1/b]`` and, when ``a, b < 1``, the basis functions ``phi_k`` for
    ``k <= hermite_k`` (the polynomial factor of ``phi_k`` is only absorbed
    by ``g_a`` when ``a < 1``).
    """
    from .gaussians import ComplexGaussian

    pair = _as_pair(pair)
    A = decay_rate(pair)
    ext = closed_form_coefficients(extremal_function(pair), n_max)
    log_c = math.log(theorem13_envelope(ext, pair).envelope_constant)
    n = np.arange(n_max + 1)
    members = [("extremal", ext)]
    for c in np.linspace(pair.a, 1 / pair.b, n_gauss):
        members.append((f"gauss:{c:.6g}", closed_form_coefficients(ComplexGaussian(c), n_max)))
    if pair.a < 1 and pair.b < 1:
        for k in range(hermite_k + 1):
            lm = np.full(n_max + 1, -np.inf)
            lm[k] = 0.0
            members.append((f"hermite:{k}", CoefficientSequence(lm, np.zeros(n_max + 1))))
    out = []
    for label, seq in members:
        ex = envelope_excess(seq, A, log_c)
        body = ex[1:]
        finite = body[np.isfinite(body)]
        top = float(finite.max()) if finite.size else -math.inf
        out.append(BasketMember(label, top, _tail_slope(n[1:], body, n_max, window)))
    return out
