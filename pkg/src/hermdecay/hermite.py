"""Hermite functions, Gauss-Hermite rules and numerical inner products.

Hermite functions are normalized so that ``<phi_n, phi_m> = delta_nm`` and are
generated by the upward recurrence

    phi_0(x)     = pi^{-1/4} exp(-x^2/2)
    phi_{n+1}(x) = x sqrt(2/(n+1)) phi_n(x) - sqrt(n/(n+1)) phi_{n-1}(x).

The recurrence is run on mantissas with a separate per-point log scale, so
that neither the Gaussian factor (underflow for |x| > 27) nor the polynomial
growth of high orders can leave the double range before the final product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Protocol

import mpmath
import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

LOG_PI = math.log(math.pi)
MAX_ORDER = 1024
QUAD_MARGIN = 64

_RESCALE_ABOVE = 1e100
_NEWTON_STEPS = 3

HERMITE_INNER_PRODUCT = "hermite_inner_product"
BARGMANN_TAYLOR = "bargmann_taylor"


class QuadratureOrderError(ValueError):
    """Quadrature order below the ``2*n_max + 64`` accuracy policy."""


class UnsupportedInputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# recurrence core


def scaled_recurrence(n_max: int, x, log_start, start=1.0):
    """Run the normalized Hermite recurrence with log-scale bookkeeping.

    The starting value at each ``x`` is ``start * exp(log_start)`` times the
    polynomial part; with ``log_start = -x**2/2 - log(pi)/4`` and ``start = 1``
    this yields ``phi_n(x)``. Arithmetic follows the precision of ``x``
    (float64 or longdouble); ``start`` may be complex.

    Returns
    -------
    mant : ndarray, shape (n_max + 1, len(x))
    scale : ndarray, shape (n_max + 1, len(x))
        ``mant[n] * exp(scale[n])`` is the n-th value.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    x = np.atleast_1d(np.asarray(x))
    if x.dtype.kind != "f":
        x = x.astype(float)
    real = x.dtype.type
    log_start = np.broadcast_to(np.asarray(log_start, dtype=x.dtype), x.shape)
    start = np.asarray(start)
    dtype = np.result_type(start.dtype, x.dtype)
    start = np.broadcast_to(start.astype(dtype), x.shape)

    mant = np.empty((n_max + 1, x.size), dtype=dtype)
    scale = np.empty((n_max + 1, x.size), dtype=x.dtype)
    prev = np.zeros(x.size, dtype=dtype)
    cur = np.array(start, dtype=dtype)
    s = np.array(log_start, dtype=x.dtype)
    mant[0] = cur
    scale[0] = s
    one = real(1)
    for n in range(n_max):
        up = np.sqrt(real(2) / real(n + 1))
        down = np.sqrt(real(n) / real(n + 1))
        nxt = x * up * cur - down * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_ABOVE
        if big.any():
            f = np.where(big, np.abs(cur), one)
            cur = cur / f
            prev = prev / f
            s = s + np.log(f)
        mant[n + 1] = cur
        scale[n + 1] = s
    return mant, scale


def hermite_values(n_max: int, x):
    """``phi_0(x), ..., phi_{n_max}(x)``.

    Scalar ``x`` gives shape ``(n_max + 1,)``; array ``x`` gives
    ``(n_max + 1, len(x))``.
    """
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    mant, scale = scaled_recurrence(n_max, xa, -0.5 * xa * xa - 0.25 * LOG_PI)
    with np.errstate(under="ignore"):
        vals = mant * np.exp(scale)
    return vals[:, 0] if scalar else vals


def hermite_direct(n: int, x: float, dps: int = 60) -> float:
    """Single ``phi_n(x)`` from the explicit monomial sum of ``H_n``.

    ``H_n(x) = n! sum_k (-1)^k (2x)^{n-2k} / (k! (n-2k)!)``, normalized by
    ``(2^n n! sqrt(pi))^{-1/2}`` through log-gamma. The alternating sum cancels
    heavily for large ``n``, so it is done at ``dps`` decimal digits.
    Independent of the recurrence; used as a cross-check.
    """
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        total = mpmath.fsum(
            (-1) ** k * mpmath.exp(mpmath.loggamma(n + 1) - mpmath.loggamma(k + 1)
                                   - mpmath.loggamma(n - 2 * k + 1))
            * (2 * xm) ** (n - 2 * k)
            for k in range(n // 2 + 1)
        )
        log_norm = -(n * mpmath.log(2) + mpmath.loggamma(n + 1) + mpmath.log(mpmath.pi) / 2) / 2
        return float(total * mpmath.exp(log_norm - xm * xm / 2))


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Hermite rule for the weight ``exp(-x^2)``.

    Nodes and log-weights are held in extended precision (``np.longdouble``).
    Inner products of rapidly decaying coefficients cancel by many orders of
    magnitude, and double-precision nodes alone would cap the attainable
    relative accuracy near ``1e-16 / |<f, phi_n>|``. ``log_weights`` is
    authoritative; ``weights`` underflows in double for orders above ~350.
    """

    order: int
    nodes: np.ndarray
    log_weights: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.log_weights.astype(float))

    @property
    def log_compensated(self) -> np.ndarray:
        """``log(w_i) + x_i^2``: log-weights of the rule for plain ``dx``."""
        return self.log_weights + self.nodes ** 2

    def scaled(self, s: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and log-weights for ``int g(x) exp(-x^2/s^2) dx`` via ``x = s*y``."""
        s = np.longdouble(s)
        return s * self.nodes, self.log_weights + np.log(s)


def gauss_hermite(order: int) -> QuadratureRule:
    """Gauss-Hermite nodes and weights by the Golub-Welsch eigenproblem.

    Nodes come from the symmetric tridiagonal Jacobi matrix (off-diagonal
    ``sqrt(k/2)``) and are polished by Newton steps on the scaled recurrence
    in extended precision. Weights use the Christoffel form
    ``w_i = 1 / sum_k psi_k(x_i)^2`` with ``psi_k`` the orthonormal
    polynomials, accumulated in log-domain. Node and weight symmetry is
    imposed exactly.
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}], got {order}")
    ld = np.longdouble
    log_pi = np.log(ld(np.pi))
    if order == 1:
        return QuadratureRule(1, np.zeros(1, dtype=ld), np.array([log_pi / 2]))
    k = np.arange(1, order)
    x = eigh_tridiagonal(np.zeros(order), np.sqrt(k / 2.0), eigvals_only=True)
    x = np.sort(x).astype(ld)

    # psi_M(x) = 0 with psi_M' = sqrt(2M) psi_{M-1}
    for _ in range(_NEWTON_STEPS):
        x = 0.5 * (x - x[::-1])
        mant, _scale = scaled_recurrence(order, x, np.zeros_like(x))
        x = x - mant[order] / (np.sqrt(ld(2 * order)) * mant[order - 1])
    x = 0.5 * (x - x[::-1])
    if order % 2:
        x[order // 2] = 0

    mant, scale = scaled_recurrence(order - 1, x, np.full_like(x, -log_pi / 4))
    nz = mant != 0
    with np.errstate(divide="ignore"):
        logsq = np.where(nz, 2 * np.log(np.abs(np.where(nz, mant, 1))) + 2 * scale, -np.inf)
    top = logsq.max(axis=0)
    logw = -(top + np.log(np.exp(logsq - top).sum(axis=0)))
    logw = 0.5 * (logw + logw[::-1])
    return QuadratureRule(order, x, logw)


def required_order(n_max: int) -> int:
    return 2 * n_max + QUAD_MARGIN


# ---------------------------------------------------------------------------
# coefficient sequences


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """Coefficients stored as ``(log|c_n|, arg c_n)``; ``-inf`` marks an exact zero."""

    log_magnitude: np.ndarray
    phase: np.ndarray
    kind: str = HERMITE_INNER_PRODUCT

    def __post_init__(self):
        lm = np.asarray(self.log_magnitude, dtype=float)
        ph = np.asarray(self.phase, dtype=float)
        if lm.shape != ph.shape or lm.ndim != 1:
            raise ValueError("log_magnitude and phase must be 1-D of equal length")
        if np.isnan(lm).any() or np.isposinf(lm).any():
            raise ValueError("log_magnitude must be finite or -inf")
        if self.kind not in (HERMITE_INNER_PRODUCT, BARGMANN_TAYLOR):
            raise ValueError(f"unknown kind {self.kind!r}")
        ph = np.where(np.isneginf(lm), 0.0, _wrap_phase(ph))
        object.__setattr__(self, "log_magnitude", lm)
        object.__setattr__(self, "phase", ph)

    @classmethod
    def from_complex(cls, values, kind: str = HERMITE_INNER_PRODUCT, zero_mask=None):
        v = np.asarray(values, dtype=complex)
        with np.errstate(divide="ignore"):
            lm = np.log(np.abs(v))
        if zero_mask is not None:
            lm = np.where(zero_mask, -np.inf, lm)
        return cls(lm, np.angle(v), kind)

    def __len__(self) -> int:
        return self.log_magnitude.size

    @property
    def n_max(self) -> int:
        return len(self) - 1

    @property
    def zero_mask(self) -> np.ndarray:
        return np.isneginf(self.log_magnitude)

    @property
    def nonzero_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.zero_mask)

    def magnitudes(self) -> np.ndarray:
        with np.errstate(under="ignore", over="ignore"):
            return np.exp(self.log_magnitude)

    def values(self) -> np.ndarray:
        return self.magnitudes() * np.exp(1j * self.phase)

    def log10_magnitude(self) -> np.ndarray:
        return self.log_magnitude / math.log(10)


def _wrap_phase(ph):
    # (-pi, pi]
    out = np.mod(ph + np.pi, 2 * np.pi) - np.pi
    return np.where(out == -np.pi, np.pi, out)


def logsumexp_complex(log_terms, axis=-1):
    """``log(sum(exp(log_terms)))`` for complex logs, returning a complex log.

    Terms with real part ``-inf`` are exact zeros.
    """
    lt = np.asarray(log_terms, dtype=complex)
    re = lt.real
    top = np.max(np.where(np.isneginf(re), -np.inf, re), axis=axis, keepdims=True)
    top_safe = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(under="ignore"):
        terms = np.where(np.isneginf(re), 0.0, np.exp(lt - top_safe))
    total = terms.sum(axis=axis)
    top = np.squeeze(top_safe, axis=axis)
    with np.errstate(divide="ignore"):
        return np.log(total) + top


def log_hermite_norm(n):
    """``log sqrt(2^n n! sqrt(pi))``: relates Bargmann Taylor and Hermite coefficients."""
    n = np.asarray(n, dtype=float)
    return 0.5 * (n * math.log(2.0) + gammaln(n + 1) + 0.5 * LOG_PI)


# ---------------------------------------------------------------------------
# test functions


class TestFunction(Protocol):
    parity: Optional[int]

    def log_eval(self, x) -> np.ndarray: ...

    def log_fourier(self, xi) -> np.ndarray: ...


@dataclass(frozen=True, eq=False)
class HermiteExpansion:
    """Finite sum ``sum_n c_n phi_n`` with the ``c_n`` held as a coefficient sequence."""

    coefficients: CoefficientSequence

    __test__ = False

    @classmethod
    def basis(cls, k: int) -> "HermiteExpansion":
        lm = np.full(k + 1, -np.inf)
        lm[k] = 0.0
        return cls(CoefficientSequence(lm, np.zeros(k + 1)))

    @classmethod
    def from_values(cls, values) -> "HermiteExpansion":
        return cls(CoefficientSequence.from_complex(values))

    @property
    def parity(self) -> Optional[int]:
        idx = self.coefficients.nonzero_indices
        if idx.size == 0:
            return 0
        par = set(int(i) % 2 for i in idx)
        return par.pop() if len(par) == 1 else None

    def _sum(self, x, phase_turn):
        xa = np.atleast_1d(np.asarray(x))
        if xa.dtype.kind != "f":
            xa = xa.astype(float)
        c = self.coefficients
        mant, scale = scaled_recurrence(c.n_max, xa, -0.5 * xa * xa - 0.25 * LOG_PI)
        idx = c.nonzero_indices
        if idx.size == 0:
            return np.full(xa.shape, -np.inf + 0j)
        turn = (-1j) ** idx if phase_turn else np.ones(idx.size)
        coef = np.exp(c.log_magnitude[idx] + 1j * c.phase[idx]) * turn
        top = scale[idx].max(axis=0)
        with np.errstate(under="ignore"):
            total = (coef[:, None] * mant[idx] * np.exp(scale[idx] - top)).sum(axis=0)
        with np.errstate(divide="ignore"):
            return np.log(total + 0j) + top

    def log_eval(self, x):
        return self._sum(x, False)

    def log_fourier(self, xi):
        # F phi_n = (-i)^n phi_n
        return self._sum(xi, True)

    def __call__(self, x):
        return np.exp(self.log_eval(x))


@dataclass(frozen=True, eq=False)
class Sampled:
    """Tabulated function, cubic-spline interpolated, zero outside the grid.

    Lower accuracy than the closed-form inputs: the spline is only C^2 so
    quadrature error no longer decays spectrally.
    """

    grid: np.ndarray
    values: np.ndarray
    parity: Optional[int] = None

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if g.ndim != 1 or g.shape != v.shape or g.size < 4:
            raise ValueError("grid and values must be 1-D, equal length, at least 4 points")
        if np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    @property
    def half_width(self) -> float:
        return float(min(-self.grid[0], self.grid[-1]))

    def _spline(self):
        return CubicSpline(self.grid, self.values)

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        inside = (xa >= self.grid[0]) & (xa <= self.grid[-1])
        return np.where(inside, self._spline()(np.clip(xa, self.grid[0], self.grid[-1])), 0.0)

    def log_eval(self, x):
        with np.errstate(divide="ignore"):
            return np.log(np.asarray(self(x), dtype=complex))

    def log_fourier(self, xi, tail_tol: float = 1e-12):
        peak = np.max(np.abs(self.values))
        if max(abs(self.values[0]), abs(self.values[-1])) > tail_tol * peak:
            raise UnsupportedInputError(
                "sampled function does not decay to the grid edge; Fourier transform unavailable")
        xs = np.linspace(self.grid[0], self.grid[-1], 8 * self.grid.size + 1)
        fx = self(xs)
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        kern = np.exp(-1j * np.outer(xi, xs))
        vals = np.trapezoid(kern * fx, xs, axis=1) / math.sqrt(2 * math.pi)
        with np.errstate(divide="ignore"):
            return np.log(vals.astype(complex))


# ---------------------------------------------------------------------------
# inner products


def hermite_coefficients(f, n_max: int, rule: QuadratureRule,
                         allow_low_order: bool = False) -> CoefficientSequence:
    """``<f, phi_n>`` for ``n = 0..n_max`` by Gauss-Hermite quadrature.

    Realized as ``sum_i w_i exp(x_i^2) f(x_i) phi_n(x_i)``; every factor is
    carried as a logarithm until the final per-``n`` sum, so the
    compensation ``exp(x_i^2)`` never overflows.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    if rule.order < required_order(n_max) and not allow_low_order:
        raise QuadratureOrderError(
            f"rule order {rule.order} < 2*n_max+{QUAD_MARGIN} = {required_order(n_max)}; "
            "pass allow_low_order=True to override")
    x = rule.nodes
    logf = np.asarray(f.log_eval(x)).astype(np.clongdouble)
    live = ~np.isneginf(logf.real)
    x, logf, logw = x[live], logf[live], rule.log_compensated[live]
    log_start = logw + logf.real - x * x / 2 - np.log(np.longdouble(np.pi)) / 4
    mant, scale = scaled_recurrence(n_max, x, log_start, np.exp(1j * logf.imag))
    top = scale.max(axis=1, keepdims=True)
    with np.errstate(under="ignore"):
        total = (mant * np.exp(scale - top)).sum(axis=1)
    with np.errstate(divide="ignore"):
        logc = (np.log(total) + top[:, 0]).astype(complex)
    zero = np.zeros(n_max + 1, dtype=bool)
    parity = getattr(f, "parity", None)
    if parity is not None:
        zero[(1 - parity)::2] = True
    lm = np.where(zero, -np.inf, logc.real)
    return CoefficientSequence(lm, logc.imag, HERMITE_INNER_PRODUCT)


def fourier_eigen_check(n: int, rule: QuadratureRule, xi=None) -> float:
    """Max over ``xi`` of ``|F phi_n(xi) - (-i)^n phi_n(xi)|``.

    ``F phi_n(xi) = (2 pi)^{-1/2} int phi_n(x) exp(-i xi x) dx`` is evaluated
    with the rule stretched by sqrt(2), so that after removing the weight the
    integrand is a polynomial times ``exp(-i xi x)``.
    """
    if not 0 <= n <= 64:
        raise ValueError(f"n must be in [0, 64], got {n}")
    if xi is None:
        xi = np.linspace(-6.0, 6.0, 49)
    xi = np.asarray(xi, dtype=float)
    x, logw = rule.scaled(math.sqrt(2.0))
    # phi_n(x) * exp(x^2/2): start the recurrence at pi^{-1/4}
    mant, scale = scaled_recurrence(n, x, logw - 0.25 * LOG_PI)
    with np.errstate(under="ignore"):
        g = mant[n] * np.exp(scale[n])
    ft = (np.exp(-1j * np.outer(xi, x)) @ g) / math.sqrt(2 * math.pi)
    ref = (-1j) ** n * hermite_values(n, xi)[n]
    return float(np.max(np.abs(ft - ref)))
