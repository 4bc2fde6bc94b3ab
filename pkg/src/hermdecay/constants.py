"""Closed-form constants of the Hermite-coefficient decay estimate.

For a pair of Gaussian exponents ``(a, b)`` with ``a*b < 1`` every quantity
below is an explicit algebraic/trigonometric expression:

    mu = (1 - a) / (1 + a),        nu = (1 - b) / (1 + b)
    A  = sqrt((a + b - 2ab) / (a + b + 2ab))
    sin 2tau = (nu - mu) / sqrt((mu + nu - 2 mu nu)(2 - mu - nu))
    (cos 2theta0, sin 2theta0) = ((1 - mu) - 2A sin 2tau, 2A cos 2tau) / (1 + mu)
    (cos 2theta1, sin 2theta1) = ((nu - 1) - 2A sin 2tau, 2A cos 2tau) / (1 + nu)

The angles are recovered with ``atan2`` so the branch is fixed by
construction: ``2 tau`` lies in (-pi/2, pi/2) and ``2 theta_i`` in (0, pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

DEFAULT_TOL = 1e-12
NEAR_DEGENERATE = 1e-12


class OutOfRegimeError(ValueError):
    """Raised when ``a*b >= 1``, where the decay estimate does not apply."""


@dataclass(frozen=True)
class GaussianEnvelopePair:
    """Gaussian exponents of ``|f|`` and ``|f^|`` plus an optional constant C."""

    a: float
    b: float
    c_env: Optional[float] = None

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0) or not (
            math.isfinite(self.a) and math.isfinite(self.b)
        ):
            raise ValueError(f"a and b must be positive and finite, got a={self.a}, b={self.b}")
        if self.c_env is not None and not self.c_env >= 0:
            raise ValueError(f"c_env must be non-negative, got {self.c_env}")

    @property
    def product(self) -> float:
        return self.a * self.b

    @property
    def in_regime(self) -> bool:
        return self.a * self.b < 1.0

    @property
    def near_degenerate(self) -> bool:
        return 1.0 - NEAR_DEGENERATE <= self.a * self.b < 1.0

    def swapped(self) -> "GaussianEnvelopePair":
        return GaussianEnvelopePair(self.b, self.a, self.c_env)


def _as_pair(pair) -> GaussianEnvelopePair:
    if isinstance(pair, GaussianEnvelopePair):
        return pair
    a, b = pair
    return GaussianEnvelopePair(float(a), float(b))


def _require_regime(pair: GaussianEnvelopePair) -> None:
    if not pair.in_regime:
        raise OutOfRegimeError(
            f"a*b = {pair.product:.17g} >= 1: outside the decay regime "
            "(for ab > 1 the class is {0}, for ab = 1 it is spanned by phi_0)"
        )


def derive_mu_nu(pair) -> tuple[float, float]:
    """Moebius images ``((1-a)/(1+a), (1-b)/(1+b))``, both in (-1, 1)."""
    pair = _as_pair(pair)
    return (1.0 - pair.a) / (1.0 + pair.a), (1.0 - pair.b) / (1.0 + pair.b)


def decay_rate(pair) -> float:
    """The geometric rate ``A(a, b)``; coefficients decay like ``A**(n/2)``."""
    pair = _as_pair(pair)
    _require_regime(pair)
    a, b = pair.a, pair.b
    return math.sqrt((a + b - 2.0 * a * b) / (a + b + 2.0 * a * b))


@dataclass(frozen=True)
class DecayConstants:
    a: float
    b: float
    mu: float
    nu: float
    A: float
    tau: float
    theta0: float
    theta1: float
    m: float
    near_degenerate: bool = field(default=False, compare=False)

    @property
    def pair(self) -> GaussianEnvelopePair:
        return GaussianEnvelopePair(self.a, self.b)

    @property
    def peak_angle(self) -> float:
        """``tau + pi/4``, where ``sin(2 theta - 2 tau)`` attains 1."""
        return self.tau + math.pi / 4

    def residuals(self) -> dict[str, float]:
        """Absolute residuals of the six defining identities."""
        a, b, mu, nu, A = self.a, self.b, self.mu, self.nu, self.A
        t0, t1, tau = self.theta0, self.theta1, self.tau
        A2 = A * A
        return {
            "A2_ab": abs(A2 - (a + b - 2 * a * b) / (a + b + 2 * a * b)),
            "A2_munu": abs(A2 - (mu + nu - 2 * mu * nu) / (2 - mu - nu)),
            "b_sin": abs(A * math.sin(2 * t0 - 2 * tau) - (mu + (1 - mu) * math.sin(t0) ** 2)),
            "b_cos": abs(2 * A * math.cos(2 * t0 - 2 * tau) - (1 - mu) * math.sin(2 * t0)),
            "c_sin": abs(A * math.sin(2 * t1 - 2 * tau) - (nu + (1 - nu) * math.cos(t1) ** 2)),
            "c_cos": abs(2 * A * math.cos(2 * t1 - 2 * tau) + (1 - nu) * math.sin(2 * t1)),
        }

    def pythagorean_residuals(self) -> tuple[float, float]:
        c0, s0 = _theta_pair(self.mu, 1.0 - self.mu, self.A, self.tau)
        c1, s1 = _theta_pair(self.nu, self.nu - 1.0, self.A, self.tau)
        return abs(c0 * c0 + s0 * s0 - 1.0), abs(c1 * c1 + s1 * s1 - 1.0)

    def ordering_holds(self) -> bool:
        return self.theta0 < self.peak_angle < self.theta1

    def verify(self, tol: float = DEFAULT_TOL) -> bool:
        ok = all(r < tol for r in self.residuals().values())
        ok = ok and all(r < tol for r in self.pythagorean_residuals())
        return ok and self.ordering_holds()


def _theta_pair(x: float, numer0: float, A: float, tau: float) -> tuple[float, float]:
    # (cos 2theta, sin 2theta) in closed form; sin 2theta > 0 fixes the branch
    s2t = math.sin(2 * tau)
    c2t = math.cos(2 * tau)
    return (numer0 - 2 * A * s2t) / (1 + x), 2 * A * c2t / (1 + x)


def discriminant_gap(mu: float, nu: float) -> float:
    """``(mu+nu-2mu nu)(2-mu-nu) - (nu-mu)^2``; equals ``2(1-mu)(1-nu)(mu+nu) > 0``."""
    return (mu + nu - 2 * mu * nu) * (2 - mu - nu) - (nu - mu) ** 2


def solve_lemma21(pair) -> DecayConstants:
    """Solve for ``tau, theta0, theta1`` from the explicit closed forms."""
    pair = _as_pair(pair)
    _require_regime(pair)
    mu, nu = derive_mu_nu(pair)
    A = decay_rate(pair)
    s2tau = (nu - mu) / math.sqrt((mu + nu - 2 * mu * nu) * (2 - mu - nu))
    tau = 0.5 * math.asin(s2tau)
    c0, s0 = _theta_pair(mu, 1.0 - mu, A, tau)
    c1, s1 = _theta_pair(nu, nu - 1.0, A, tau)
    theta0 = 0.5 * math.atan2(s0, c0)
    theta1 = 0.5 * math.atan2(s1, c1)
    return DecayConstants(
        a=pair.a, b=pair.b, mu=mu, nu=nu, A=A, tau=tau,
        theta0=theta0, theta1=theta1, m=min(pair.a, pair.b),
        near_degenerate=pair.near_degenerate,
    )


@dataclass(frozen=True)
class SymmetryReport:
    A: float
    tau: float
    theta0: float
    theta1: float

    def max_residual(self) -> float:
        return max(self.A, self.tau, self.theta0, self.theta1)


def check_symmetry(pair) -> SymmetryReport:
    """Residuals of the swap relations ``(a, b) -> (b, a)``."""
    pair = _as_pair(pair)
    k = solve_lemma21(pair)
    s = solve_lemma21(pair.swapped())
    half_pi = math.pi / 2
    return SymmetryReport(
        A=abs(s.A - k.A),
        tau=abs(s.tau + k.tau),
        theta0=abs(s.theta0 - (half_pi - k.theta1)),
        theta1=abs(s.theta1 - (half_pi - k.theta0)),
    )


def log_grid_pairs(n: int = 20, lo: float = 0.05, hi: float = 5.0,
                   max_product: float = 0.95) -> list[GaussianEnvelopePair]:
    """Pairs on an ``n x n`` log-spaced grid restricted to ``a*b <= max_product``."""
    ratio = math.log(hi / lo)
    pts = [lo * math.exp(ratio * i / (n - 1)) for i in range(n)]
    return [GaussianEnvelopePair(a, b) for a in pts for b in pts if a * b <= max_product]
