"""Hermite-coefficient decay for functions with Gaussian envelopes.

For ``f`` with ``|f(x)| <= C exp(-a x^2/2)`` and ``|f^(xi)| <= C exp(-b xi^2/2)``,
``ab < 1``, the Hermite coefficients obey

    |<f, phi_n>| <= C' n^{-1/4} A^{n/2},   A = sqrt((a+b-2ab)/(a+b+2ab)),

and a complex Gaussian attains the rate. The modules compute the constants,
the coefficients by three independent paths, the Bargmann-side bounds and
the asymptotic fits.
"""
from .constants import (
    DecayConstants,
    GaussianEnvelopePair,
    OutOfRegimeError,
    decay_rate,
    solve_lemma21,
)
from .gaussians import ComplexGaussian, closed_form_coefficients, extremal_function
from .hermite import CoefficientSequence, HermiteExpansion, gauss_hermite, hermite_coefficients

__version__ = "0.1.0"

__all__ = [
    "CoefficientSequence",
    "ComplexGaussian",
    "DecayConstants",
    "GaussianEnvelopePair",
    "HermiteExpansion",
    "OutOfRegimeError",
    "closed_form_coefficients",
    "decay_rate",
    "extremal_function",
    "gauss_hermite",
    "hermite_coefficients",
    "solve_lemma21",
]
