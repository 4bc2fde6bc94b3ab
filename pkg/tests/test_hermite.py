import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from hermdecay import hermite
from hermdecay.gaussians import ComplexGaussian, extremal_function
from hermdecay.hermite import (
    CoefficientSequence,
    HermiteExpansion,
    QuadratureOrderError,
    Sampled,
    UnsupportedInputError,
    gauss_hermite,
    hermite_coefficients,
    hermite_values,
)


def test_low_order_values():
    v = hermite_values(3, 0.0)
    assert v[0] == pytest.approx(math.pi ** -0.25, rel=1e-15)
    assert v[0] == pytest.approx(0.751126, abs=5e-7)
    assert v[1] == 0.0


@pytest.mark.parametrize("n", [0, 1, 5, 20, 50, 120])
@pytest.mark.parametrize("x", [-7.5, -1.0, 0.3, 2.0, 6.0])
def test_recurrence_matches_oracle(n, x):
    got = hermite_values(n, np.array([x]))[n, 0]
    expect = oracles.hermite_function(n, x)
    assert got == pytest.approx(expect, rel=1e-11, abs=1e-300)


def test_direct_evaluation_agrees_with_recurrence():
    for n in (3, 17, 50):
        for x in (0.5, 3.0):
            assert hermite.hermite_direct(n, x) == pytest.approx(
                hermite_values(n, np.array([x]))[n, 0], rel=1e-12)


def test_large_index_does_not_overflow():
    x = np.array([0.0, 10.0, 40.0, 60.0])
    v = hermite_values(1000, x)
    assert np.all(np.isfinite(v))
    assert np.max(np.abs(v[:, 0])) < 1.0


@given(st.integers(0, 60), st.floats(-12, 12))
def test_parity(n, x):
    v = hermite_values(n, np.array([x, -x]))[n]
    assert v[1] == pytest.approx((-1) ** n * v[0], rel=1e-12, abs=1e-300)


def test_single_point_rule():
    r = gauss_hermite(1)
    assert float(r.nodes[0]) == 0.0
    assert r.weights[0] == pytest.approx(math.sqrt(math.pi), rel=1e-15)


def test_two_point_rule():
    r = gauss_hermite(2)
    assert r.nodes.astype(float) == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)], rel=1e-15)
    assert r.weights == pytest.approx([math.sqrt(math.pi) / 2] * 2, rel=1e-15)


@pytest.mark.parametrize("order", [16, 64, 200, 513])
def test_rule_invariants(order):
    r = gauss_hermite(order)
    x = r.nodes.astype(float)
    assert np.all(np.diff(x) > 0)
    assert x == pytest.approx(-x[::-1], abs=1e-300)
    total = np.exp(np.logaddexp.reduce(r.log_weights.astype(float)))
    assert total == pytest.approx(math.sqrt(math.pi), rel=1e-13)


def test_rule_matches_numpy_at_moderate_order():
    ref_x, ref_w = np.polynomial.hermite.hermgauss(40)
    r = gauss_hermite(40)
    assert r.nodes.astype(float) == pytest.approx(ref_x, abs=1e-13)
    assert r.weights == pytest.approx(ref_w, rel=1e-10)


def test_rule_order_bounds():
    with pytest.raises(ValueError):
        gauss_hermite(0)
    with pytest.raises(ValueError):
        gauss_hermite(hermite.MAX_ORDER + 1)


def test_orthonormality_matrix():
    r = gauss_hermite(160)
    x = r.nodes.astype(float)
    logw = r.log_compensated.astype(float)
    v = hermite_values(40, x) * np.exp(0.5 * logw)
    gram = v @ v.T
    assert np.max(np.abs(gram - np.eye(41))) < 1e-12


def test_phi3_norm_low_order_rule():
    coeffs = hermite_coefficients(HermiteExpansion.basis(3), 3, gauss_hermite(16), allow_low_order=True)
    assert coeffs.magnitudes()[3] == pytest.approx(1.0, abs=1e-12)


def test_basis_function_coefficients():
    seq = hermite_coefficients(HermiteExpansion.basis(2), 20, gauss_hermite(hermite.required_order(20)))
    mags = seq.magnitudes()
    assert mags[2] == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.delete(mags, 2)) < 1e-12


def test_unit_gaussian_projects_on_ground_state():
    seq = hermite_coefficients(ComplexGaussian(1.0), 40, gauss_hermite(144))
    assert seq.magnitudes()[0] == pytest.approx(math.pi ** 0.25, rel=1e-13)
    assert seq.magnitudes()[0] == pytest.approx(1.331336, abs=1e-6)
    assert np.max(seq.magnitudes()[1:]) < 1e-12


def test_extremal_second_coefficient():
    seq = hermite_coefficients(extremal_function((0.6, 0.6)), 4, gauss_hermite(72))
    assert seq.magnitudes()[2] == pytest.approx(0.497703, abs=5e-7)
    assert seq.zero_mask[1::2].all()


def test_order_too_low_is_refused():
    with pytest.raises(QuadratureOrderError):
        hermite_coefficients(ComplexGaussian(1.0), 40, gauss_hermite(64))
    seq = hermite_coefficients(ComplexGaussian(1.0), 40, gauss_hermite(64), allow_low_order=True)
    assert len(seq) == 41


@pytest.mark.parametrize("n, tol", [(0, 1e-10), (1, 1e-9), (4, 1e-8)])
def test_fourier_eigen_examples(n, tol):
    assert hermite.fourier_eigen_check(n, gauss_hermite(128)) < tol


def test_fourier_eigen_all_low_indices():
    rule = gauss_hermite(128)
    assert max(hermite.fourier_eigen_check(n, rule) for n in range(21)) < 1e-8


def test_expansion_fourier_applies_eigenvalues():
    f = HermiteExpansion.from_values(np.array([0.3, 0.0, 0.0, 1.0 + 0.5j]))
    xi = np.linspace(-3, 3, 7)
    got = np.exp(f.log_fourier(xi))
    v = hermite_values(3, xi)
    expect = 0.3 * v[0] + (-1j) ** 3 * (1.0 + 0.5j) * v[3]
    assert got == pytest.approx(expect, abs=1e-14)


def test_sequence_wraps_phase_and_flags_zeros():
    seq = CoefficientSequence.from_complex([1.0, 0.0, -2.0, 1j * 3])
    assert seq.zero_mask.tolist() == [False, True, False, False]
    assert seq.phase[2] == pytest.approx(math.pi)
    assert seq.values() == pytest.approx([1.0, 0.0, -2.0, 3j])
    assert seq.log10_magnitude()[3] == pytest.approx(math.log10(3))


def test_sequence_validation():
    with pytest.raises(ValueError):
        CoefficientSequence(np.array([0.0, np.inf]), np.zeros(2))
    with pytest.raises(ValueError):
        CoefficientSequence(np.zeros(2), np.zeros(3))


def test_logsumexp_complex_matches_direct_sum():
    vals = np.array([1e-3 + 2j, -4.0, 0.5j])
    got = hermite.logsumexp_complex(np.log(vals.astype(complex)))
    assert np.exp(got) == pytest.approx(vals.sum())


def test_sampled_gaussian():
    grid = np.linspace(-12, 12, 2401)
    f = Sampled(grid, np.exp(-0.5 * grid ** 2), parity=0)
    seq = hermite_coefficients(f, 10, gauss_hermite(84))
    assert seq.magnitudes()[0] == pytest.approx(math.pi ** 0.25, rel=1e-6)
    assert np.max(seq.magnitudes()[1:]) < 1e-6
    fhat = np.exp(f.log_fourier(np.array([0.0, 1.0])))
    assert fhat.real == pytest.approx(np.exp(-0.5 * np.array([0.0, 1.0])), abs=1e-6)


def test_sampled_without_decay_has_no_fourier_transform():
    grid = np.linspace(-2, 2, 41)
    f = Sampled(grid, np.ones_like(grid))
    with pytest.raises(UnsupportedInputError):
        f.log_fourier(np.array([0.0]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 30))
def test_log_hermite_norm(n):
    expect = 0.5 * math.log(2 ** n * math.factorial(n) * math.sqrt(math.pi))
    assert hermite.log_hermite_norm(n) == pytest.approx(expect, rel=1e-14)
