import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from kac_spectral.hermite import (HermiteCoeffs, TruncationOverflowError,
                                  apply_ladder, factorial_norm_bound,
                                  hermite_eval, hermite_matrix, ladder_action,
                                  monomial_derivative_norm)
from kac_spectral.quadrature import integrate

INV_QUARTIC_2PI = 0.63161877774606470129  # (2 pi)^(-1/4)

coeff_arrays = arrays(np.complex128, st.integers(4, 30),
                      elements=st.complex_numbers(max_magnitude=10.0,
                                                  allow_nan=False,
                                                  allow_infinity=False))


def test_ground_state_value():
    assert abs(hermite_eval(0, 0.0) - INV_QUARTIC_2PI) < 1e-15
    v = np.linspace(-3.0, 3.0, 7)
    expect = (2.0 * math.pi) ** -0.25 * np.exp(-v ** 2 / 4.0)
    assert np.max(np.abs(hermite_eval(0, v) - expect)) < 1e-15


def test_first_two_excited():
    v = np.linspace(-4.0, 4.0, 9)
    psi0 = hermite_eval(0, v)
    assert np.max(np.abs(hermite_eval(1, v) - v * psi0)) < 1e-14
    expect2 = (v ** 2 - 1.0) / math.sqrt(2.0) * psi0
    assert np.max(np.abs(hermite_eval(2, v) - expect2)) < 1e-13


def test_orthonormality_by_quadrature():
    # off-diagonal targets are zero, so convergence needs the absolute term
    for m in range(4):
        for n in range(m, 4):
            val = integrate(lambda v: hermite_eval(m, v) * hermite_eval(n, v),
                            -12.0, 12.0, abs_tol=1e-13)
            assert abs(val - (1.0 if m == n else 0.0)) < 1e-10


def test_matrix_agrees_with_scalar():
    v = np.linspace(-5.0, 5.0, 11)
    mat = hermite_matrix(6, v)
    assert mat.shape == (7, 11)
    for n in range(7):
        assert np.array_equal(mat[n], hermite_eval(n, v))


def test_eigenfunction_of_oscillator():
    # -psi'' + v^2/4 psi = (n + 1/2) psi, checked with central differences
    v = np.linspace(-6.0, 6.0, 4801)
    h = v[1] - v[0]
    for n in (0, 1, 5):
        psi = hermite_eval(n, v)
        lap = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / h ** 2
        resid = -lap + (v[1:-1] ** 2 / 4.0) * psi[1:-1] \
            - (n + 0.5) * psi[1:-1]
        assert np.max(np.abs(resid)) < 1e-5


@settings(max_examples=60, deadline=None)
@given(coeff_arrays)
def test_mult_v_is_raise_plus_lower(c):
    f = HermiteCoeffs(c)
    mv = apply_ladder(f, "mult_v").coeffs
    split = apply_ladder(f, "raise").coeffs.copy()
    low = apply_ladder(f, "lower").coeffs
    split[:len(low)] += low
    assert np.allclose(mv, split, rtol=0.0, atol=1e-12 * (1.0 + f.norm()))


@settings(max_examples=60, deadline=None)
@given(coeff_arrays, coeff_arrays)
def test_ladder_adjointness(cf, cg):
    up = ladder_action(cf, "raise")
    down = ladder_action(cg, "lower")
    n = min(len(up), len(cg))
    lhs = np.vdot(up[:n], cg[:n])
    m = min(len(cf), len(down))
    rhs = np.vdot(cf[:m], down[:m])
    scale = (1.0 + np.linalg.norm(cf)) * (1.0 + np.linalg.norm(cg))
    assert abs(lhs - rhs) < 1e-11 * scale


@settings(max_examples=60, deadline=None)
@given(coeff_arrays)
def test_oscillator_composition(c):
    # raise(lower(f)) + f/2 = (n + 1/2) f
    comp = ladder_action(ladder_action(c, "lower"), "raise")
    target = (np.arange(len(c)) + 0.5) * c
    assert np.allclose(comp + 0.5 * c, target,
                       atol=1e-11 * (1.0 + np.linalg.norm(c)))


def test_derivative_action_on_grid():
    c = np.zeros(6)
    c[4] = 1.0
    dv = ladder_action(c, "deriv_v")  # one degree longer than the input
    v = np.linspace(-4.0, 4.0, 4001)
    psi = hermite_matrix(len(dv) - 1, v)
    exact = np.gradient(psi[4], v)
    synth = dv @ psi
    # np.gradient falls back to one-sided stencils at the two ends
    assert np.max(np.abs(synth - exact)[1:-1]) < 1e-5


def test_exact_norms():
    for n in range(40):
        assert abs(monomial_derivative_norm(1, 0, n)
                   - math.sqrt(2 * n + 1)) < 1e-10
        assert abs(monomial_derivative_norm(0, 1, n)
                   - 0.5 * math.sqrt(2 * n + 1)) < 1e-10
        assert abs(monomial_derivative_norm(0, 0, n) - 1.0) < 1e-12


def test_norm_bound_sharp_cases():
    assert factorial_norm_bound(1, 0, 0) == 2.0
    assert abs(factorial_norm_bound(2, 3, 10)
               - 2401.199700149906315576) < 1e-9  # 4 sqrt(360360)
    assert factorial_norm_bound(0, 0, 17) == 1.0


def test_norms_below_bound():
    for k in range(7):
        for l in range(7 - k):
            for n in range(41):
                exact = monomial_derivative_norm(k, l, n)
                assert exact <= factorial_norm_bound(k, l, n) + 1e-10


def test_truncation_guard():
    with pytest.raises(TruncationOverflowError):
        monomial_derivative_norm(3, 2, 10, max_degree=12)
    assert monomial_derivative_norm(3, 2, 10, max_degree=15) > 0.0


def test_bad_ladder_op_rejected():
    with pytest.raises(ValueError):
        ladder_action(np.ones(4), "shift")
