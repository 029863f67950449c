import math
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kac_spectral.state import (InitialData, NormKind, SpectralState,
                                WeightOverflowError, apply_weight, bracket_xi,
                                gaussian_bump, init_state, norm,
                                random_smooth, single_mode, state_from_csv,
                                state_to_csv)

L_DEFAULT = 2.0 * math.pi


def make_state(N=6, K=3, seed=0, L=L_DEFAULT):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((N, 2 * K + 1)) \
        + 1j * rng.standard_normal((N, 2 * K + 1))
    return SpectralState(c=c, L=L, time=0.0)


def test_shape_validation():
    with pytest.raises(ValueError):
        SpectralState(c=np.zeros((4, 6)), L=1.0)  # even column count
    with pytest.raises(ValueError):
        SpectralState(c=np.zeros(5), L=1.0)


def test_xi_lattice():
    st0 = make_state(N=4, K=2, L=4.0)
    assert np.allclose(st0.xi(), 2.0 * np.pi * np.array([-2, -1, 0, 1, 2]) / 4.0)
    assert st0.N == 4 and st0.K == 2


def test_l2_is_parseval_sum():
    st0 = make_state()
    assert abs(norm(st0, NormKind.L2)
               - math.sqrt(np.sum(np.abs(st0.c) ** 2))) < 1e-14


def test_h10_single_mode():
    c = np.zeros((5, 7), dtype=complex)
    c[2, 5] = 3.0  # j = 2
    st0 = SpectralState(c=c, L=L_DEFAULT)
    xi = 2.0 * np.pi * 2 / L_DEFAULT
    assert abs(norm(st0, NormKind.H10) - 3.0 * math.sqrt(1 + xi ** 2)) < 1e-14


def test_hs2_weight_single_mode():
    c = np.zeros((5, 1), dtype=complex)
    c[3, 0] = 1.0
    st0 = SpectralState(c=c, L=L_DEFAULT)
    got = norm(st0, NormKind.HS2_WEIGHTED_10, s=0.5)
    assert abs(got - 3.5 ** 0.25) < 1e-14
    with pytest.raises(ValueError):
        norm(st0, NormKind.HS2_WEIGHTED_10)  # s is mandatory here


def test_gs_norm_reduces_to_h10_at_t_zero():
    st0 = make_state()
    a = norm(st0, NormKind.GS_WEIGHTED, s=0.5, t=0.0, delta1=0.0)
    b = norm(st0, NormKind.H10)
    assert abs(a - b) < 1e-13 * b


def test_gs_norm_monotone_in_time():
    st0 = make_state()
    vals = [norm(st0, NormKind.GS_WEIGHTED, s=0.5, t=t) for t in
            (0.0, 0.1, 0.5, 1.0)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_weight_round_trip():
    st0 = make_state(N=10, K=6)
    fwd = apply_weight(st0, 0.7, 0.3, "forward", 0.5)
    back = apply_weight(fwd, 0.7, 0.3, "inverse", 0.5)
    assert np.max(np.abs(back.c - st0.c)) < 1e-12 * np.max(np.abs(st0.c))


def test_weight_saturates_with_delta1():
    st0 = make_state()
    plain = apply_weight(st0, 1.0, 0.0, "forward", 0.5)
    damped = apply_weight(st0, 1.0, 0.5, "forward", 0.5)
    assert np.all(np.abs(damped.c) <= np.abs(plain.c) + 1e-15)
    # with delta1 > 0 the multiplier is capped at 1/delta1
    big = apply_weight(make_state(N=40, K=30), 60.0, 0.5, "forward", 0.5)
    assert np.max(np.abs(big.c / make_state(N=40, K=30).c)) <= 2.0 + 1e-12


def test_weight_overflow_names_site():
    st0 = make_state(N=50, K=40)
    with pytest.raises(WeightOverflowError, match=r"n=49, j=(-40|40)"):
        apply_weight(st0, 5000.0, 0.0, "forward", 0.5)


def test_weight_argument_validation():
    st0 = make_state()
    with pytest.raises(ValueError):
        apply_weight(st0, 1.0, 0.0, "sideways", 0.5)
    with pytest.raises(ValueError):
        apply_weight(st0, -1.0, 0.0, "forward", 0.5)
    with pytest.raises(ValueError):
        apply_weight(st0, 1.0, 1.5, "forward", 0.5)


@settings(max_examples=40, deadline=None)
@given(x=st.floats(0.0, 50.0), y=st.floats(0.0, 50.0),
       s=st.sampled_from([0.25, 0.5, 0.75]))
def test_weight_exponent_subadditive(x, y, s):
    p = 2.0 * s / (2.0 * s + 1.0)  # exponent in (0, 1)
    assert (x + y) ** p <= x ** p + y ** p + 1e-12


def test_init_single_mode_scaling():
    spec = single_mode(3, 2, 1e-3)
    st0 = init_state(spec, 8, 4, L_DEFAULT)
    assert abs(norm(st0, NormKind.H10) - 1e-3) < 1e-16
    mask = np.zeros((8, 9), dtype=bool)
    mask[3, 6] = True
    assert np.all(st0.c[~mask] == 0.0)


def test_init_single_mode_bounds_check():
    with pytest.raises(ValueError):
        init_state(single_mode(8, 0, 1e-3), 8, 4, L_DEFAULT)
    with pytest.raises(ValueError):
        init_state(single_mode(0, 5, 1e-3), 8, 4, L_DEFAULT)


def test_init_gaussian_bump_reality_and_scale():
    spec = gaussian_bump(0.3, 0.4, 1, 2e-3)
    st0 = init_state(spec, 6, 8, L_DEFAULT)
    assert abs(norm(st0, NormKind.H10) - 2e-3) < 1e-17
    assert np.max(np.abs(st0.c - np.conj(st0.c[:, ::-1]))) < 1e-18
    assert np.all(st0.c[np.arange(6) != 1] == 0.0)
    with pytest.raises(ValueError):
        init_state(gaussian_bump(0.0, 0.5, 9, 1e-3), 6, 8, L_DEFAULT)


def test_init_random_smooth_properties():
    spec = random_smooth(seed=7, decay=1.5, amplitude=1e-2)
    st0 = init_state(spec, 10, 6, L_DEFAULT)
    again = init_state(spec, 10, 6, L_DEFAULT)
    assert np.array_equal(st0.c, again.c)
    assert np.max(np.abs(st0.c - np.conj(st0.c[:, ::-1]))) < 1e-16
    assert abs(norm(st0, NormKind.H10) - 1e-2) < 1e-16
    other = init_state(random_smooth(seed=8, decay=1.5, amplitude=1e-2),
                       10, 6, L_DEFAULT)
    assert not np.array_equal(st0.c, other.c)


def test_init_rejects_unknown_kind():
    with pytest.raises(ValueError):
        init_state(InitialData(kind="delta"), 6, 3, L_DEFAULT)


def test_csv_round_trip_bit_exact(tmp_path):
    st0 = make_state(N=7, K=4)
    st0 = st0.with_c(st0.c, time=0.375)
    path = os.path.join(tmp_path, "snap.csv")
    state_to_csv(st0, path, s=0.5)
    back, s = state_from_csv(path)
    assert s == 0.5
    assert back.L == st0.L and back.time == 0.375
    assert np.array_equal(back.c, st0.c)


def test_csv_rejects_foreign_files(tmp_path):
    path = os.path.join(tmp_path, "bad.csv")
    with open(path, "w") as fh:
        fh.write("t,value\n0,1\n")
    with pytest.raises(ValueError, match="not a"):
        state_from_csv(path)
    with open(path, "w") as fh:
        fh.write("# kac-state v1, s=0.5, N=2, K=1, L=6.28, time=0\n")
        fh.write("a,b,c,d\n")
    with pytest.raises(ValueError, match="column header"):
        state_from_csv(path)


def test_bracket_xi_values():
    assert bracket_xi(0.0) == 1.0
    assert abs(bracket_xi(1.0) - math.sqrt(2.0)) < 1e-15
