import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rossby_exact.errors import BadParameter, MixedWavenumbers
from rossby_exact.helmholtz import bessel_vortex, eval_jet, plane_wave, superpose
from rossby_exact.verify import helmholtz_residual

from oracles import besselj_series


def fd_jet(fn, s, y, h=1e-4):
    """Central differences of a scalar function: (F_s, F_y, F_ss, F_sy, F_yy)."""
    F_s = (fn(s + h, y) - fn(s - h, y)) / (2 * h)
    F_y = (fn(s, y + h) - fn(s, y - h)) / (2 * h)
    F_ss = (fn(s + h, y) - 2 * fn(s, y) + fn(s - h, y)) / h**2
    F_yy = (fn(s, y + h) - 2 * fn(s, y) + fn(s, y - h)) / h**2
    F_sy = (fn(s + h, y + h) - fn(s + h, y - h) - fn(s - h, y + h) + fn(s - h, y - h)) / (4 * h * h)
    return F_s, F_y, F_ss, F_sy, F_yy


def test_plane_wave_at_origin():
    j = eval_jet(plane_wave(1.0), 0.0, 0.0)
    assert (float(j.F), float(j.F_s), float(j.F_ss)) == (1.0, 0.0, -1.0)


def test_plane_wave_quarter_phase():
    j = eval_jet(plane_wave(1.0, phase=math.pi / 2), 0.0, 0.0)
    assert float(j.F) == pytest.approx(0.0, abs=1e-16)
    assert float(j.F_s) == pytest.approx(-1.0, rel=1e-15)


def test_plane_wave_at_pi():
    j = eval_jet(plane_wave(1.0), math.pi, 0.0)
    assert float(j.F) == pytest.approx(-1.0, rel=1e-15)
    assert float(j.F_ss) == pytest.approx(1.0, rel=1e-15)


def test_plane_wave_residual_and_fd():
    mode = plane_wave(2.0, 0.7, 0.3, math.pi / 3)
    s, y = 0.4, -0.2
    j = mode.jet(s, y)
    assert abs(float(j.helmholtz_residual(2.0))) <= 1e-12
    F_s, F_y, F_ss, F_sy, F_yy = fd_jet(lambda a, b: float(mode.value(a, b)), s, y)
    assert float(j.F_s) == pytest.approx(F_s, rel=1e-7)
    assert float(j.F_y) == pytest.approx(F_y, rel=1e-7)
    assert float(j.F_ss) == pytest.approx(F_ss, rel=1e-5)
    assert float(j.F_yy) == pytest.approx(F_yy, rel=1e-5)


@pytest.mark.parametrize("kappa", [0.0, -1.0, math.inf, math.nan])
def test_bad_kappa(kappa):
    with pytest.raises(BadParameter):
        plane_wave(kappa)
    with pytest.raises(BadParameter):
        bessel_vortex(kappa)


@pytest.mark.parametrize("m", [-1, 51, 1.5])
def test_bad_order(m):
    with pytest.raises(BadParameter):
        bessel_vortex(1.0, m)


def test_vortex_center_m0():
    j = eval_jet(bessel_vortex(1.0, 0), 0.0, 0.0)
    assert float(j.F) == 1.0
    assert float(j.F_s) == 0.0 and float(j.F_y) == 0.0
    assert float(j.F_ss) == pytest.approx(-0.5, rel=1e-15)
    assert float(j.F_yy) == pytest.approx(-0.5, rel=1e-15)


def test_vortex_center_m1():
    assert float(eval_jet(bessel_vortex(1.0, 1), 0.0, 0.0).F) == 0.0


def test_vortex_first_zero():
    mode = bessel_vortex(1.0, 0)
    assert abs(float(mode.value(2.404825557695773, 0.0))) <= 1e-10


def test_vortex_matches_series_oracle():
    mode = bessel_vortex(1.3, 3, amplitude=0.8, phase=0.4, center=(0.2, -0.1))
    s, y = 1.7, 2.2
    rho = math.hypot(s - 0.2, y + 0.1)
    chi = math.atan2(y + 0.1, s - 0.2)
    ref = 0.8 * float(besselj_series(3, 1.3 * rho)) * math.cos(3 * chi + 0.4)
    assert float(mode.value(s, y)) == pytest.approx(ref, rel=1e-13)


def test_vortex_m2_jet_against_fd():
    mode = bessel_vortex(1.5, 2, center=(0.0, 0.0))
    s, y = 0.3, 0.8
    j = mode.jet(s, y)
    F_s, F_y, F_ss, F_sy, F_yy = fd_jet(lambda a, b: float(mode.value(a, b)), s, y)
    for got, ref in ((j.F_s, F_s), (j.F_y, F_y), (j.F_ss, F_ss), (j.F_sy, F_sy), (j.F_yy, F_yy)):
        assert float(got) == pytest.approx(ref, abs=1e-6)


@pytest.mark.parametrize("m", [0, 1, 2, 3, 7])
def test_series_and_polar_branches_agree(m):
    kappa = 1.7
    mode = bessel_vortex(kappa, m, phase=0.3)
    r = 1.0 / kappa
    s = np.array([np.nextafter(r, 0.0), np.nextafter(r, 2.0)]) * math.cos(0.9)
    y = np.array([np.nextafter(r, 0.0), np.nextafter(r, 2.0)]) * math.sin(0.9)
    j = mode.jet(s, y)
    for comp in (j.F, j.F_s, j.F_y, j.F_ss, j.F_sy, j.F_yy):
        assert comp[0] == pytest.approx(comp[1], rel=1e-12, abs=1e-14)


def test_jet_finite_near_center():
    mode = bessel_vortex(2.0, 4)
    s = np.array([0.0, 1e-12, -3e-9, 1e-7])
    y = np.array([0.0, -2e-12, 5e-10, 0.0])
    j = mode.jet(s, y)
    for comp in (j.F, j.F_s, j.F_y, j.F_ss, j.F_sy, j.F_yy):
        assert np.all(np.isfinite(comp))


def test_superpose_singleton_and_cancellation():
    w = plane_wave(1.0, 1.0, 0.2, 0.0)
    s = np.linspace(-3, 3, 7)
    assert np.array_equal(superpose([w]).jet(s, s).F, w.jet(s, s).F)
    zero = superpose([plane_wave(1.0, 1.0), plane_wave(1.0, -1.0)])
    assert np.all(zero.jet(s, 0.5 * s).F == 0.0)


def test_superpose_mixed_wavenumbers():
    with pytest.raises(MixedWavenumbers):
        superpose([plane_wave(1.0), bessel_vortex(2.0)])
    with pytest.raises(BadParameter):
        superpose([])


def test_superpose_tolerates_rounding_in_kappa():
    k = 0.1 * 3
    superpose([plane_wave(0.3), plane_wave(k)])


amplitudes = st.floats(0.1, 3.0) | st.floats(-3.0, -0.1)


def mode_strategy(kmin):
    return st.one_of(
        st.builds(
            plane_wave,
            kappa=st.floats(kmin, 5.0),
            amplitude=amplitudes,
            phase=st.floats(0, 2 * math.pi),
            direction=st.floats(0, 2 * math.pi),
        ),
        st.builds(
            bessel_vortex,
            kappa=st.floats(kmin, 5.0),
            m=st.integers(0, 3),
            amplitude=amplitudes,
            phase=st.floats(0, 2 * math.pi),
            center=st.tuples(st.floats(-5, 5), st.floats(-5, 5)),
        ),
    )


modes = mode_strategy(0.1)


@settings(max_examples=200, deadline=None)
@given(mode=modes, seed=st.integers(0, 2**32 - 1))
def test_helmholtz_identity(mode, seed):
    rng = np.random.default_rng(seed)
    s, y = rng.uniform(-10, 10, size=(2, 50))
    assert np.max(helmholtz_residual(mode, s, y)) <= 1e-10


# below kappa ~ 0.5 the second differences at h = 1e-5 are roundoff, not signal
@settings(max_examples=100, deadline=None)
@given(mode=mode_strategy(0.5), s=st.floats(-10, 10), y=st.floats(-10, 10))
def test_jet_fd_consistency(mode, s, y):
    j = mode.jet(s, y)
    fn = lambda a, b: float(mode.value(a, b))  # noqa: E731
    h = 1e-5 * (1 + max(abs(s), abs(y)))
    F_s, F_y, F_ss, F_sy, F_yy = fd_jet(fn, s, y, h)
    scale1 = mode.amplitude_total * mode.kappa
    assert abs(float(j.F_s) - F_s) <= 1e-6 * scale1
    assert abs(float(j.F_y) - F_y) <= 1e-6 * scale1
    scale2 = scale1 * mode.kappa
    assert abs(float(j.F_ss) - F_ss) <= 1e-4 * scale2
    assert abs(float(j.F_sy) - F_sy) <= 1e-4 * scale2
    assert abs(float(j.F_yy) - F_yy) <= 1e-4 * scale2


@settings(max_examples=200, deadline=None)
@given(
    kappa=st.floats(0.1, 5.0),
    direction=st.floats(0, 2 * math.pi),
    alpha=st.floats(-math.pi, math.pi),
    s=st.floats(-10, 10),
    y=st.floats(-10, 10),
)
def test_plane_wave_rotation(kappa, direction, alpha, s, y):
    a = float(plane_wave(kappa, 1.0, 0.0, direction).value(s, y))
    # rotate the wave by alpha and the point by the same angle
    sr = s * math.cos(alpha) - y * math.sin(alpha)
    yr = s * math.sin(alpha) + y * math.cos(alpha)
    b = float(plane_wave(kappa, 1.0, 0.0, direction + alpha).value(sr, yr))
    assert b == pytest.approx(a, abs=1e-12 * (1 + kappa * (abs(s) + abs(y))))
