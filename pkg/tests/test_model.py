"""Dispersion layer: constants, reduction, polarizability, mode weight."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbshift.constants import CODATA2018
from bbshift.model import (
    DimensionlessParams,
    PhysicalInput,
    ValidityError,
    mode_weight,
    mode_weight_excess,
    planck_occupation,
    planck_occupation_with_zero_point,
    polarizability,
    reduce,
    refractive_index,
)
from bbshift.quadrature import integrate_with_resonance_window, window_integrand


# ---------------------------------------------------------------------------
# constants and reduction


def test_damping_rate_reference_value():
    # 2 e^2 w0^2 / (3 m c^3) at w0 = 1e15 rad/s, CODATA 2018 Gaussian values;
    # reference number from an independent 25-digit evaluation
    g = CODATA2018.damping_rate(1e15) / 1e15
    assert g == pytest.approx(6.2664247648079894e-9, rel=1e-12)


def test_theta_at_room_temperature():
    th = CODATA2018.theta(300.0, 1e15)
    assert th == pytest.approx(0.039276101762161922, rel=1e-12)


def test_reduce_roundtrip_values():
    inp = PhysicalInput(temperature=300.0, omega0=1e15)
    p = reduce(inp, density=0.0, cutoff=1e17, volume=1.0)
    assert p.theta == pytest.approx(0.0392761, rel=1e-5)
    assert p.g == pytest.approx(6.2664e-9, rel=1e-4)
    assert p.nu == 0.0
    assert p.lambda_cut == pytest.approx(100.0)
    assert p.v_tilde == pytest.approx(1e15**3 / CODATA2018.c**3)


def test_reduce_density_sets_nu():
    inp = PhysicalInput(temperature=300.0, omega0=1e15)
    n = 1e10  # cm^-3
    p = reduce(inp, density=n, cutoff=1e17, volume=1.0)
    want = 4.0 * math.pi * n * inp.charge_sq_over_m / 1e15**2
    assert p.nu == pytest.approx(want, rel=1e-14)


def test_single_particle_normalization():
    # nu*v_tilde/(6 pi g) == 1 exactly when nu = 6 pi g / v_tilde
    g, vt = 1e-4, 2.5
    p = DimensionlessParams(theta=1.0, g=g, nu=6.0 * math.pi * g / vt, v_tilde=vt)
    assert p.particle_count == pytest.approx(1.0, rel=1e-14)


def test_domain_gates():
    with pytest.raises(ValidityError):
        PhysicalInput(temperature=-1.0, omega0=1e15)
    with pytest.raises(ValidityError):
        PhysicalInput(temperature=300.0, omega0=0.0)
    with pytest.raises(ValidityError):
        DimensionlessParams(theta=1.0, g=0.5)  # weak-coupling gate
    with pytest.raises(ValidityError):
        DimensionlessParams(theta=1.0, g=1e-4, nu=0.5)
    with pytest.raises(ValidityError):
        DimensionlessParams(theta=1.0, g=1e-4, lambda_cut=0.5)


# ---------------------------------------------------------------------------
# polarizability and index


def test_polarizability_static_and_resonant():
    a0 = polarizability(0.0, 1e-4)
    assert a0.re == pytest.approx(1.0, abs=1e-15)
    assert a0.im == pytest.approx(0.0, abs=1e-15)
    ares = polarizability(1.0, 1e-4)
    # on resonance alpha = i/g
    assert ares.re == pytest.approx(0.0, abs=1e-10)
    assert ares.im == pytest.approx(1e4, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    u=st.floats(0.0, 1e3, allow_nan=False),
    g=st.floats(1e-9, 9.9e-3, allow_nan=False),
)
def test_passivity(u, g):
    assert polarizability(u, g).im >= 0.0


@settings(max_examples=200, deadline=None)
@given(
    u=st.floats(0.0, 1e3),
    g=st.floats(1e-9, 9.9e-3),
    nu=st.floats(0.0, 9.9e-3),
)
def test_index_branch(u, g, nu):
    n = refractive_index(u, g, nu)
    assert n.re > 0.0
    assert n.im >= 0.0


def test_branch_continuity():
    # a branch flip would be a jump of ~2|n|; legitimate variation on a grid
    # that resolves the resonance (spacing << g near u=1) stays far below it
    g, nu = 1e-4, 1e-4
    u = np.concatenate(
        [
            np.linspace(0.0, 1.0 - 10.0 * g, 4000, endpoint=False),
            np.linspace(1.0 - 10.0 * g, 1.0 + 10.0 * g, 8001),
            np.geomspace(1.0 + 10.0 * g, 1e3, 4000)[1:],
        ]
    )
    n = refractive_index(u, g, nu)
    dn = np.abs(np.diff(n.re + 1j * n.im))
    assert float(dn.max()) < 0.2


def test_oscillator_strength_sum_rule():
    # int_0^inf u*im(alpha) du = (pi/2)(1 + O(g)); within 5g per the domain
    for g in (1e-3, 1e-4):

        def f_u(u, g=g):
            omu2 = (1.0 - u) * (1.0 + u)
            return g * u * u / (omu2 * omu2 + (g * u) ** 2)

        f_phi = window_integrand(
            lambda d, g=g: g * (1.0 + d) ** 2, g
        )
        res = integrate_with_resonance_window(f_u, f_phi, g, 1e4, 1e-10)
        assert abs(res.value - math.pi / 2.0) <= 5.0 * g * (math.pi / 2.0)


# ---------------------------------------------------------------------------
# mode weight


@settings(max_examples=200, deadline=None)
@given(u=st.floats(0.0, 1e3), g=st.floats(1e-9, 9.9e-3))
def test_vacuum_reduction(u, g):
    # numpy pow and python pow can disagree in the last ulp, hence approx
    assert mode_weight(u, g, 0.0) == pytest.approx(u**3, rel=5e-16, abs=0.0)


def test_vacuum_reduction_arrays_exact():
    u = np.geomspace(1e-3, 1e3, 301)
    assert np.array_equal(mode_weight(u, 1e-5, 0.0), u**3)


def test_mode_weight_first_order_coefficient():
    # (w - u^3)/nu at nu -> 0 against the analytic O(nu) expansion
    u, g, nu = 0.5, 1e-4, 1e-8
    alpha = 1.0 / (1.0 - u * u - 1j * g * u)
    dalpha = (2.0 * u + 1j * g) * alpha * alpha
    want = u**3 * (1.5 * alpha.real + 0.5 * u * dalpha.real)
    got = mode_weight_excess(u, g, nu) / nu
    assert got == pytest.approx(want, rel=1e-6)


def test_mode_weight_excess_consistency():
    # cancellation-free excess equals the direct difference where the direct
    # subtraction still has digits to give
    u = np.linspace(0.2, 5.0, 101)
    g, nu = 1e-3, 1e-3
    direct = mode_weight(u, g, nu) - u**3
    excess = mode_weight_excess(u, g, nu)
    assert np.allclose(excess, direct, rtol=1e-9, atol=1e-15)


def test_mode_weight_excess_large_u_sign():
    # above resonance Re(alpha) ~ -1/u^2, and at large u the O(nu) expansion
    # gives w - u^3 -> -nu*u/2 < 0 (the term that makes the cutoff integral
    # quadratically divergent)
    assert mode_weight_excess(10.0, 1e-4, 1e-4) < 0.0
    assert mode_weight_excess(10.0, 1e-4, 1e-4) == pytest.approx(
        -1e-4 * 10.0 / 2.0, rel=2e-2
    )
    assert mode_weight_excess(0.5, 1e-4, 1e-4) > 0.0


# ---------------------------------------------------------------------------
# occupation


def test_occupation_exact_points():
    assert planck_occupation(math.log(2.0)) == pytest.approx(1.0, rel=1e-14)
    assert planck_occupation(1.0) == pytest.approx(1.0 / (math.e - 1.0), rel=1e-14)
    # Laurent: 1/x - 1/2 + x/12 ...
    assert planck_occupation(1e-8) == pytest.approx(1e8 - 0.5, abs=1e-6)
    assert planck_occupation_with_zero_point(math.log(2.0)) == pytest.approx(1.5)


def test_occupation_domain():
    with pytest.raises(ValidityError):
        planck_occupation(0.0)
    with pytest.raises(ValidityError):
        planck_occupation(-1.0)
    with pytest.raises(ValidityError):
        planck_occupation(np.array([1.0, -2.0]))


@settings(max_examples=300, deadline=None)
@given(logx=st.floats(-300.0, -1.0))
def test_occupation_small_x_product(logx):
    # x*nbar(x) = 1 - x/2 + O(x^2) -> 1 from below as x -> 0
    x = 10.0**logx
    assert planck_occupation(x) * x == pytest.approx(1.0, rel=0.06)


@settings(max_examples=300, deadline=None)
@given(logx=st.floats(-300.0, 2.5))
def test_occupation_monotone(logx):
    x = 10.0**logx
    a, b = planck_occupation(x), planck_occupation(x * 1.5)
    if b > 0.0:  # past the underflow point both sides are exactly 0
        assert a > b


def test_occupation_deep_tail():
    assert planck_occupation(800.0) == 0.0  # underflow, not overflow
    assert planck_occupation(50.0) == pytest.approx(math.exp(-50.0), rel=1e-12)


def test_occupation_array_shape():
    x = np.array([1e-12, 1.0, 100.0])
    out = planck_occupation(x)
    assert out.shape == (3,)
    assert out[0] == pytest.approx(1e12 - 0.5, rel=1e-13)
