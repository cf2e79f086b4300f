"""Engine tests: exactness, honesty, resonance handling, oracles, budgets."""

from __future__ import annotations

import math

import numpy as np
import pytest

from bbshift.model import ValidityError, planck_occupation
from bbshift.quadrature import (
    MomentSpec,
    QuadratureBudgetError,
    QuadratureResult,
    integrate_adaptive,
    integrate_with_resonance_window,
    narrow_resonance_estimate,
    planck_lorentzian_moment,
    riemann_oracle,
    tail_cutoff,
    window_integrand,
    _planck_u_derivatives,
)


def _lorentzian(g):
    def f(u):
        omu2 = (1.0 - u) * (1.0 + u)
        return 1.0 / (omu2 * omu2 + (g * u) ** 2)

    return f


def _lorentzian_window(g):
    return window_integrand(
        lambda d: np.ones_like(np.asarray(d, dtype=float)), g
    )


# ---------------------------------------------------------------------------
# basic rule properties


def test_degree_seven_polynomial_single_panel():
    # the embedded pair is polynomial-exact well past degree 7, so the seed
    # panel must be accepted without any refinement
    res = integrate_adaptive(lambda u: 7.0 * u**6 - 3.0 * u**2, 0.0, 2.0, 1e-12)
    assert res.evaluations == 15
    assert res.value == pytest.approx(2.0**7 - 2.0**3, rel=1e-14)


def test_forced_knots_seed_subdivision():
    res = integrate_adaptive(lambda u: u * u, 0.0, 1.0, 1e-10, (0.25, 0.5))
    assert res.panels >= 3
    assert res.value == pytest.approx(1.0 / 3.0, rel=1e-14)
    with pytest.raises(ValueError):
        integrate_adaptive(lambda u: u, 0.0, 1.0, 1e-10, (2.0,))  # outside


def test_error_estimate_honesty():
    # true error <= 3x reported on the standard family
    cases = [
        (lambda u: u**3, 0.0, 2.0, 4.0),
        (np.exp, 0.0, 3.0, math.e**3 - 1.0),
        (lambda u: np.exp(-u), 0.0, 50.0, 1.0 - math.exp(-50.0)),
    ]
    for f, a, b, exact in cases:
        res = integrate_adaptive(f, a, b, 1e-10)
        assert abs(res.value - exact) <= 3.0 * res.error_estimate + 1e-15


def test_error_estimate_honesty_lorentzian():
    # int_0^inf du/((1-u^2)^2 + g^2 u^2) = pi/(2g) for every g; truncation
    # remainder beyond U is 1/(3U^3) + 2/(5U^5) + O(U^-7)
    for g in (1e-3, 1e-6):
        U = 1e3
        exact = math.pi / (2.0 * g) - 1.0 / (3.0 * U**3) - 2.0 / (5.0 * U**5)
        res = integrate_with_resonance_window(
            _lorentzian(g), _lorentzian_window(g), g, U, 1e-10
        )
        assert abs(res.value - exact) <= 3.0 * res.error_estimate + 1e-9 / g


def test_unseeded_adaptive_misses_hidden_bump():
    # the rationale for forced knots: a width-1e-9 feature with no broad
    # pedestal sits between the sample points of the seed panel, which is
    # then accepted with a near-zero error estimate
    g = 1e-9

    def bump(u):
        t = (np.asarray(u, dtype=float) - 1.0) / g
        return np.exp(-t * t) / g

    blind = integrate_adaptive(bump, 0.0, 10.0, 1e-6)
    assert blind.value < 1e-6
    assert blind.evaluations == 15
    seeded = integrate_adaptive(bump, 0.0, 10.0, 1e-9, (1.0 - 8e-9, 1.0 + 8e-9))
    assert seeded.value == pytest.approx(math.sqrt(math.pi), rel=1e-8)


def test_window_resolves_narrow_resonance():
    # with the window seeded the certified estimate matches the exact
    # pi/(2g) even nine orders below the background scale
    g = 1e-9
    res = integrate_with_resonance_window(
        _lorentzian(g), _lorentzian_window(g), g, 10.0, 1e-10
    )
    assert res.value == pytest.approx(math.pi / (2.0 * g), rel=1e-10)


def test_nonfinite_integrand_rejected():
    with pytest.raises(ValueError, match="non-finite"):
        with np.errstate(divide="ignore", over="ignore"):
            integrate_adaptive(lambda u: 1.0 / u, 0.0, 1.0, 1e-8)


def test_scalar_callable_path():
    res = integrate_adaptive(math.exp, 0.0, 1.0, 1e-10, vectorized=False)
    assert res.value == pytest.approx(math.e - 1.0, rel=1e-12)


def test_result_invariants():
    with pytest.raises(ValueError):
        QuadratureResult(float("nan"), 0.0, 1, 15)
    with pytest.raises(ValueError):
        QuadratureResult(1.0, -1.0, 1, 15)


# ---------------------------------------------------------------------------
# budget semantics


def test_budget_error_carries_partial():
    # genuinely hard integrand (dense oscillation) under a tiny budget
    def f(u):
        return np.sin(1e4 * u * u)

    with pytest.raises(QuadratureBudgetError) as exc:
        integrate_adaptive(f, 0.0, 30.0, 1e-13, budget=2000)
    partial = exc.value.partial
    assert math.isfinite(partial.value)
    assert partial.error_estimate > 0.0
    assert partial.evaluations <= 2000


def test_budget_not_charged_for_acceptance():
    res = integrate_adaptive(lambda u: u**2, 0.0, 1.0, 1e-10, budget=100)
    assert res.evaluations == 15


# ---------------------------------------------------------------------------
# determinism


def test_bitwise_determinism():
    spec = MomentSpec(5, 7.3, 2e-5)
    a = planck_lorentzian_moment(spec, 1e-11)
    b = planck_lorentzian_moment(spec, 1e-11)
    assert a == b  # dataclass equality: identical floats, identical counters


# ---------------------------------------------------------------------------
# moments and oracles


def test_moment_reference_values():
    # frozen from an independent 25-digit arbitrary-precision evaluation
    cases = [
        (3, 10.0, 1e-6, 14935651.360871873),
        (3, 0.01, 1e-4, 6.5185089254366217e-8),
        (3, 5.0, 1e-3, 7093.5599749833586),
        (5, 5.0, 1e-3, 7133.2409414298635),
    ]
    for p, th, g, want in cases:
        res = planck_lorentzian_moment(MomentSpec(p, th, g), 1e-11)
        assert res.value == pytest.approx(want, rel=5e-13)
        assert abs(res.value - want) <= 3.0 * res.error_estimate + 1e-13 * abs(want)


def test_moment_spec_gates():
    with pytest.raises(ValidityError):
        MomentSpec(4, 1.0, 1e-4)
    with pytest.raises(ValidityError):
        MomentSpec(3, -1.0, 1e-4)
    with pytest.raises(ValidityError):
        MomentSpec(3, 1.0, 0.5)


def test_tail_cutoff_rule():
    assert tail_cutoff(100.0) == 4000.0
    assert tail_cutoff(0.01) == 10.0


def test_g_scaling_pole_dominance():
    # g*I_3 -> (pi/2)*nbar(1/theta) as g -> 0 at theta <= 1, and the
    # residual scales linearly in g (background is g-independent)
    th = 0.5
    target = 0.5 * math.pi * planck_occupation(1.0 / th)
    devs = []
    for g in (1e-6, 5e-7):
        v = g * planck_lorentzian_moment(MomentSpec(3, th, g), 1e-12).value
        devs.append(abs(v - target) / target)
    assert devs[0] < 1e-5
    assert devs[0] / devs[1] == pytest.approx(2.0, rel=0.25)


def test_narrow_estimate_backgrounds():
    # pole-subtracted backgrounds, frozen from the arbitrary-precision run
    frozen = {
        (3, 1.0): -0.409812956951499,
        (5, 1.0): 0.589890846480392,
        (3, 10.0): -1.53192763205664,
        (5, 10.0): 161.179703596487,
        (3, 100.0): -2.68291883858368,
        (5, 100.0): 16443.7248323275,
    }
    g = 1e-6
    for (p, th), b_want in frozen.items():
        v = narrow_resonance_estimate(MomentSpec(p, th, g))
        pole = 0.5 * math.pi / g * planck_occupation(1.0 / th)
        assert v - pole == pytest.approx(b_want, rel=5e-8, abs=1e-8)


def test_narrow_estimate_gate():
    with pytest.raises(ValidityError):
        narrow_resonance_estimate(MomentSpec(3, 1.0, 5e-3))


def test_riemann_oracle_gates_and_refinement():
    with pytest.raises(ValidityError):
        riemann_oracle(MomentSpec(3, 5.0, 1e-3), 1000)
    with pytest.raises(ValidityError):
        riemann_oracle(MomentSpec(3, 5.0, 1e-5), 200_000)
    v, gap = riemann_oracle(MomentSpec(3, 5.0, 1e-3), 1_000_000, with_refinement=True)
    assert gap / abs(v) < 5e-7  # second-order mesh: doubling cuts it ~4x
    want = 7093.5599749833586
    assert v == pytest.approx(want, rel=2e-7)


def test_oracle_overlap_band():
    # brute-force (g >= 1e-4) and pole-background (g <= 1e-3) overlap on
    # 1e-4..1e-3 where both must agree with the adaptive engine
    for g in (1e-4, 1e-3):
        spec = MomentSpec(3, 2.0, g)
        m = planck_lorentzian_moment(spec, 1e-11).value
        r = riemann_oracle(spec, 2_000_000)
        n = narrow_resonance_estimate(spec)
        assert abs(m - r) / m < 1e-6
        assert abs(m - n) / m < 5.0 * g


def test_taylor_switch_derivatives():
    # the fold's Taylor coefficients come from closed-form derivatives of
    # u^p nbar(u/theta) at u = 1; cross-check against central differences
    for p, th in ((3, 0.7), (5, 13.0)):
        f0, f1, f2, f3 = _planck_u_derivatives(p, th)

        def f(u):
            return u**p * planck_occupation(u / th)

        h = 1e-3
        assert f0 == pytest.approx(f(1.0), rel=1e-14)
        assert f1 == pytest.approx((f(1 + h) - f(1 - h)) / (2 * h), rel=1e-5)
        assert f2 == pytest.approx((f(1 + h) - 2 * f0 + f(1 - h)) / h**2, rel=1e-4)
        d3 = (f(1 + 2 * h) - 2 * f(1 + h) + 2 * f(1 - h) - f(1 - 2 * h)) / (2 * h**3)
        assert f3 == pytest.approx(d3, rel=1e-3)
