"""Self-check registry: every release criterion as a runnable check.

Each criterion measures one contract of the package (a physical limit, an
oracle agreement, a determinism guarantee) and reports measured value,
target, and PASS/FAIL. The registry is the single source for both the
`check` CLI command and the acceptance test suite, so the two cannot drift.

Criteria marked fast=False take more than a second (the 1e7-point oracle,
the full determinism sweep); `fast` runs skip them and report SKIPPED.

Fault injection: run_all(faults={"c4-g-doubled"}) computes criterion C4's
samples with the coupling doubled while the target keeps the nominal value,
so the criterion must FAIL. This exists to prove the report machinery can
actually fail; it is reachable from the CLI through a hidden flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import energies as en
from .quadrature import (
    MomentSpec,
    narrow_resonance_estimate,
    planck_lorentzian_moment,
    riemann_oracle,
)
from .sweep import GridSpec, run_sweep

__all__ = ["CriterionResult", "CRITERIA", "run_all", "KNOWN_FAULTS"]

KNOWN_FAULTS = frozenset({"c4-g-doubled"})


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    label: str
    measured: str
    target: str
    passed: bool
    skipped: bool = False

    def line(self) -> str:
        status = "SKIPPED" if self.skipped else ("PASS" if self.passed else "FAIL")
        return (
            f"{self.cid:<4s} {self.label:<38s} measured {self.measured:<28s} "
            f"target {self.target:<26s} {status}"
        )


def _result(cid, label, measured, target, passed):
    return CriterionResult(cid, label, measured, target, bool(passed))


def _c1(faults):
    v = en.rydberg_frequency_shift(300.0)
    return _result(
        "C1", "room-temperature shift", f"{v:.1f} Hz", "[2280, 2520] Hz",
        2280.0 <= v <= 2520.0,
    )


def _c2(faults):
    v = en.u1(1000.0, 1e-6)
    dev = abs(v - 4500.0) / 4500.0
    return _result(
        "C2", "first-correction high-T law", f"rel dev {dev:.2e}",
        "4.5*theta within 1%", dev <= 0.01,
    )


def _c3(faults):
    v = en.u2(1000.0, 1e-6)
    want = -(1.5 * 1000.0 + 0.5 * math.pi * 1e-6 * 1000.0**2)
    dev = abs(v - want) / abs(v)
    return _result(
        "C3", "second-correction high-T law", f"rel dev {dev:.2e}",
        "-(1.5*theta + pi/2 g theta^2) within 1%", dev <= 0.01,
    )


def _fit_quadratic_coeff(thetas, ys):
    # least squares through the origin against theta^2
    x = thetas * thetas
    return float(np.dot(ys, x) / np.dot(x, x))


def _c4(faults):
    g = 1e-6
    g_run = 2.0 * g if "c4-g-doubled" in faults else g
    thetas = np.geomspace(200.0, 1000.0, 25)
    ys = np.array([en.delta_e(float(th), g_run) for th in thetas])
    c2 = _fit_quadratic_coeff(thetas, ys)
    dev = abs(c2 + 0.5 * math.pi * g) / (0.5 * math.pi * g)
    ok = dev <= 0.01 and bool(np.all(ys < 0.0))
    return _result(
        "C4", "energy-shift quadratic coefficient",
        f"c2 dev {dev:.2e}, all<0: {bool(np.all(ys < 0.0))}",
        "-(pi/2) g within 1%, signs", ok,
    )


def _c5(faults):
    g = 1e-6
    thetas = np.geomspace(200.0, 1000.0, 25)
    ys = np.array([en.free_energy_shift(float(th), g, 1e-8) for th in thetas])
    c2 = _fit_quadratic_coeff(thetas, ys)
    dev = abs(c2 - 0.5 * math.pi * g) / (0.5 * math.pi * g)
    ok = dev <= 0.02 and bool(np.all(ys > 0.0))
    return _result(
        "C5", "free-energy quadratic coefficient",
        f"c2 dev {dev:.2e}, all>0: {bool(np.all(ys > 0.0))}",
        "+(pi/2) g within 2%, signs", ok,
    )


def _c6(faults):
    g = 1e-5
    worst = 0.0
    for th in (10.0, 100.0, 1000.0):
        r = en.thermo_residual(th, g)
        de = en.delta_e(th, g)
        worst = max(worst, abs(r / de))
    return _result(
        "C6", "thermodynamic identity residual", f"max |res/dE| {worst:.2e}",
        "<= 1e-3", worst <= 1e-3,
    )


def _c7(faults):
    worst = 0.0
    for th in (0.5, 1.0, 2.0):
        v = en.u0_per_volume(th, 1e-13)
        closed = math.pi**2 * th**4 / 15.0
        worst = max(worst, abs(v - closed) / closed)
    return _result(
        "C7", "blackbody density vs closed form", f"max rel dev {worst:.2e}",
        "<= 1e-10", worst <= 1e-10,
    )


def _c8a(faults):
    worst = 0.0
    for p in (3, 5):
        spec = MomentSpec(p, 5.0, 1e-3)
        m = planck_lorentzian_moment(spec, 1e-11).value
        r = riemann_oracle(spec, 10_000_000)
        worst = max(worst, abs(m - r) / abs(m))
    return _result(
        "C8a", "adaptive vs brute-force oracle", f"max rel dev {worst:.2e}",
        "<= 1e-6 at 1e7 points", worst <= 1e-6,
    )


def _c8b(faults):
    worst = 0.0  # deviation as a fraction of its own 5g bound
    for g in (1e-3, 1e-4):
        for th in (1.0, 10.0, 100.0):
            for p in (3, 5):
                spec = MomentSpec(p, th, g)
                m = planck_lorentzian_moment(spec, 1e-11).value
                n = narrow_resonance_estimate(spec)
                worst = max(worst, abs(m - n) / abs(m) / (5.0 * g))
    return _result(
        "C8b", "adaptive vs pole-background oracle", f"max dev/bound {worst:.2e}",
        "<= 5g relative", worst <= 1.0,
    )


def _c9(faults):
    kw = dict(g=1e-4, v_tilde=1.0, lambda_cut=400.0, theta=10.0)
    d_small = en.full_vs_perturbative(1e-6, **kw)
    d1 = en.full_vs_perturbative(1e-4, **kw)
    d2 = en.full_vs_perturbative(5e-5, **kw)
    ratio = d1 / d2
    ok = d_small <= 1e-4 and 1.6 <= ratio <= 2.4
    return _result(
        "C9", "full-index vs perturbative split",
        f"dev {d_small:.2e}, halving ratio {ratio:.2f}",
        "<= 1e-4; ratio in [1.6, 2.4]", ok,
    )


def _c10(faults):
    grid = GridSpec.parse("10:1000:25:log")
    a = run_sweep(1e-6, grid, rel_tol=1e-8, threads=1).to_csv()
    b = run_sweep(1e-6, grid, rel_tol=1e-8, threads=8).to_csv()
    same = a == b
    return _result(
        "C10", "determinism across thread counts",
        f"byte-identical: {same}", "identical CSV", same,
    )


CRITERIA = (
    ("C1", True, _c1),
    ("C2", True, _c2),
    ("C3", True, _c3),
    ("C4", True, _c4),
    ("C5", False, _c5),
    ("C6", False, _c6),
    ("C7", True, _c7),
    ("C8a", False, _c8a),
    ("C8b", True, _c8b),
    ("C9", True, _c9),
    ("C10", False, _c10),
)


def run_all(fast: bool = False, faults=frozenset()) -> list[CriterionResult]:
    """Run the registry in order; unknown fault names raise ValueError."""
    faults = frozenset(faults)
    unknown = faults - KNOWN_FAULTS
    if unknown:
        raise ValueError(f"unknown fault injection name(s): {sorted(unknown)}")
    results = []
    for cid, is_fast, fn in CRITERIA:
        if fast and not is_fast:
            results.append(
                CriterionResult(cid, _SKIP_LABELS[cid], "-", "-", True, skipped=True)
            )
            continue
        results.append(fn(faults))
    return results


_SKIP_LABELS = {
    "C5": "free-energy quadratic coefficient",
    "C6": "thermodynamic identity residual",
    "C8a": "adaptive vs brute-force oracle",
    "C10": "determinism across thread counts",
}
