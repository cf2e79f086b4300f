"""Adaptive quadrature for Planck-Lorentzian moments.

The central difficulty: integrands carry a resonance of fractional width g
down to 1e-9 at u = 1, under a Planck envelope whose support runs out to
u ~ 40*theta. Three ingredients keep this controlled:

  * user-forced panel knots, so the adaptive subdivision cannot miss the spike;
  * a tangent change of variable u = 1 + (g/2) tan(phi) on the resonance
    window [1 - beta*g, 1 + beta*g], which maps the Lorentzian peak to an
    O(1) flat integrand;
  * explicit tail truncation at u_max = max(40*theta, 10) with the dropped
    mass bounded and reported, never silently ignored.

The panel rule is the nested Gauss(7)/Kronrod(15) pair; panel work is
vectorized across panels and accumulation is position-sorted, so results are
bitwise deterministic regardless of how callers thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import G_MAX, ValidityError, planck_occupation

__all__ = [
    "QuadratureResult",
    "QuadratureBudgetError",
    "MomentSpec",
    "integrate_adaptive",
    "integrate_with_resonance_window",
    "window_integrand",
    "planck_lorentzian_moment",
    "narrow_resonance_estimate",
    "riemann_oracle",
    "RESONANCE_BETA",
    "tail_cutoff",
]

# half-width of the resonance window in units of g
RESONANCE_BETA = 50.0

DEFAULT_BUDGET = 1_000_000

# Gauss(7)/Kronrod(15) abscissae and weights (positive half, descending).
_XGK = np.array(
    [
        0.9914553711208126,
        0.9491079123427585,
        0.8648644233597691,
        0.7415311855993944,
        0.5860872354676911,
        0.4058451513773972,
        0.2077849550078985,
        0.0,
    ]
)
_WGK = np.array(
    [
        0.022935322010529225,
        0.06309209262997855,
        0.10479001032225018,
        0.14065325971552592,
        0.1690047266392679,
        0.19035057806478542,
        0.20443294007529889,
        0.20948214108472783,
    ]
)
_WG = np.array(
    [
        0.12948496616886969,
        0.27970539148927664,
        0.3818300505051189,
        0.41795918367346936,
    ]
)

# ascending node/weight vectors of length 15; Gauss weights zero-padded at
# the Kronrod-only positions
_NODES = np.concatenate([-_XGK[:7], _XGK[7:8], _XGK[6::-1]])
_KRONROD_W = np.concatenate([_WGK[:7], _WGK[7:8], _WGK[6::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[1::2] = np.concatenate([_WG[:3], _WG[3:4], _WG[2::-1]])

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels: int
    evaluations: int

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite quadrature value {self.value}")
        if self.error_estimate < 0.0:
            raise ValueError("negative error estimate")
        if not self.evaluations >= self.panels >= 1:
            raise ValueError(
                f"inconsistent counters: {self.evaluations} evaluations, "
                f"{self.panels} panels"
            )


class QuadratureBudgetError(RuntimeError):
    """Adaptive refinement hit its evaluation budget before converging.

    The best available estimate is attached as .partial.
    """

    def __init__(self, message: str, partial: QuadratureResult):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class MomentSpec:
    """Planck-Lorentzian moment I_p = int_0^inf u^p nbar(u/theta) L_g(u) du."""

    p: int
    theta: float
    g: float

    def __post_init__(self):
        if self.p not in (3, 5):
            raise ValidityError(f"moment power p must be 3 or 5, got {self.p}")
        if not self.theta > 0.0:
            raise ValidityError(f"theta must be positive, got {self.theta}")
        if not 0.0 < self.g < G_MAX:
            raise ValidityError(f"g = {self.g:.3e} outside (0, {G_MAX:g})")


def _eval_panels(f, los, his):
    """Apply the GK15 pair on each [lo, hi]; returns (values, errors, nfev).

    Error per panel follows the QUADPACK recipe: |K - G| softened through the
    scaled deviation resasc, floored at 50 ulp of the absolute integral.
    """
    c = 0.5 * (los + his)
    h = 0.5 * (his - los)
    u = c[:, None] + h[:, None] * _NODES[None, :]
    fv = np.asarray(f(u.ravel()), dtype=float)
    if fv.ndim == 0:  # constant integrand collapsed by the callable
        fv = np.full(u.size, float(fv))
    fv = fv.reshape(u.shape)
    if not np.all(np.isfinite(fv)):
        bad = u.ravel()[~np.isfinite(fv.ravel())][0]
        raise ValueError(f"integrand returned a non-finite value at u = {bad!r}")
    resk = h * (fv @ _KRONROD_W)
    resg = h * (fv @ _GAUSS_W)
    resabs = h * (np.abs(fv) @ _KRONROD_W)
    mean = resk / (his - los)
    resasc = h * (np.abs(fv - mean[:, None]) @ _KRONROD_W)
    err = np.abs(resk - resg)
    mask = (resasc != 0.0) & (err != 0.0)
    scaled = np.ones_like(err)
    np.divide(200.0 * err, resasc, out=scaled, where=mask)
    err = np.where(mask, resasc * np.minimum(1.0, scaled**1.5), err)
    err = np.maximum(err, 50.0 * _EPS * resabs)
    return resk, err, resabs, fv.size


def _wrap_scalar(f):
    vec = np.vectorize(f, otypes=[float])

    def g(u):
        return vec(u)

    return g


def integrate_adaptive(
    f,
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    forced_knots=(),
    *,
    budget: int = DEFAULT_BUDGET,
    abs_tol: float = 0.0,
    vectorized: bool = True,
) -> QuadratureResult:
    """Adaptive GK15 integration of f over [a, b].

    forced_knots seed the initial subdivision, guaranteeing the refinement
    sees structure the caller knows about (a narrow spike, a scale change).
    Refinement splits the worst panels each round until the summed error
    estimate drops under max(rel_tol*|value|, abs_tol), then returns; if the
    evaluation budget would be exceeded first, QuadratureBudgetError carries
    the partial result. Deterministic: panel bookkeeping is position-sorted
    and independent of evaluation order.
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ValueError(f"bad interval [{a}, {b}]")
    if not 1e-14 <= rel_tol <= 1e-2:
        raise ValueError(f"rel_tol {rel_tol:g} outside [1e-14, 1e-2]")
    knots = sorted(set(float(k) for k in forced_knots))
    if knots and not (a < knots[0] and knots[-1] < b):
        raise ValueError("forced_knots must lie strictly inside (a, b)")
    if not vectorized:
        f = _wrap_scalar(f)

    seeds = np.array([a, *knots, b])
    los, his = seeds[:-1].copy(), seeds[1:].copy()
    vals, errs, rabs, nfev = _eval_panels(f, los, his)
    # panels narrower than ~100 ulp cannot be split meaningfully
    frozen = (his - los) < 100.0 * np.spacing(np.maximum(np.abs(los), np.abs(his)))
    roundoff_hits = 0

    while True:
        order = np.argsort(los, kind="stable")
        los, his = los[order], his[order]
        vals, errs, rabs, frozen = vals[order], errs[order], rabs[order], frozen[order]
        total = float(np.sum(vals))
        toterr = float(np.sum(errs))
        # provable double-precision floor: below this further splitting only
        # shuffles roundoff, so accept (estimate stays honest)
        floor = 1.05 * 50.0 * _EPS * float(np.sum(rabs))
        target = max(rel_tol * abs(total), abs_tol, floor)
        if toterr <= target:
            return QuadratureResult(total, toterr, len(vals), nfev)
        if roundoff_hits >= 10:
            # repeated splits that change nothing: the integrand's own noise
            # sets the attainable accuracy here, not the panel widths (the
            # resabs floor cannot see noise from cancellations inside f).
            # Accept with the achieved estimate, as QUADPACK does on ier=2.
            return QuadratureResult(total, toterr, len(vals), nfev)

        live = ~frozen
        if not np.any(live):
            raise QuadratureBudgetError(
                "refinement stalled at roundoff-limited panel widths",
                QuadratureResult(total, toterr, len(vals), nfev),
            )
        cut = 0.3 * float(np.max(errs[live]))
        split = live & (errs >= cut)
        k = int(np.count_nonzero(split))
        if nfev + 30 * k > budget:
            raise QuadratureBudgetError(
                f"evaluation budget {budget} exhausted "
                f"(error {toterr:.3e} vs target {target:.3e})",
                QuadratureResult(total, toterr, len(vals), nfev),
            )
        mid = 0.5 * (los[split] + his[split])
        new_lo = np.concatenate([los[split], mid])
        new_hi = np.concatenate([mid, his[split]])
        new_vals, new_errs, new_rabs, used = _eval_panels(f, new_lo, new_hi)
        nfev += used
        # roundoff detection, per parent: value unchanged by the split while
        # the error refuses to drop (QUADPACK's iroff test)
        child_vals = new_vals[:k] + new_vals[k:]
        child_errs = new_errs[:k] + new_errs[k:]
        stalled = (np.abs(vals[split] - child_vals) <= 1e-5 * np.abs(child_vals)) & (
            child_errs >= 0.99 * errs[split]
        )
        roundoff_hits += int(np.count_nonzero(stalled))
        new_frozen = (new_hi - new_lo) < 100.0 * np.spacing(
            np.maximum(np.abs(new_lo), np.abs(new_hi))
        )
        keep = ~split
        los = np.concatenate([los[keep], new_lo])
        his = np.concatenate([his[keep], new_hi])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])
        rabs = np.concatenate([rabs[keep], new_rabs])
        frozen = np.concatenate([frozen[keep], new_frozen])


# ---------------------------------------------------------------------------
# resonance-window splitting


def tail_cutoff(theta: float) -> float:
    """Effective infinity u_max = max(40*theta, 10); e^-40 bounds the remainder."""
    return max(40.0 * theta, 10.0)


def window_integrand(numer_delta, g: float):
    """Build the phi-space integrand for the resonance window.

    With u = 1 + (g/2) tan(phi) and the Lorentzian L = 1/((1-u^2)^2 + g^2 u^2),
    the combination L * du/dphi reduces exactly to
        (1 + t^2) / (2g * (t^2 (1 + d/2)^2 + (1 + d)^2)),   t = tan(phi),
    d = (g/2) t, which is O(1/g) and flat across the peak. numer_delta(d)
    supplies the remaining factor of the integrand, parameterized by
    d = u - 1 so it can be evaluated without cancellation.
    """

    def f(phi):
        t = np.tan(phi)
        d = 0.5 * g * t
        lw = (1.0 + t * t) / (
            2.0 * g * (t * t * (1.0 + 0.5 * d) ** 2 + (1.0 + d) ** 2)
        )
        return numer_delta(d) * lw

    return f


def _geometric_knots(lo: float, hi: float, extra=()):
    ks = {x for x in extra if lo < x < hi}
    x = 2.0
    while x < hi:
        if x > lo:
            ks.add(x)
        x *= 2.0
    return sorted(ks)


def integrate_with_resonance_window(
    f_u,
    f_phi,
    g: float,
    upper: float,
    rel_tol: float,
    *,
    budget: int = DEFAULT_BUDGET,
) -> QuadratureResult:
    """Integrate a resonant integrand over [0, upper].

    f_u(u) is the integrand on the outer regions; f_phi(phi) is the same
    integrand transformed to the tangent variable on the window
    |u - 1| <= RESONANCE_BETA * g (see window_integrand). Handles upper
    endpoints inside or below the window.
    """
    beta = RESONANCE_BETA
    w_lo, w_hi = 1.0 - beta * g, 1.0 + beta * g
    phi_of = lambda u: math.atan(2.0 * (u - 1.0) / g)
    parts = []

    a_hi = min(w_lo, upper)
    knots = [x for x in (0.25, 0.5, 0.75, 1.0 - 8 * beta * g, 1.0 - 2 * beta * g) if 0.0 < x < a_hi]
    parts.append(
        integrate_adaptive(f_u, 0.0, a_hi, rel_tol, sorted(set(knots)), budget=budget)
    )
    if upper > w_lo:
        phi_lo = phi_of(w_lo)
        phi_hi = phi_of(min(upper, w_hi))
        pknots = [
            p
            for p in (
                -math.atan(20.0),
                -math.atan(2.0),
                0.0,
                math.atan(2.0),
                math.atan(20.0),
            )
            if phi_lo < p < phi_hi
        ]
        parts.append(
            integrate_adaptive(f_phi, phi_lo, phi_hi, rel_tol, pknots, budget=budget)
        )
    if upper > w_hi:
        knots = _geometric_knots(
            w_hi, upper, extra=(1.0 + 2 * beta * g, 1.0 + 8 * beta * g, 1.5)
        )
        parts.append(
            integrate_adaptive(f_u, w_hi, upper, rel_tol, knots, budget=budget)
        )
    return QuadratureResult(
        value=sum(p.value for p in parts),
        error_estimate=sum(p.error_estimate for p in parts),
        panels=sum(p.panels for p in parts),
        evaluations=sum(p.evaluations for p in parts),
    )


# ---------------------------------------------------------------------------
# the Planck-Lorentzian moments


def _moment_numerators(spec: MomentSpec):
    p, theta = spec.p, spec.theta

    def numer_u(u):
        return u**p * planck_occupation(u / theta)

    def numer_delta(d):
        return (1.0 + d) ** p * planck_occupation((1.0 + d) / theta)

    return numer_u, numer_delta


def _moment_tail_bound(spec: MomentSpec, u_max: float) -> float:
    # u^p L <= 1.01 u^(p-4) and nbar(x) <= 1.01 e^-x past the cutoff
    t = spec.theta
    decay = math.exp(-u_max / t) if u_max / t < 700.0 else 0.0
    if spec.p == 5:
        return 1.03 * t * decay * (u_max + t)
    return 1.03 * t * decay / u_max


def planck_lorentzian_moment(
    spec: MomentSpec, rel_tol: float = 1e-10, *, budget: int = DEFAULT_BUDGET
) -> QuadratureResult:
    """I_p(theta, g) over [0, u_max] with the truncation bound in the error.

    Positive integrand, so per-piece relative control gives relative control
    of the total.
    """
    numer_u, numer_delta = _moment_numerators(spec)
    g = spec.g

    def f_u(u):
        omu2 = (1.0 - u) * (1.0 + u)
        return numer_u(u) / (omu2 * omu2 + (g * u) ** 2)

    f_phi = window_integrand(numer_delta, g)
    u_max = tail_cutoff(spec.theta)
    res = integrate_with_resonance_window(
        f_u, f_phi, g, u_max, rel_tol, budget=budget
    )
    return QuadratureResult(
        value=res.value,
        error_estimate=res.error_estimate + _moment_tail_bound(spec, u_max),
        panels=res.panels,
        evaluations=res.evaluations,
    )


# ---------------------------------------------------------------------------
# analytic narrow-resonance oracle


def _planck_u_derivatives(p: int, theta: float):
    """f(u) = u^p nbar(u/theta): value and first three u-derivatives at u = 1."""
    n = planck_occupation(1.0 / theta)
    d1 = -n * (1.0 + n)  # nbar'
    d2 = n * (1.0 + n) * (1.0 + 2.0 * n)
    d3 = -n * (1.0 + n) * (1.0 + 6.0 * n + 6.0 * n * n)
    b0, b1, b2, b3 = n, d1 / theta, d2 / theta**2, d3 / theta**3
    f0 = b0
    f1 = p * b0 + b1
    f2 = p * (p - 1) * b0 + 2 * p * b1 + b2
    f3 = p * (p - 1) * (p - 2) * b0 + 3 * p * (p - 1) * b1 + 3 * p * b2 + b3
    return f0, f1, f2, f3


def narrow_resonance_estimate(spec: MomentSpec, *, budget: int = DEFAULT_BUDGET) -> float:
    """Pole + smooth-background decomposition of I_p, valid for g <= 1e-3.

    The Lorentzian integrates to exactly pi/(2g) (all g), so the pole carries
    (pi/(2g)) * nbar(1/theta). The background is the g -> 0 principal-value
    remainder: the pole-subtracted integrand is folded symmetrically about
    u = 1, where the double pole cancels analytically, leaving a smooth
    integrand for the same adaptive engine. Near the fold point the folded
    integrand is replaced by its Taylor form to keep roundoff out.
    """
    if spec.g > 1e-3:
        raise ValidityError(
            f"narrow-resonance oracle requires g <= 1e-3, got {spec.g:.3e}"
        )
    p, theta = spec.p, spec.theta
    numer_u, _ = _moment_numerators(spec)
    f0, f1, f2, f3 = _planck_u_derivatives(p, theta)
    w = 0.5  # fold half-width
    s_sw = 1e-3  # Taylor switch for the folded integrand
    c0 = -0.5 * f1 + 0.25 * f2
    c2 = -0.25 * f1 + (3.0 / 16.0) * f2 - f3 / 12.0

    def folded(s):
        s = np.asarray(s, dtype=float)
        # exact even part of the kernel: no f0-scale cancellation
        k0 = (12.0 - s * s) / (2.0 * (4.0 - s * s) ** 2)
        out = f0 * k0
        small = s < s_sw
        sb = s[~small]
        gb = np.zeros_like(s)
        gb[~small] = (
            (numer_u(1.0 + sb) - f0) / (2.0 + sb) ** 2
            + (numer_u(1.0 - sb) - f0) / (2.0 - sb) ** 2
        ) / (sb * sb)
        gb[small] = c0 + c2 * s[small] ** 2
        return out + gb

    def outer(u):
        omu2 = (1.0 - u) * (1.0 + u)
        return numer_u(u) / (omu2 * omu2)

    u_max = tail_cutoff(theta)
    rt = 1e-9
    b_left = integrate_adaptive(outer, 0.0, 1.0 - w, rt, (0.25,), budget=budget)
    b_fold = integrate_adaptive(folded, 0.0, w, rt, (0.01, 0.1), budget=budget)
    b_right = integrate_adaptive(
        outer, 1.0 + w, u_max, rt, _geometric_knots(1.0 + w, u_max), budget=budget
    )
    pole = 0.5 * math.pi / spec.g * planck_occupation(1.0 / theta)
    # the three background pieces compute the finite part of
    # int f(u)/(1-u^2)^2 du with the numerator NOT pole-subtracted; the
    # principal-value background of the estimate is int (f - f0) L0, and the
    # fold-regularized finite part of int_0^inf du/(1-u^2)^2 is exactly 1
    # (w-independent), hence one full unit of f0 to take back out.
    return pole - f0 + b_left.value + b_fold.value + b_right.value


# ---------------------------------------------------------------------------
# brute-force oracle


def riemann_oracle(spec: MomentSpec, points: int, *, with_refinement: bool = False):
    """Graded composite trapezoid for I_p; validation only.

    Mesh: uniform u on the outer regions, uniform phi across the tangent-
    transformed window (25% / 25% / 50% of the points). Requires the
    resonance to be brute-force resolvable, hence g >= 1e-4. At 1e7 points
    the result carries ~1e-8 relative error; with_refinement=True returns
    (value, |value - half_mesh_value|) as a Richardson-style accuracy report.
    """
    if points < 100_000:
        raise ValidityError(f"riemann_oracle needs points >= 1e5, got {points}")
    if spec.g < 1e-4:
        raise ValidityError(
            f"riemann_oracle is limited to g >= 1e-4, got {spec.g:.3e}"
        )
    numer_u, numer_delta = _moment_numerators(spec)
    g, theta = spec.g, spec.theta
    beta = RESONANCE_BETA
    u_max = tail_cutoff(theta)

    def f_u(u):
        out = np.zeros_like(u)
        nz = u > 0.0
        omu2 = (1.0 - u[nz]) * (1.0 + u[nz])
        out[nz] = numer_u(u[nz]) / (omu2 * omu2 + (g * u[nz]) ** 2)
        return out

    f_phi = window_integrand(numer_delta, g)

    def value_at(n: int) -> float:
        n_a = n // 4
        n_b = n // 4
        n_c = n - n_a - n_b
        ua = np.linspace(0.0, 1.0 - beta * g, n_a)
        phi = np.linspace(-math.atan(2.0 * beta), math.atan(2.0 * beta), n_b)
        uc = np.linspace(1.0 + beta * g, u_max, n_c)
        va = np.trapezoid(f_u(ua), ua)
        vb = np.trapezoid(f_phi(phi), phi)
        vc = np.trapezoid(f_u(uc), uc)
        return float(va + vb + vc)

    v = value_at(points)
    if not with_refinement:
        return v
    return v, abs(v - value_at(points // 2))
