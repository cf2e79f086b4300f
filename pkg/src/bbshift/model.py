"""Lorentz-oscillator dispersion model and dimensionless reduction.

All internal math runs in reduced variables: u = omega/omega0, theta =
k_B T/(hbar omega0), g = gamma/omega0, nu = 4 pi N e^2/(m omega0^2),
Lambda = Omega/omega0, v_tilde = V omega0^3/c^3. Energies downstream are in
units of hbar*omega0. Working dimensionless keeps e^2, hbar, c (40 orders of
magnitude apart in CGS) out of the integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import CODATA2018, GaussianConstants

__all__ = [
    "ValidityError",
    "ComplexResponse",
    "PhysicalInput",
    "DimensionlessParams",
    "reduce",
    "polarizability",
    "refractive_index",
    "mode_weight",
    "mode_weight_excess",
    "planck_occupation",
    "planck_occupation_with_zero_point",
]

# Weak-coupling domain of validity. The model is only trustworthy for
# g, nu well below 1; the gates make the domain testable.
G_MAX = 1e-2
NU_MAX = 1e-2


class ValidityError(ValueError):
    """Raised when inputs fall outside the weak-coupling domain of validity."""


@dataclass(frozen=True)
class ComplexResponse:
    """Complex response value (polarizability or refractive index)."""

    re: float
    im: float

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class PhysicalInput:
    """Lab-frame oscillator parameters in Gaussian units.

    charge_sq_over_m defaults to the CODATA electron e^2/m; pass an explicit
    value (or a different constants set) to model other oscillators.
    """

    temperature: float  # K
    omega0: float  # rad/s
    charge_sq_over_m: float = field(default=0.0)  # esu^2/g; 0 -> from constants
    constants: GaussianConstants = CODATA2018

    def __post_init__(self):
        if self.charge_sq_over_m == 0.0:
            c = self.constants
            object.__setattr__(self, "charge_sq_over_m", c.e**2 / c.m_e)
        if self.temperature < 0.0:
            raise ValidityError(f"temperature must be >= 0 K, got {self.temperature}")
        if self.omega0 <= 0.0:
            raise ValidityError(f"omega0 must be positive, got {self.omega0}")
        if self.charge_sq_over_m <= 0.0:
            raise ValidityError("charge_sq_over_m must be positive")
        g = self.reduced_linewidth
        if g >= G_MAX:
            raise ValidityError(
                f"reduced linewidth g = gamma/omega0 = {g:.3e} violates the "
                f"weak-coupling bound g < {G_MAX:g}"
            )

    @property
    def reduced_linewidth(self) -> float:
        """g = gamma/omega0 = 2 e^2 omega0 / (3 m c^3)."""
        return 2.0 * self.charge_sq_over_m * self.omega0 / (3.0 * self.constants.c**3)


@dataclass(frozen=True)
class DimensionlessParams:
    """Reduced parameter set (theta, g, nu, Lambda, v_tilde)."""

    theta: float
    g: float
    nu: float = 0.0
    lambda_cut: float = 100.0
    v_tilde: float = 1.0

    def __post_init__(self):
        if self.theta < 0.0:
            raise ValidityError(f"theta must be >= 0, got {self.theta}")
        if not 0.0 < self.g < G_MAX:
            raise ValidityError(
                f"g = {self.g:.3e} outside the weak-coupling domain (0, {G_MAX:g})"
            )
        if not 0.0 <= self.nu < NU_MAX:
            raise ValidityError(
                f"nu = {self.nu:.3e} outside the dilute-medium domain [0, {NU_MAX:g})"
            )
        if self.lambda_cut <= 1.0:
            raise ValidityError(f"lambda_cut must exceed 1, got {self.lambda_cut}")
        if self.v_tilde <= 0.0:
            raise ValidityError(f"v_tilde must be positive, got {self.v_tilde}")

    @property
    def particle_count(self) -> float:
        """NV = nu * v_tilde / (6 pi g), exact by construction of the reduction."""
        return self.nu * self.v_tilde / (6.0 * math.pi * self.g)


def reduce(
    inp: PhysicalInput, density: float, cutoff: float, volume: float
) -> DimensionlessParams:
    """Reduce lab inputs to DimensionlessParams.

    density in cm^-3, cutoff in rad/s, volume in cm^3.
    """
    if density < 0.0:
        raise ValidityError(f"density must be >= 0, got {density}")
    if volume <= 0.0:
        raise ValidityError(f"volume must be positive, got {volume}")
    if cutoff <= 0.0:
        raise ValidityError(f"cutoff must be positive, got {cutoff}")
    c = inp.constants
    w0 = inp.omega0
    return DimensionlessParams(
        theta=c.k_B * inp.temperature / (c.hbar * w0),
        g=inp.reduced_linewidth,
        nu=4.0 * math.pi * density * inp.charge_sq_over_m / w0**2,
        lambda_cut=cutoff / w0,
        v_tilde=volume * w0**3 / c.c**3,
    )


# ---------------------------------------------------------------------------
# dispersion


def _alpha_c(u, g):
    """Reduced Lorentzian polarizability alpha(u) = 1/(1 - u^2 - i g u).

    Vectorized; u may be a float or ndarray. The physical polarizability is
    (e^2/m omega0^2) * alpha.
    """
    u = np.asarray(u, dtype=float)
    # (1-u)(1+u) keeps the real part accurate near the resonance edge
    return 1.0 / ((1.0 - u) * (1.0 + u) - 1j * g * u)


def _alpha_c_shifted(delta, g):
    """alpha at u = 1 + delta without forming 1 - u^2 by subtraction.

    1 - u^2 = -delta (2 + delta) exactly; essential inside the resonance
    window where |delta| ~ g can be 1e-9.
    """
    delta = np.asarray(delta, dtype=float)
    return 1.0 / (-delta * (2.0 + delta) - 1j * g * (1.0 + delta))


def _index_c(alpha_c, nu):
    """n = sqrt(1 + nu*alpha) on the re > 0, im >= 0 branch.

    numpy's principal sqrt already lands there for arguments off the negative
    real axis, which 1 + nu*alpha never reaches in the validity domain
    (Im(1+nu*alpha) = 0 only where Re >= 1 - nu > 0).
    """
    return np.sqrt(1.0 + nu * alpha_c)


def polarizability(u, g: float) -> ComplexResponse:
    """Reduced polarizability; passive: im >= 0 for u >= 0. Vectorized over u."""
    u = np.asarray(u, dtype=float)
    if np.any(u < 0.0):
        raise ValidityError("u must be >= 0")
    if not 0.0 < g < G_MAX:
        raise ValidityError(f"g = {g:.3e} outside (0, {G_MAX:g})")
    a = _alpha_c(u, g)
    if a.ndim == 0:
        a = complex(a)
    return ComplexResponse(a.real, a.imag)


def refractive_index(u, g: float, nu: float) -> ComplexResponse:
    """n(u) = sqrt(1 + nu*alpha(u)), branch re > 0, im >= 0. Vectorized over u."""
    u = np.asarray(u, dtype=float)
    if np.any(u < 0.0):
        raise ValidityError("u must be >= 0")
    if nu < 0.0:
        raise ValidityError(f"nu must be >= 0, got {nu}")
    n = _index_c(_alpha_c(u, g), nu)
    if n.ndim == 0:
        n = complex(n)
    # branch violation is impossible in-domain; guard against misuse anyway
    assert np.all(np.real(n) > 0.0) and np.all(np.imag(n) >= -0.0), "bad branch"
    return ComplexResponse(n.real, n.imag)


def _mode_weight_terms(u, alpha_c, g, nu):
    """Common core: (m, r) with n_R = 1 + m and r = u * Re(dn/du).

    m is computed as Re(nu*alpha/(1+n)), never as n_R - 1, so the O(nu)
    excess survives cancellation down to nu ~ 1e-14.
    """
    n = _index_c(alpha_c, nu)
    m = (nu * alpha_c / (1.0 + n)).real
    # dn/du = nu * alpha'/(2n), alpha' = (2u + ig) alpha^2
    dn = nu * (2.0 * u + 1j * g) * alpha_c * alpha_c / (2.0 * n)
    r = u * dn.real
    return m, r


def mode_weight(u, g: float, nu: float):
    """Mode-counting integrand factor w(u) = u (n_R u)^2 d(n_R u)/du.

    Vacuum (nu = 0) gives exactly u^3. Vectorized over u.
    """
    u = np.asarray(u, dtype=float)
    if nu == 0.0:
        w = u**3  # exact vacuum value, not 1*u*(1*u)^2 rounding
        return float(w) if w.ndim == 0 else w
    a = _alpha_c(u, g)
    n = _index_c(a, nu)
    nr = n.real
    dn = nu * (2.0 * u + 1j * g) * a * a / (2.0 * n)
    w = u * (nr * u) ** 2 * (nr + u * dn.real)
    return float(w) if w.ndim == 0 else w


def mode_weight_excess(u, g: float, nu: float):
    """w(u) - u^3 in a cancellation-free form.

    Expanding w = u^3 (1+m)^2 (1+m+r) gives
        w - u^3 = u^3 (3m + r + 3m^2 + 2mr + m^3 + m^2 r),
    every term O(nu) or smaller, so the result is accurate even where
    w - u^3 is 1e-14 of w. Vectorized over u.
    """
    u = np.asarray(u, dtype=float)
    m, r = _mode_weight_terms(u, _alpha_c(u, g), g, nu)
    out = u**3 * (3.0 * m + r + m * (3.0 * m + 2.0 * r) + m * m * (m + r))
    return float(out) if out.ndim == 0 else out


def mode_weight_excess_shifted(delta, g: float, nu: float):
    """mode_weight_excess at u = 1 + delta, stable for |delta| down to ~g*1e-6."""
    delta = np.asarray(delta, dtype=float)
    u = 1.0 + delta
    m, r = _mode_weight_terms(u, _alpha_c_shifted(delta, g), g, nu)
    out = u**3 * (3.0 * m + r + m * (3.0 * m + 2.0 * r) + m * m * (m + r))
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Planck factor

# crossover where e^-x approximates 1/(e^x - 1) to < 1e-17 relative
_EXP_SWITCH = 40.0


def planck_occupation(x):
    """Bose occupation 1/(e^x - 1), stable from x ~ 1e-300 up to overflow.

    expm1 keeps the small-x Laurent behavior 1/x - 1/2 + x/12 exact to
    machine precision; beyond x = 40 the e^-x form avoids expm1 overflow.
    Vectorized; raises on x <= 0.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValidityError("planck_occupation requires x > 0")
    if arr.ndim == 0:
        xv = float(arr)
        return math.exp(-xv) if xv > _EXP_SWITCH else 1.0 / math.expm1(xv)
    out = np.empty_like(arr)
    small = arr <= _EXP_SWITCH
    out[small] = 1.0 / np.expm1(arr[small])
    out[~small] = np.exp(-arr[~small])
    return out


def planck_occupation_with_zero_point(x):
    """1/(e^x - 1) + 1/2, the occupation including the zero-point half quantum."""
    return planck_occupation(x) + 0.5
