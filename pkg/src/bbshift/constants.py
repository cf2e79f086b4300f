"""Physical constants in Gaussian (CGS) units.

Everything downstream works with dimensionless groups, so the constants only
enter when reducing lab inputs and when converting the T^2 shift back to Hz.
CODATA 2018 values; the electron charge is derived from the exact SI coulomb
value via e_esu = e_SI * c_cgs / 10.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["GaussianConstants", "CODATA2018"]


@dataclass(frozen=True)
class GaussianConstants:
    """Constant set used for unit reduction. Frozen; build a new one to override."""

    e: float  # electron charge magnitude [esu]
    m_e: float  # electron mass [g]
    c: float  # speed of light [cm/s]
    hbar: float  # reduced Planck constant [erg s]
    k_B: float  # Boltzmann constant [erg/K]

    def damping_rate(self, omega0: float) -> float:
        """Radiation-reaction linewidth gamma = 2 e^2 omega0^2 / (3 m c^3) [rad/s]."""
        if omega0 <= 0.0:
            raise ValueError(f"omega0 must be positive, got {omega0}")
        return 2.0 * self.e**2 * omega0**2 / (3.0 * self.m_e * self.c**3)

    def theta(self, temperature: float, omega0: float) -> float:
        """Dimensionless temperature k_B T / (hbar omega0)."""
        if omega0 <= 0.0:
            raise ValueError(f"omega0 must be positive, got {omega0}")
        return self.k_B * temperature / (self.hbar * omega0)


#: CODATA 2018. e, m_e are the defining pair for the classical electron
#: radius r_e = e^2/(m c^2) = 2.8179403e-13 cm that sets every shift scale.
CODATA2018 = GaussianConstants(
    e=1.602176634e-19 * 2.99792458e9,  # exact SI coulomb value -> esu
    m_e=9.1093837015e-28,
    c=2.99792458e10,
    hbar=1.054571817e-27,
    k_B=1.380649e-16,
)
