"""
Dispersion of a dilute oscillator gas
=====================================

Walk the complex response across the resonance and watch how a small
density nu tilts the photon mode count. Everything is in reduced units:
frequency u in units of the oscillator frequency, linewidth g, density nu.
"""

import numpy as np

from bbshift import mode_weight, mode_weight_excess, polarizability, refractive_index

g = 1e-3
nu = 1e-4

# the response is Lorentzian: real part swings, imaginary part peaks at u=1
print("u        Re alpha     Im alpha     Re n-1       Im n")
for u in (0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0):
    a = polarizability(u, g)
    n = refractive_index(u, g, nu)
    print(f"{u:<8g} {a.re:+.4e} {a.im:+.4e} {n.re - 1:+.4e} {n.im:.4e}")

# at exact resonance the polarizability is purely imaginary, i/g
a1 = polarizability(1.0, g)
print(f"\nalpha(1) = {a1.re:+.3e} + {a1.im:.6e} i   (expected i/g = i*{1/g:g})")

# mode weight w(u): u^3 in vacuum, perturbed at O(nu) in the medium.
# below resonance (n > 1) modes crowd in, far above they thin out.
us = np.array([0.25, 0.5, 0.75, 1.5, 3.0, 10.0])
w = mode_weight(us, g, nu)
excess = mode_weight_excess(us, g, nu)
print("\nu        w - u^3        excess/nu")
for u, wv, ex in zip(us, w - us**3, excess):
    print(f"{u:<8g} {wv:+.6e} {ex / nu:+.6e}")

# sanity: the two routes to the excess agree and vacuum is exact
assert np.allclose(w - us**3, excess, rtol=1e-9, atol=1e-300)
assert np.array_equal(mode_weight(us, g, 0.0), us**3)
print("\nvacuum limit and excess consistency: ok")
