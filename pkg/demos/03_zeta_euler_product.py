"""
Truncated Euler products over a length-holonomy spectrum
========================================================

The zeta attached to a spectrum and a (2m+1)-dimensional twist is a product
of local factors 1 - exp(-X) over twist weights, classes, and a semilattice.
Truncations stabilize quickly in the convergence half-plane Re(s) > 2.
"""

import warnings

import numpy as np

from lhspec import Spectrum, log_derivative, zeta_ratio, zeta_tau

spec = Spectrum([(0.8, 1.1, 1), (1.3, 2.0, 2), (2.1, 4.9, 1)])
s = 3.0 + 0.5j

# deepening the truncation: differences fall off geometrically
print("truncation ladder at s =", s)
prev = None
for max_m in (5, 10, 20, 30, 40):
    z = zeta_tau(spec, 1, s, max_m)
    tail = "" if prev is None else f"  |delta| = {abs(z - prev):.3e}"
    print(f"  max_m = {max_m:2d}: {z:.15f}{tail}")
    prev = z

# the analytic log-derivative against a central finite difference
h = 1e-5
psi = log_derivative(spec, 1, s, 20)
fd = (np.log(zeta_tau(spec, 1, s + h, 20)) - np.log(zeta_tau(spec, 1, s - h, 20))) / (2 * h)
print("psi analytic:", psi)
print("psi by FD:   ", fd, " rel err:", abs(fd - psi) / abs(psi))

# disjoint spectra multiply
left, right = Spectrum([(0.8, 1.1, 1)]), Spectrum([(1.3, 2.0, 2), (2.1, 4.9, 1)])
prod = zeta_tau(left, 1, s, 20) * zeta_tau(right, 1, s, 20)
print("multiplicative:", abs(zeta_tau(spec, 1, s, 20) - prod))

# ratios cancel shared classes before evaluating anything
other = Spectrum([(0.8, 1.1, 1), (1.3, 2.0, 2), (1.7, 0.3, 1)])
print("ratio:", zeta_ratio(spec, other, 1, s, 20))

# outside the half-plane the truncated value still exists, with a warning
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    z = zeta_tau(spec, 1, 1.5 + 0j, 20)
print("at s = 1.5:", z, " warned:", bool(caught))
