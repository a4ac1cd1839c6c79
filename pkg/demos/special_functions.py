"""
The special-function layer, route against route
===============================================

Everything upstairs rests on two pillars: a four-variable hypergeometric
series with an independent integral representation, and adaptive
quadrature that survives algebraic tails.  Each pillar is checked against
the other here, at the command line, in a few hundred milliseconds.

Run with:  python3 demos/special_functions.py
"""

import numpy as np

from qcoherent import (
    IntegrandSpec,
    LauricellaArgs,
    hermite_function,
    integrate_line,
    kummer_phi,
    lauricella_fd_integral,
    lauricella_fd_series,
)

# Two evaluation strategies for the same function: a quadruple power
# series summed to convergence, and a one-dimensional Euler integral.
args = LauricellaArgs(
    a=1.3, b=(0.5, 0.25, 0.4, 0.35), c=2.1,
    x=(0.3, -0.2, 0.1 + 0.05j, 0.45),
)
s = lauricella_fd_series(args)
i = lauricella_fd_integral(args)
print(f"hypergeometric, series route   = {s.value:.15g}")
print(f"hypergeometric, integral route = {i.value:.15g}")
print(f"disagreement                   = {abs(s.value - i.value):.2e}")
print()

# Kummer's function via its limit relation to the exponential: phi(a, a, z) = e^z.
z = 0.7 - 1.1j
print(f"kummer phi(a, a, z) vs exp(z): gap = {abs(kummer_phi(2.5, 2.5, z) - np.exp(z)):.2e}")
print()

# Hermite functions are orthonormal; quadrature should say <h3|h3> = 1
# and <h3|h5> = 0.
def h33(x):
    return hermite_function(3, x) * hermite_function(3, x)

def h35(x):
    return hermite_function(3, x) * hermite_function(5, x)

n33 = integrate_line(h33, tol=1e-12)
n35 = integrate_line(h35, tol=1e-12)
print(f"<h3|h3> = {n33.value.real:.15f}   ({n33.evaluations} evaluations)")
print(f"<h3|h5> = {n35.value.real:.2e}")
print()

# The line integrator's reason to exist: algebraic tails.  x^2 / (1+x^2)^2
# decays like x^-2, far too slow for naive truncation; the exact value is pi/2.
spec = IntegrandSpec(lambda x: x * x / (1.0 + x * x) ** 2)
res = integrate_line(spec, tol=1e-10)
print(f"slow-tail integral = {res.value.real:.12f}   (pi/2 = {np.pi / 2:.12f})")
print(f"reported error     = {res.err_estimate:.1e}")
