"""
Building a pseudo-coherent state
================================

Construct the deformed analogue of a harmonic-oscillator coherent state,
normalize it two independent ways, and check the properties that make it
"coherent": the lowering-operator eigenvalue relation and the overlap
structure of a non-orthogonal family.

Run with:  python3 demos/build_a_state.py
"""

import numpy as np

from qcoherent import (
    StateLabel,
    apply_aq,
    beta_roots,
    coherent_coefficients,
    coherent_psi,
    normalization_constant,
    overlap,
    pseudo_coherent_wavefunction,
    psi_unnormalized,
)

q = 1.5
alpha = 0.4 + 0.1j

print(f"state: q = {q}, alpha = {alpha}")
print()

# ---------------------------------------------------------------------------
# The raw (unnormalized) wavefunction and its quartic root structure.
# |psi_un|^2 is the reciprocal of a quartic polynomial; its four complex
# roots drive every closed-form integral in the package.
# ---------------------------------------------------------------------------
sample = psi_unnormalized(q, alpha, 0.7)
print(f"psi_un(0.7)      = {sample.value:.12g}")

roots = beta_roots(q, alpha)
print("quartic roots    =", ", ".join(f"{r:.6g}" for r in roots.as_tuple()))
print()

# ---------------------------------------------------------------------------
# Normalization, two routes.  The oracle integrates |psi_un|^2 over the
# real line adaptively; the closed form evaluates a multivariate
# hypergeometric expression in the roots above.  They must agree.
# ---------------------------------------------------------------------------
a_oracle = normalization_constant(q, alpha, method="oracle")
a_closed = normalization_constant(q, alpha, method="closed-form")
print(f"A (oracle)       = {a_oracle:.15g}")
print(f"A (closed form)  = {a_closed:.15g}")
print(f"route gap        = {abs(a_oracle - a_closed):.3e}")

wf = pseudo_coherent_wavefunction(q, alpha, normalized=True)
xs = np.linspace(-12.0, 12.0, 4001)
vals = np.array([wf(x).value for x in xs])
print(f"grid L2 norm     = {np.trapezoid(np.abs(vals) ** 2, xs):.9f}  (coarse check)")
print()

# ---------------------------------------------------------------------------
# Eigenvalue property: the deformed lowering operator reproduces alpha
# pointwise, a_q psi = alpha psi.  The operator's fractional power makes
# it scale-sensitive, so the relation is exact for the raw unit-prefactor
# profile (pseudo_coherent_wavefunction's default), not the normalized one.
# ---------------------------------------------------------------------------
raw = pseudo_coherent_wavefunction(q, alpha)
worst = 0.0
for x in (-1.3, -0.2, 0.5, 1.1, 2.0):
    lhs = apply_aq(q, raw, x)
    rhs = alpha * raw(x).value
    worst = max(worst, abs(lhs - rhs))
print(f"max |a_q psi - alpha psi| over 5 points = {worst:.3e}")
print()

# ---------------------------------------------------------------------------
# Overlaps: distinct labels are never orthogonal, never identical.
# ---------------------------------------------------------------------------
here = StateLabel(q, alpha)
for other_alpha in (0.4 + 0.1j, 0.0, 1.0, 0.5j):
    v = overlap(here, StateLabel(q, other_alpha))
    print(f"<alpha|{other_alpha!s:>8}>  modulus = {abs(v):.9f}")
print()

# The q = 1 sentinel is the ordinary coherent state: its number-basis
# coefficients follow the familiar Poissonian weights.
coeffs = coherent_coefficients(alpha, n_max=6)
probs = np.abs(coeffs) ** 2
print("q = 1 sentinel, |c_n|^2 for n = 0..6:")
print("  " + "  ".join(f"{p:.5f}" for p in probs))
print(f"  coherent_psi(alpha, 0) = {coherent_psi(alpha, 0.0):.9g}")
