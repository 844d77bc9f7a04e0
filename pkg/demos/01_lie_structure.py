"""
Structure theory of so(3,1) in explicit 4x4 matrices
====================================================

Builds a generic algebra element, splits it along the Cartan and Iwasawa
decompositions, and checks both splits recombine.  Ends with the restricted
root data that feeds the zeta normalization.
"""

import numpy as np

from lhspec import (
    CartanParams,
    LieElement,
    ROOTS,
    bracket,
    cartan_generator,
    cartan_split,
    exp_cartan,
    in_algebra,
    iwasawa_split,
    restriction_multiplicities,
    rho0,
    root_eval,
    theta,
)

rng = np.random.default_rng(7)

# a generic element: antisymmetric rotation block + symmetric boost column
m = np.zeros((4, 4))
m[0, 1], m[1, 0] = 0.4, -0.4
m[1, 2], m[2, 1] = -0.2, 0.2
m[:3, 3] = m[3, :3] = rng.normal(size=3)
print("membership:", in_algebra(m))

x = LieElement(m)

# Cartan: k is the +1 eigenspace of theta, p the -1 eigenspace
k, p = cartan_split(x)
print("theta(k) = k :", np.allclose(theta(k), k.matrix))
print("theta(p) = -p:", np.allclose(theta(p), -p.matrix))
print("k + p residual:", np.max(np.abs((k + p).matrix - m)))

# Iwasawa: compact + boost line + nilpotent, read off in closed form
ik, ia, in_ = iwasawa_split(x)
print("k + a + n residual:", np.max(np.abs((ik + ia + in_).matrix - m)))
print("nilpotency: n^3 =", np.max(np.abs(np.linalg.matrix_power(in_.matrix, 3))))

# the bracket closes: [H0, n] lands back in the algebra
h0 = cartan_generator(CartanParams(0.0, 1.0))
print("[H0, n] in algebra:", in_algebra(bracket(h0, in_).matrix))

# exp of a Cartan normal form is rotation (+) boost, block by block
g = exp_cartan(CartanParams(0.7, 1.2))
print("exp_cartan(0.7, 1.2) upper block:\n", g[:2, :2])
print("exp_cartan(0.7, 1.2) lower block:\n", g[2:, 2:])

# restricted roots of (g, a_p): multiplicities (2, 0) give rho0 = 1
print("root values at (b=0.25, alpha=2):")
for idx in sorted(ROOTS):
    print(f"  root {idx}: {root_eval(idx, CartanParams(0.25, 2.0)):+.4f}")
print("restriction multiplicities:", restriction_multiplicities())
print("rho0 =", rho0())
