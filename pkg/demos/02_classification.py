"""
Classifying loxodromic isometries by (length, holonomy)
=======================================================

Every loxodromic element of SO(3,1)deg is conjugate to a normal form
rotation-by-b times boost-by-a.  classify() reads (a, b) back off the
eigenvalues of any conjugate, with b reported in [0, pi].
"""

import math

import numpy as np

from lhspec import (
    CartanParams,
    NotLoxodromic,
    Spectrum,
    classify,
    exp_cartan,
    inverse_class,
    power_class,
)

rng = np.random.default_rng(11)
TWO_PI = 2.0 * math.pi


def rotation(i, j, th):
    g = np.eye(4)
    g[i, i] = g[j, j] = math.cos(th)
    g[i, j], g[j, i] = math.sin(th), -math.sin(th)
    return g


# normal form with length 1.8, holonomy 2.4
g = exp_cartan(CartanParams(2.4, 1.8))
print("normal form:", classify(g))

# conjugation does not change the class; holonomy canonicalizes to [0, pi]
h = rotation(0, 1, 0.9) @ exp_cartan(CartanParams(0.0, 0.6)) @ rotation(1, 2, 2.2)
conj = h @ g @ np.linalg.inv(h)
a, b = classify(conj)
print("conjugated:", (a, b), " expected:", (1.8, TWO_PI - 2.4))

# the inverse swaps nothing in length and reflects holonomy
print("inverse:", classify(np.linalg.inv(conj)), "==", inverse_class(a, b))

# powers multiply the length and wind the holonomy mod 2*pi
print("cube:", classify(np.linalg.matrix_power(conj, 3)))
print("power_class:", power_class(a, 2.4, 3))  # uses the uncanonicalized b

# rotations and the identity have no boost part: not loxodromic
for bad in (np.eye(4), rotation(0, 1, 1.0)):
    try:
        classify(bad)
    except NotLoxodromic as exc:
        print("rejected:", exc)

# spectra are canonical multisets of primitive classes
spec = Spectrum([(1.8, 0.7, 2), (0.9, 3.1, 1), (1.8, 0.7, 1)])
print("spectrum:", [(c.length, c.holonomy, c.multiplicity) for c in spec])
print("min length:", spec.min_length(), " total classes:", spec.total())
