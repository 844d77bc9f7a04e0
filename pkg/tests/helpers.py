"""Shared generators and oracles for the test suite."""

import math

import numpy as np

from lhspec import CartanParams, Spectrum, exp_cartan

TWO_PI = 2.0 * math.pi


def rand_algebra(rng, scale=1.0):
    """Random element of so(3,1): skew 3x3 block B plus boost column u."""
    b = rng.normal(scale=scale, size=3)
    u = rng.normal(scale=scale, size=3)
    m = np.zeros((4, 4))
    m[0, 1], m[1, 0] = b[0], -b[0]
    m[0, 2], m[2, 0] = b[1], -b[1]
    m[1, 2], m[2, 1] = b[2], -b[2]
    m[:3, 3] = u
    m[3, :3] = u
    return m


def rotation4(i, j, theta):
    """Givens rotation in the (i, j) plane of the compact 3x3 block."""
    g = np.eye(4)
    c, s = math.cos(theta), math.sin(theta)
    g[i, i] = g[j, j] = c
    g[i, j], g[j, i] = s, -s
    return g


def rand_rotation(rng):
    """Random element of the SO(3) block (product of three Givens rotations)."""
    g = np.eye(4)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        g = g @ rotation4(i, j, rng.uniform(0.0, TWO_PI))
    return g


def rand_conjugator(rng, boost=1.0):
    """Generic element of SO(3,1)deg: rotation * moderate boost * rotation."""
    alpha = rng.uniform(-boost, boost)
    return rand_rotation(rng) @ exp_cartan(CartanParams(0.0, alpha)) @ rand_rotation(rng)


def series_exp(m, terms=30):
    """Plain truncated matrix-exponential series, the oracle for exp_cartan."""
    out = np.eye(4)
    term = np.eye(4)
    for k in range(1, terms + 1):
        term = term @ m / k
        out = out + term
    return out


def normal_form(a, b):
    """Loxodromic block normal form: rotation by b times boost by a."""
    return exp_cartan(CartanParams(b, a))


def rand_spectrum(rng, max_classes=20, lmin=0.5, lmax=5.0, b_margin=0.1, max_mult=3):
    """Random spectrum with holonomies bounded away from the degenerate 0/2pi."""
    n = int(rng.integers(1, max_classes + 1))
    return Spectrum(
        (
            float(rng.uniform(lmin, lmax)),
            float(rng.uniform(b_margin, TWO_PI - b_margin)),
            int(rng.integers(1, max_mult + 1)),
        )
        for _ in range(n)
    )


def commensurable_spectrum(rng, lengths, b_margin=0.1, max_mult=3):
    """Spectrum on a fixed (integer-ratio) length set with random holonomies."""
    return Spectrum(
        (
            float(a),
            float(rng.uniform(b_margin, TWO_PI - b_margin)),
            int(rng.integers(1, max_mult + 1)),
        )
        for a in lengths
    )


def expected_ratio_pairs(spec):
    """Canonical (ratio, multiplicity) pairs the peeling should return.

    Nonzero holonomy contributes min(b, 2pi-b)/a per class copy; zero
    holonomy is reported as ratio 0 with doubled multiplicity (the k = +1
    and -1 leftovers of the coincident traces).
    """
    pairs = []
    for a, b, mult in spec:
        if b == 0.0:
            pairs.append((0.0, 2 * mult))
        else:
            pairs.append((min(b, TWO_PI - b) / a, mult))
    return pairs
