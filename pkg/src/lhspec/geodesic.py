"""Length-holonomy invariants of loxodromic isometries and their spectra.

A loxodromic element of SO(3,1)° is conjugate to a block normal form:
a rotation by b in the (1,2) plane times a boost by a > 0 in the (3,4)
plane.  Its eigenvalues are {e^a, e^-a, e^{ib}, e^{-ib}}, so (a, b) can be
read off the spectrum of any conjugate -- up to the sign of b, which
eigenvalues cannot see.  Bare matrices therefore classify to b in [0, pi];
spectra built this way are to be read modulo the class <-> inverse-class
identification (a, b) ~ (a, 2pi - b).
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import DomainError, NotInGroup, NotLoxodromic
from .lie_so31 import J
from .multisets import RealMultiset

TWO_PI = 2.0 * math.pi

#: absolute clustering tolerance on (length, holonomy) coordinates
TAU_SPEC = 1e-9

#: largest eigenvalue modulus must exceed this to count as loxodromic
#: (separates parabolic numerical noise from genuine translation length)
LOXODROMIC_THRESHOLD = 1.0 + 1e-10


class PrimitiveClass(NamedTuple):
    """One primitive conjugacy class: geodesic length, holonomy angle, count."""

    length: float
    holonomy: float
    multiplicity: int = 1


class ClassInvariant(NamedTuple):
    """Normal-form data of a (possibly imprimitive) class delta^j."""

    length: float
    holonomy: float
    primitive_power: int = 1

    def ratio(self) -> float:
        """The holonomy-to-length ratio c = b/a."""
        return self.holonomy / self.length


def _validate(cls: PrimitiveClass) -> PrimitiveClass:
    length, holonomy, mult = float(cls[0]), float(cls[1]), int(cls[2])
    if not (math.isfinite(length) and length > 0):
        raise DomainError(f"class length must be positive, got {length!r}")
    if not (0.0 <= holonomy < TWO_PI):
        raise DomainError(f"holonomy must lie in [0, 2*pi), got {holonomy!r}")
    if mult < 1:
        raise DomainError(f"multiplicity must be a positive integer, got {mult!r}")
    return PrimitiveClass(length, holonomy, mult)


class Spectrum:
    """Canonically sorted finite multiset of PrimitiveClass.

    Entries agreeing in both coordinates within ``tol`` are merged by
    multiplicity addition; the representative of a merged cluster is the
    first entry in canonical (length, holonomy) order, so the stored form
    does not depend on insertion order.
    """

    __slots__ = ("classes",)

    def __init__(self, classes: Iterable = (), tol: float = TAU_SPEC):
        items = sorted(_validate(PrimitiveClass(*c)) for c in classes)
        merged: list[PrimitiveClass] = []
        for c in items:
            if (
                merged
                and abs(c.length - merged[-1].length) <= tol
                and abs(c.holonomy - merged[-1].holonomy) <= tol
            ):
                prev = merged[-1]
                merged[-1] = prev._replace(multiplicity=prev.multiplicity + c.multiplicity)
            else:
                merged.append(c)
        self.classes: tuple[PrimitiveClass, ...] = tuple(merged)

    def __iter__(self) -> Iterator[PrimitiveClass]:
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def __bool__(self) -> bool:
        return bool(self.classes)

    def __eq__(self, other) -> bool:
        return isinstance(other, Spectrum) and self.classes == other.classes

    def __hash__(self) -> int:
        return hash(self.classes)

    def __repr__(self) -> str:
        return f"Spectrum({list(self.classes)!r})"

    def total(self) -> int:
        return sum(c.multiplicity for c in self.classes)

    def lengths(self) -> RealMultiset:
        """Length multiset with multiplicity (holonomy forgotten)."""
        return RealMultiset(((c.length, c.multiplicity) for c in self.classes), tol=TAU_SPEC)

    def min_length(self) -> float:
        if not self.classes:
            raise DomainError("empty spectrum has no minimal length")
        return min(c.length for c in self.classes)

    def union(self, other: "Spectrum") -> "Spectrum":
        return Spectrum(list(self.classes) + list(other.classes))

    def inverse(self) -> "Spectrum":
        """The spectrum of the inverse classes: (a, b) -> (a, (2pi - b) mod 2pi)."""
        return Spectrum(
            (c.length, inverse_class(c.length, c.holonomy)[1], c.multiplicity)
            for c in self.classes
        )


def merge(spec: Spectrum, cls: PrimitiveClass, tol: float = TAU_SPEC) -> Spectrum:
    """Add one class to a spectrum, merging within tol of an existing entry.

    The existing entry's coordinates stay the cluster representative.
    """
    cls = _validate(PrimitiveClass(*cls))
    out = list(spec.classes)
    for i, c in enumerate(out):
        if abs(cls.length - c.length) <= tol and abs(cls.holonomy - c.holonomy) <= tol:
            out[i] = c._replace(multiplicity=c.multiplicity + cls.multiplicity)
            return Spectrum(out, tol=tol)
    return Spectrum(out + [cls], tol=tol)


def spectrum_difference(
    spec1: Spectrum, spec2: Spectrum, tol: float = TAU_SPEC
) -> tuple[Spectrum, Spectrum]:
    """Multiset differences (spec1 - spec2, spec2 - spec1) on (length, holonomy).

    Classes matching in both coordinates within tol cancel multiplicity-wise;
    only the excess on each side survives.
    """
    left: list[PrimitiveClass] = []
    remaining = [list(c) for c in spec2.classes]
    for c in spec1.classes:
        want = c.multiplicity
        for r in remaining:
            if want == 0:
                break
            if r[2] > 0 and abs(c.length - r[0]) <= tol and abs(c.holonomy - r[1]) <= tol:
                take = min(want, r[2])
                r[2] -= take
                want -= take
        if want > 0:
            left.append(c._replace(multiplicity=want))
    right = [PrimitiveClass(r[0], r[1], r[2]) for r in remaining if r[2] > 0]
    return Spectrum(left, tol=tol), Spectrum(right, tol=tol)


def group_residual(g) -> float:
    """Max entrywise residual of g^T J g = J."""
    m = np.asarray(g, dtype=float)
    return float(np.max(np.abs(m.T @ J @ m - J)))


def in_group(g, tol: float = 1e-12) -> bool:
    """Membership test for SO(3,1)°: g^T J g = J, det g = 1, g44 >= 1.

    Tolerances scale with the size of g: entries of a boost by a grow like
    e^a, and the residual of the quadratic (resp. quartic) invariant picks
    up rounding of that order squared (resp. fourth power).
    """
    m = np.asarray(g, dtype=float)
    if m.shape != (4, 4) or not np.all(np.isfinite(m)):
        return False
    scale = max(1.0, float(np.max(np.abs(m))))
    if group_residual(m) > tol * scale**2:
        return False
    if abs(float(np.linalg.det(m)) - 1.0) > tol * scale**4:
        return False
    return m[3, 3] >= 1.0 - tol * scale**2


def classify(g, tol: float = 1e-12) -> tuple[float, float]:
    """Read the (length, holonomy) invariants (a, b) off a loxodromic matrix.

    a is the log of the largest eigenvalue modulus; b is the common absolute
    argument of the unit-modulus eigenvalue pair, hence lands in [0, pi]
    (a bare matrix carries no orientation to fix the sign of b).
    """
    m = np.asarray(g, dtype=float)
    if not in_group(m, tol=tol):
        raise NotInGroup(
            f"matrix is not in SO(3,1)° within tolerance (g^T J g residual "
            f"{group_residual(m) if m.shape == (4, 4) else float('nan'):.3e})"
        )
    ev = np.linalg.eigvals(m)
    moduli = np.abs(ev)
    lam = float(moduli.max())
    if lam <= LOXODROMIC_THRESHOLD:
        raise NotLoxodromic(
            f"largest eigenvalue modulus {lam!r} does not exceed {LOXODROMIC_THRESHOLD!r}"
        )
    a = math.log(lam)
    # the two middle eigenvalues by modulus are the unit rotation pair
    order = np.argsort(moduli)
    b = float((abs(np.angle(ev[order[1]])) + abs(np.angle(ev[order[2]]))) / 2.0)
    return a, b


def inverse_class(a: float, b: float) -> tuple[float, float]:
    """Invariants of the inverse class: same length, holonomy 2pi - b mod 2pi."""
    if a <= 0:
        raise DomainError(f"length must be positive, got {a!r}")
    return a, (TWO_PI - b) % TWO_PI


def power_class(a: float, b: float, j: int) -> ClassInvariant:
    """Invariants of the j-th power: boosts add, angles add mod 2pi."""
    if a <= 0:
        raise DomainError(f"length must be positive, got {a!r}")
    if int(j) != j or j < 1:
        raise DomainError(f"power must be a positive integer, got {j!r}")
    j = int(j)
    return ClassInvariant(j * a, (j * b) % TWO_PI, j)
