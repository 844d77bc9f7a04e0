"""Truncated Euler products over a primitive length-holonomy spectrum.

The zeta function attached to a spectrum and a (2m+1)-dimensional twist is
the triple product over k in {-m..m}, classes p, and semilattice points
(m1, m2) of the local factors

    1 - exp(-X),   X = i*k*b(p) + (m1+m2)*a(p) + i*(m1-m2)*b(p) + s*a(p),

each lattice point entering with exponent 1.  Products are evaluated as
compensated sums of log-factors with a single final exponential, so results
are deterministic and do not underflow for deep truncations.  The full
product converges for Re(s) > 2; the truncated one is defined wherever no
factor vanishes, with a ConvergenceWarning outside the half-plane.
"""

from __future__ import annotations

import cmath
import math
import warnings
from typing import Iterator, NamedTuple

import numpy as np

from .errors import ConvergenceWarning, DivisionByZero, DomainError, FactorZero
from .geodesic import PrimitiveClass, Spectrum, spectrum_difference
from .lie_so31 import rho0


class LatticePoint(NamedTuple):
    """Semilattice index (m1, m2), both nonnegative."""

    m1: int
    m2: int


class TauIndex(NamedTuple):
    """Highest weight m of the twisting representation (dimension 2m+1)."""

    m: int


class Truncation(NamedTuple):
    """Truncation order: m1 and m2 each range over 0..max_m."""

    max_m: int


def _tau_m(tau) -> int:
    m = int(tau.m if isinstance(tau, TauIndex) else tau)
    if m < 0:
        raise DomainError(f"twist index must be nonnegative, got {tau!r}")
    return m


def _max_m(tr) -> int:
    m = int(tr.max_m if isinstance(tr, Truncation) else tr)
    if m < 0:
        raise DomainError(f"truncation order must be nonnegative, got {tr!r}")
    return m


def xi_lambda(lp: LatticePoint, a: float, b: float) -> complex:
    """Semilattice character value exp((m1+m2)*a + i*(m1-m2)*b)."""
    m1, m2 = int(lp[0]), int(lp[1])
    if m1 < 0 or m2 < 0:
        raise DomainError(f"lattice point must be nonnegative, got {lp!r}")
    if a <= 0:
        raise DomainError(f"length must be positive, got {a!r}")
    return cmath.exp(complex((m1 + m2) * a, (m1 - m2) * b))


def _one_minus_exp_neg(re: float, im: float) -> complex:
    # stable 1 - exp(-(re + i*im)): no cancellation for small |X|
    damp = math.exp(-re)
    return complex(
        -math.expm1(-re) + damp * 2.0 * math.sin(im / 2.0) ** 2,
        damp * math.sin(im),
    )


def factor_exponent(k: int, lp: LatticePoint, cls: PrimitiveClass, s: complex) -> complex:
    """The exponent X of the local factor 1 - exp(-X)."""
    a, b = float(cls[0]), float(cls[1])
    m1, m2 = int(lp[0]), int(lp[1])
    s = complex(s)
    return complex(
        (m1 + m2) * a + s.real * a,
        k * b + (m1 - m2) * b + s.imag * a,
    )


def euler_factor(k: int, lp: LatticePoint, cls: PrimitiveClass, s: complex) -> complex:
    """One local factor 1 - exp(-X); exactly 0 when X lies in 2*pi*i*Z."""
    x = factor_exponent(k, lp, cls, s)
    return _one_minus_exp_neg(x.real, x.imag)


def _factor_grid(k: int, cls, s: complex, max_m: int) -> np.ndarray:
    # all local factors of one (k, class) pair over the (m1, m2) square
    a, b = float(cls[0]), float(cls[1])
    m = np.arange(max_m + 1, dtype=float)
    m1, m2 = m[:, None], m[None, :]
    x_re = (m1 + m2) * a + s.real * a
    x_im = k * b + (m1 - m2) * b + s.imag * a
    damp = np.exp(-x_re)
    return (-np.expm1(-x_re) + damp * 2.0 * np.sin(x_im / 2.0) ** 2) + 1j * (
        damp * np.sin(x_im)
    )


def _iter_grids(spec: Spectrum, tau_m: int, s: complex, max_m: int) -> Iterator[tuple]:
    for cls in spec:
        for k in range(-tau_m, tau_m + 1):
            grid = _factor_grid(k, cls, s, max_m)
            zero = np.argwhere(grid == 0)
            if zero.size:
                m1, m2 = (int(v) for v in zero[0])
                raise FactorZero(
                    f"local factor vanishes at s={s!r} for k={k}, "
                    f"(m1, m2)=({m1}, {m2}), class (a={cls[0]!r}, b={cls[1]!r})"
                )
            yield cls, grid


def _warn_halfplane(s: complex) -> None:
    if s.real <= 2.0 * rho0():
        warnings.warn(
            f"Re(s)={s.real!r} is outside the convergence half-plane Re(s) > 2; "
            "truncated value returned",
            ConvergenceWarning,
            stacklevel=3,
        )


def zeta_tau(spec: Spectrum, tau, s: complex, tr) -> complex:
    """Truncated zeta value: the triple product of local factors.

    Evaluated as exp of the compensated sum of multiplicity-weighted
    log-factors.  Raises FactorZero if s is a zero of some local factor.
    """
    s = complex(s)
    tau_m, max_m = _tau_m(tau), _max_m(tr)
    _warn_halfplane(s)
    re_logs: list[float] = []
    im_logs: list[float] = []
    for cls, grid in _iter_grids(spec, tau_m, s, max_m):
        logs = np.log(grid).ravel()
        mult = int(cls[2])
        re_logs.extend((mult * logs.real).tolist())
        im_logs.extend((mult * logs.imag).tolist())
    total = complex(math.fsum(re_logs), math.fsum(im_logs))
    return complex(np.exp(total))


def log_derivative(spec: Spectrum, tau, s: complex, tr) -> complex:
    """Analytic d/ds of log zeta_tau: sum of a(p)*exp(-X)/(1 - exp(-X)).

    Every local factor 1 - exp(-X) contributes a(p)*(1/f - 1) with f the
    factor value, since exp(-X) = 1 - f and dX/ds = a(p).
    """
    s = complex(s)
    tau_m, max_m = _tau_m(tau), _max_m(tr)
    _warn_halfplane(s)
    re_terms: list[float] = []
    im_terms: list[float] = []
    for cls, grid in _iter_grids(spec, tau_m, s, max_m):
        a, mult = float(cls[0]), int(cls[2])
        terms = (mult * a) * (1.0 / grid.ravel() - 1.0)
        re_terms.extend(terms.real.tolist())
        im_terms.extend(terms.imag.tolist())
    return complex(math.fsum(re_terms), math.fsum(im_terms))


def zeta_ratio(spec1: Spectrum, spec2: Spectrum, tau, s: complex, tr) -> complex:
    """Ratio of the two truncated zetas with shared classes cancelled first.

    Classes present in both spectra contribute identical factor sets, so only
    the multiset differences S1 = spec1 - spec2 and S2 = spec2 - spec1 are
    evaluated.  A vanishing surviving denominator factor raises
    DivisionByZero; a vanishing numerator factor propagates as FactorZero.
    """
    s = complex(s)
    tau_m, max_m = _tau_m(tau), _max_m(tr)
    s1, s2 = spectrum_difference(spec1, spec2)
    _warn_halfplane(s)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        try:
            den = zeta_tau(s2, tau_m, s, max_m)
        except FactorZero as exc:
            raise DivisionByZero(f"denominator {exc}") from exc
        num = zeta_tau(s1, tau_m, s, max_m)
    if den == 0:
        raise DivisionByZero(f"denominator zeta underflowed to 0 at s={s!r}")
    return num / den
