"""Windowed zero multisets of the truncated Euler products.

A local factor 1 - exp(-X) vanishes exactly when X lies in 2*pi*i*Z.  For
the factor indexed by (k, m1, m2) and a class (a, b) this pins s to

    Re(s) = -(m1 + m2),    Im(s) = (-b*(m1 - m2 + k) - 2*n*pi) / a,  n in Z,

so the zero set is a union of arithmetic progressions up the vertical lines
Re(s) = 0, -1, -2, ...  Everything here is windowed: |Im(s)| <= im_bound
(called Lambda in the recovery contracts), with exact integer n-ranges so a
windowed multiset is complete for its window by construction.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError, UnderflowError
from .geodesic import Spectrum
from .multisets import TAU_ZERO, ComplexMultiset, RealMultiset
from .zeta import TauIndex, _tau_m

TWO_PI = 2.0 * math.pi


class ZeroWindow(NamedTuple):
    """Window: m1 + m2 <= max_m on the lattice, |Im(s)| <= im_bound."""

    max_m: int
    im_bound: float


def _check_window(w) -> ZeroWindow:
    w = ZeroWindow(*w)
    if int(w.max_m) != w.max_m or w.max_m < 0:
        raise DomainError(f"window max_m must be a nonnegative integer, got {w.max_m!r}")
    if not (w.im_bound > 0):
        raise DomainError(f"window im_bound must be positive, got {w.im_bound!r}")
    return ZeroWindow(int(w.max_m), float(w.im_bound))


def _n_range(a: float, b: float, kk: int, im_bound: float) -> range:
    # integers n with |(-b*kk - 2*n*pi)/a| <= im_bound, exact bounds
    lo = math.ceil((-im_bound * a - b * kk) / TWO_PI)
    hi = math.floor((im_bound * a - b * kk) / TWO_PI)
    return range(lo, hi + 1)


def class_trace(a: float, b: float, ks: Sequence[int], w: ZeroWindow) -> list[float]:
    """All windowed imaginary parts (-b*k - 2*n*pi)/a for k in ks (with repeats)."""
    w = _check_window(w)
    if a <= 0:
        raise DomainError(f"length must be positive, got {a!r}")
    out: list[float] = []
    for k in ks:
        # + 0.0 normalizes -0.0 so canonical forms and JSON output are stable
        out.extend((-b * k - TWO_PI * n) / a + 0.0 for n in _n_range(a, b, k, w.im_bound))
    return out


def zero_multiset(diff: Spectrum, tau, w: ZeroWindow) -> ComplexMultiset:
    """Windowed multiset of zeros contributed by every class of ``diff``.

    Runs over k in {-m..m}, lattice points with m1 + m2 <= max_m, and all
    in-window integers n; coincident values merge with exact multiplicities.
    """
    w = _check_window(w)
    tau_m = _tau_m(tau)
    pairs: list[tuple[complex, int]] = []
    for cls in diff:
        a, b, mult = float(cls[0]), float(cls[1]), int(cls[2])
        for k in range(-tau_m, tau_m + 1):
            for m1 in range(w.max_m + 1):
                for m2 in range(w.max_m + 1 - m1):
                    kk = m1 - m2 + k
                    re = float(-(m1 + m2))
                    pairs.extend(
                        (complex(re, (-b * kk - TWO_PI * n) / a), mult)
                        for n in _n_range(a, b, kk, w.im_bound)
                    )
    return ComplexMultiset(pairs, tol=TAU_ZERO)


def zero_line(diff: Spectrum, tau, w: ZeroWindow) -> RealMultiset:
    """Imaginary parts of the Re(s) = 0 zeros (the m1 = m2 = 0 slice).

    These are the class traces (-b*k - 2*n*pi)/a over k in {-m..m}; with
    m = 0 the slice degenerates to the pure length data {2*n*pi/a}.
    """
    w = _check_window(w)
    tau_m = _tau_m(tau)
    pairs: list[tuple[float, int]] = []
    for cls in diff:
        a, b, mult = float(cls[0]), float(cls[1]), int(cls[2])
        for k in range(-tau_m, tau_m + 1):
            pairs.extend((v, mult) for v in class_trace(a, b, (k,), w))
    return RealMultiset(pairs, tol=TAU_ZERO)


def subtract_trace(
    ms: RealMultiset,
    a: float,
    b: float,
    ks: Sequence[int],
    mult: int,
    w: ZeroWindow,
    tol: float = TAU_ZERO,
) -> RealMultiset:
    """Remove ``mult`` copies of the windowed trace of class (a, b) over ks.

    Interior points are removed strictly (UnderflowError on shortfall).
    Near the window edge the generating and subtracting sides can round the
    inclusion of the outermost point differently (the class parameter here
    is typically recovered, an ulp away from the generator's), so the trace
    is padded one step past the window and every point in the edge zone is
    subtracted when present but forgiven when absent.
    """
    w = _check_window(w)
    if a <= 0:
        raise DomainError(f"length must be positive, got {a!r}")
    band = tol * max(1.0, w.im_bound)
    agg: dict[float, int] = {}
    for k in ks:
        r = _n_range(a, b, k, w.im_bound)
        for n in range(r.start - 1, r.stop + 1):
            v = (-b * k - TWO_PI * n) / a + 0.0
            agg[v] = agg.get(v, 0) + mult
    interior = [(v, m) for v, m in agg.items() if abs(v) <= w.im_bound - band]
    edge = [(v, m) for v, m in agg.items() if abs(v) > w.im_bound - band]
    out = ms.subtract(interior, tol)
    if edge:
        out = out.subtract(edge, tol, partial=True)
    return out


def strip_k0(zl: RealMultiset, lengths: RealMultiset, w: ZeroWindow) -> RealMultiset:
    """Remove the k = 0 contribution {-2*n*pi/a : a in lengths} from a zero line.

    What remains of an m = 1 zero line is the k = +1/-1 data the ratio
    recovery peels.  Subtracting an empty length multiset is a no-op.
    """
    w = _check_window(w)
    out = zl
    for a, mult in lengths:
        try:
            out = subtract_trace(out, a, 0.0, (0,), mult, w)
        except UnderflowError as exc:
            raise UnderflowError(
                f"zero line is missing k=0 trace points of length {a!r}: {exc}"
            ) from exc
    return out
