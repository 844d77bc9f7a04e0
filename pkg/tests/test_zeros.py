"""Windowed zero multisets and trace subtraction."""

import math

import pytest

from lhspec import (
    ComplexMultiset,
    DomainError,
    LatticePoint,
    PrimitiveClass,
    RealMultiset,
    Spectrum,
    UnderflowError,
    ZeroWindow,
    class_trace,
    euler_factor,
    strip_k0,
    zero_line,
    zero_multiset,
)
from lhspec.zeros import subtract_trace

from helpers import TWO_PI, rand_spectrum


def brute_zeros(spec, tau_m, w, n_span=2000):
    """Oracle: enumerate Eq-style zeros with a wide fixed n scan, then window."""
    pairs = []
    for a, b, mult in spec:
        for k in range(-tau_m, tau_m + 1):
            for m1 in range(w.max_m + 1):
                for m2 in range(w.max_m + 1 - m1):
                    for n in range(-n_span, n_span + 1):
                        s2 = (-b * (m1 - m2 + k) - TWO_PI * n) / a
                        if abs(s2) <= w.im_bound:
                            pairs.append((complex(-(m1 + m2), s2), mult))
    return ComplexMultiset(pairs)


def test_window_validation():
    with pytest.raises(DomainError):
        zero_line(Spectrum(), 0, ZeroWindow(-1, 5.0))
    with pytest.raises(DomainError):
        zero_line(Spectrum(), 0, ZeroWindow(0, 0.0))
    with pytest.raises(DomainError):
        class_trace(-1.0, 0.0, (0,), ZeroWindow(0, 5.0))


def test_zero_multiset_spec_example():
    # a = 2pi, b = 0: s2 = -n, so the window |s2| <= 2.5 holds n in -2..2
    spec = Spectrum([(TWO_PI, 0.0, 1)])
    zm = zero_multiset(spec, 0, ZeroWindow(0, 2.5))
    assert zm.entries == (
        (-2j, 1),
        (-1j, 1),
        (0j, 1),
        (1j, 1),
        (2j, 1),
    )
    doubled = zero_multiset(Spectrum([(TWO_PI, 0.0, 2)]), 0, ZeroWindow(0, 2.5))
    assert [v for v, _ in doubled] == [v for v, _ in zm]
    assert all(m == 2 for _, m in doubled)


def test_zero_multiset_empty():
    assert not zero_multiset(Spectrum(), 1, ZeroWindow(2, 5.0))


def test_zero_line_pure_length_example():
    zl = zero_line(Spectrum([(1.0, 0.0, 1)]), 0, ZeroWindow(0, 10.0))
    assert zl.entries == ((-TWO_PI, 1), (0.0, 1), (TWO_PI, 1))


def test_zero_line_with_twist_matches_brute_force():
    spec = Spectrum([(2.0, 1.0, 1)])
    w = ZeroWindow(1, 4.0)
    zl = zero_line(spec, 1, w)
    want = []
    for k in (-1, 0, 1):
        for n in range(-50, 51):
            v = (-1.0 * k - TWO_PI * n) / 2.0
            if abs(v) <= 4.0:
                want.append(v)
    assert zl == RealMultiset.from_values(want)


def test_zero_multiset_matches_brute_force_oracle(rng):
    for _ in range(10):
        spec = rand_spectrum(rng, max_classes=3, lmin=0.5, lmax=4.0, b_margin=0.0)
        w = ZeroWindow(int(rng.integers(0, 3)), float(rng.uniform(3.0, 10.0)))
        assert zero_multiset(spec, 1, w) == brute_zeros(spec, 1, w)


def test_zero_line_is_the_re_zero_slice(rng):
    spec = rand_spectrum(rng, max_classes=3, lmin=0.5, lmax=3.0)
    w = ZeroWindow(2, 8.0)
    zm = zero_multiset(spec, 1, w)
    assert zm.on_line(0.0) == zero_line(spec, 1, w)


def test_every_zero_annihilates_its_factor(rng):
    for _ in range(5):
        spec = rand_spectrum(rng, max_classes=3, lmin=0.5, lmax=3.0)
        w = ZeroWindow(2, 8.0)
        for cls in spec:
            a, b = cls.length, cls.holonomy
            for k in (-1, 0, 1):
                for m1 in range(w.max_m + 1):
                    for m2 in range(w.max_m + 1 - m1):
                        for n in range(-3, 4):
                            s2 = (-b * (m1 - m2 + k) - TWO_PI * n) / a
                            s = complex(-(m1 + m2), s2)
                            f = euler_factor(k, LatticePoint(m1, m2), cls, s)
                            assert abs(f) < 1e-12


def test_inverse_closure_leaves_zero_line_invariant(rng):
    for _ in range(10):
        spec = rand_spectrum(rng, max_classes=4, lmin=0.5, lmax=3.0)
        w = ZeroWindow(1, float(rng.uniform(5.0, 20.0)))
        a = zero_line(spec, 1, w)
        b = zero_line(spec.inverse(), 1, w)
        assert a.total() == b.total()
        paired = [abs(x - y) for x, y in zip(a.values(), b.values())]
        assert max(paired, default=0.0) < 1e-9


def test_window_monotonicity(rng):
    spec = rand_spectrum(rng, max_classes=4, lmin=0.5, lmax=3.0)
    small = ZeroWindow(1, 6.0)
    big = ZeroWindow(1, 14.0)
    zm_small = zero_multiset(spec, 1, small)
    zm_big = zero_multiset(spec, 1, big)
    assert zm_big.total() >= zm_small.total()
    assert zm_big.restrict_im(6.0) == zm_small


def test_generation_order_invariance():
    classes = [(1.3, 0.4, 1), (0.7, 2.0, 2), (2.9, 5.1, 1)]
    w = ZeroWindow(1, 9.0)
    a = zero_multiset(Spectrum(classes), 1, w)
    b = zero_multiset(Spectrum(classes[::-1]), 1, w)
    assert a == b


def test_class_trace_values_and_window():
    w = ZeroWindow(0, 10.0)
    tr = class_trace(2.0, 0.0, (0,), w)
    assert sorted(tr) == [-3 * math.pi, -2 * math.pi, -math.pi, 0.0, math.pi,
                          2 * math.pi, 3 * math.pi]
    assert all(abs(v) <= 10.0 for v in tr)
    # k = +1/-1 pair of a twisted class
    tr = class_trace(1.0, 1.0, (1, -1), ZeroWindow(0, 3.0))
    assert sorted(tr) == [-1.0, 1.0]


def test_strip_k0_leaves_only_twisted_traces():
    spec = Spectrum([(2.0, 1.0, 1)])
    w = ZeroWindow(0, 4.0)
    zl = zero_line(spec, 1, w)
    rest = strip_k0(zl, RealMultiset([(2.0, 1)]), w)
    want = RealMultiset.from_values(class_trace(2.0, 1.0, (1, -1), w))
    assert rest == want


def test_strip_k0_b_zero_removes_everything():
    spec = Spectrum([(1.5, 0.0, 2)])
    w = ZeroWindow(0, 12.0)
    zl = zero_line(spec, 0, w)
    assert strip_k0(zl, spec.lengths(), w).total() == 0


def test_strip_k0_empty_lengths_is_noop():
    zl = RealMultiset.from_values([0.5, -0.5])
    out = strip_k0(zl, RealMultiset(), ZeroWindow(0, 2.0))
    assert out == zl


def test_strip_k0_mismatched_lengths_underflows():
    spec = Spectrum([(2.0, 1.0, 1)])
    w = ZeroWindow(0, 6.0)
    zl = zero_line(spec, 1, w)
    with pytest.raises(UnderflowError):
        strip_k0(zl, RealMultiset([(3.0, 1)]), w)


def test_subtract_trace_strict_interior():
    w = ZeroWindow(0, 10.0)
    data = RealMultiset.from_values(class_trace(2.0, 0.0, (0,), w))
    assert subtract_trace(data, 2.0, 0.0, (0,), 1, w).total() == 0
    # an interior point missing -> underflow
    broken = data.subtract([(math.pi, 1)], tol=0.0)
    with pytest.raises(UnderflowError):
        subtract_trace(broken, 2.0, 0.0, (0,), 1, w)


def test_subtract_trace_forgives_window_edge():
    # outermost trace point exactly at the boundary: a subtracting side whose
    # recovered length rounds the inclusion differently must still succeed
    a = 0.7310585786300049
    w = ZeroWindow(0, 10 * TWO_PI / a)
    full = class_trace(a, 0.0, (0,), w)
    edge = max(full)
    assert edge == pytest.approx(w.im_bound)
    missing_edge = RealMultiset.from_values(v for v in full if abs(v) < edge)
    out = subtract_trace(missing_edge, a, 0.0, (0,), 1, w)
    assert out.total() == 0
