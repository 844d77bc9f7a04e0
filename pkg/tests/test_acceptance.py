"""Desk-scale acceptance battery: eight property suites, each with pinned
tolerances and a runtime budget, printing one pass/fail line apiece."""

import contextlib
import io
import math
import time

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from lhspec import (
    CartanParams,
    LatticePoint,
    LieElement,
    NotLoxodromic,
    RealMultiset,
    Spectrum,
    ZeroWindow,
    cartan_generator,
    cartan_split,
    class_trace,
    classify,
    euler_factor,
    exp_cartan,
    iwasawa_split,
    log_derivative,
    multiset_equal,
    recover_lengths,
    recover_ratios,
    rho0,
    smo_check,
    strip_k0,
    zero_line,
    zero_multiset,
    zeta_tau,
)
from lhspec.cli_io import parse_spectrum, run_cli, serialize_spectrum

from helpers import (
    TWO_PI,
    commensurable_spectrum,
    expected_ratio_pairs,
    normal_form,
    rand_algebra,
    rand_conjugator,
    rand_rotation,
    rand_spectrum,
    series_exp,
)
from test_cli_io import GOLDEN, GOLDEN_CASES

PI = math.pi


@contextlib.contextmanager
def budget(name, limit):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"{name}: FAIL ({time.perf_counter() - t0:.2f}s, budget {limit:.0f}s)")
        raise
    dt = time.perf_counter() - t0
    print(f"{name}: {'PASS' if dt < limit else 'FAIL'} ({dt:.2f}s, budget {limit:.0f}s)")
    assert dt < limit, f"{name} exceeded its {limit:.0f}s budget: {dt:.2f}s"


@pytest.fixture(scope="module")
def corpus():
    # 200 spectra, 20 of them on deliberately commensurable length sets
    rng = np.random.default_rng(20260814)
    sets = ((1.0, 2.0), (1.0, 2.0, 3.0), (0.5, 1.5, 3.0))
    specs = [rand_spectrum(rng, max_classes=20, lmin=0.5, lmax=5.0) for _ in range(180)]
    specs += [commensurable_spectrum(rng, sets[i % 3]) for i in range(20)]
    return specs


def test_c1_lie_structure_suite(rng):
    with budget("acceptance 1 (lie structure)", 5.0):
        for _ in range(500):
            x = LieElement(rand_algebra(rng, scale=rng.uniform(0.1, 1.0)))
            k, p = cartan_split(x)
            assert np.max(np.abs((k + p).matrix - x.matrix)) < 1e-12
            ik, ia, in_ = iwasawa_split(x)
            assert np.max(np.abs((ik + ia + in_).matrix - x.matrix)) < 1e-12
        for _ in range(100):
            params = CartanParams(rng.uniform(-PI, PI), rng.uniform(-3.0, 3.0))
            got = exp_cartan(params)
            want = series_exp(cartan_generator(params).matrix)
            assert np.max(np.abs(got - want)) < 1e-12
        assert rho0() == 1.0


def test_c2_classification_suite(rng):
    with budget("acceptance 2 (classification)", 5.0):
        for _ in range(200):
            a = float(rng.uniform(0.5, 5.0))
            b = float(rng.uniform(0.0, TWO_PI))
            h = rand_conjugator(rng, boost=float(rng.uniform(0.0, 1.0)))
            g = h @ normal_form(a, b) @ np.linalg.inv(h)
            got_a, got_b = classify(g)
            assert abs(got_a - a) < 1e-8
            assert abs(got_b - min(b, TWO_PI - b)) < 1e-8
        for bad in (np.eye(4), exp_cartan(CartanParams(0.9, 0.0)), rand_rotation(rng)):
            with pytest.raises(NotLoxodromic):
                classify(bad)


def test_c3_zeta_consistency(rng):
    with budget("acceptance 3 (zeta consistency)", 30.0):
        # short lengths keep psi large relative to the finite-difference noise
        spec = Spectrum(
            (float(rng.uniform(0.5, 1.2)), float(rng.uniform(0.1, TWO_PI - 0.1)), int(m))
            for m in rng.integers(1, 4, size=5)
        )
        h = 1e-5
        for _ in range(10):
            s = complex(rng.uniform(2.5, 5.0), rng.uniform(-3.0, 3.0))
            psi = log_derivative(spec, 1, s, 12)
            fd = (
                np.log(zeta_tau(spec, 1, s + h, 12)) - np.log(zeta_tau(spec, 1, s - h, 12))
            ) / (2 * h)
            assert abs(fd - psi) / abs(psi) < 1e-6

        tail_spec = Spectrum([(0.5, 1.0, 1), (0.9, 2.0, 2), (0.6, 4.0, 3)])
        for s in (2.5 + 0.7j, 3.0 - 1.0j):
            assert abs(zeta_tau(tail_spec, 1, s, 40) - zeta_tau(tail_spec, 1, s, 50)) < 1e-8

        left = Spectrum([(0.7, 1.0, 1), (1.3, 2.5, 2)])
        right = Spectrum([(0.9, 0.4, 1), (2.1, 5.0, 3)])
        s = 3.0 + 0.5j
        prod = zeta_tau(left, 1, s, 25) * zeta_tau(right, 1, s, 25)
        assert abs(zeta_tau(left.union(right), 1, s, 25) - prod) < 1e-10


def _log_abs_product_on_line(spec, tau_m, m_line, ts, max_m):
    # independent modulus formula: |1 - e^(-X)|^2 = 1 - 2 e^(-c) cos(phi + a t) + e^(-2c)
    total = np.zeros_like(ts)
    with np.errstate(divide="ignore"):
        for a, b, mult in spec:
            for k in range(-tau_m, tau_m + 1):
                for m1 in range(max_m + 1):
                    for m2 in range(max_m + 1):
                        c = (m1 + m2 - m_line) * a
                        phi = (k + m1 - m2) * b
                        mod2 = 1.0 - 2.0 * math.exp(-c) * np.cos(phi + a * ts) + math.exp(-2.0 * c)
                        # floor far below any threshold in play keeps the
                        # refinement loop clear of -inf arithmetic
                        total += (0.5 * mult) * np.log(np.maximum(mod2, 1e-300))
    return total


def test_c4_zero_set_completeness(rng):
    with budget("acceptance 4 (zero completeness)", 60.0):
        step = 1e-3
        for _ in range(20):
            spec = rand_spectrum(rng, max_classes=3, lmin=0.7, lmax=2.5, max_mult=2)
            tau_m = int(rng.integers(0, 3))
            w = ZeroWindow(int(rng.integers(0, 3)), float(rng.uniform(6.0, 10.0)))
            zm = zero_multiset(spec, tau_m, w)

            triangle = [
                LatticePoint(m1, m2)
                for m1 in range(w.max_m + 1)
                for m2 in range(w.max_m + 1 - m1)
            ]
            for z, _ in zm:
                best = min(
                    abs(euler_factor(k, lp, cls, z))
                    for cls in spec
                    for k in range(-tau_m, tau_m + 1)
                    for lp in triangle
                )
                assert best < 1e-8

            ts = np.arange(-w.im_bound, w.im_bound + step, step)
            for m_line in range(w.max_m + 1):
                listed = np.array(
                    sorted(z.imag for z, _ in zm if z.real == -float(m_line))
                )
                vals = _log_abs_product_on_line(spec, tau_m, m_line, ts, w.max_m)
                interior = (
                    (vals[1:-1] < vals[:-2]) & (vals[1:-1] < vals[2:]) & (vals[1:-1] < -9.0)
                )
                for i in np.flatnonzero(interior) + 1:
                    res = minimize_scalar(
                        lambda t: _log_abs_product_on_line(
                            spec, tau_m, m_line, np.array([t]), w.max_m
                        )[0],
                        bounds=(ts[i - 1], ts[i + 1]),
                        method="bounded",
                        options={"xatol": 1e-12},
                    )
                    if res.fun > math.log(1e-8):
                        continue  # shallow dip, not a zero
                    t_star = res.x
                    if w.im_bound - abs(t_star) < step:
                        continue  # zero may sit just outside the window
                    gaps = np.abs(listed - t_star)
                    assert gaps.min() < 1e-6 or (
                        # cluster of listed zeros tighter than the grid step
                        gaps.min() < step and (gaps < step).sum() >= 2
                    ), f"unlisted zero at Re=-{m_line}, Im={t_star}"


def test_c5_length_recovery_roundtrip(corpus):
    with budget("acceptance 5 (length recovery)", 60.0):
        for spec in corpus:
            w = ZeroWindow(0, 20 * PI / spec.min_length())
            got = recover_lengths(zero_line(spec, 0, w), w)
            assert multiset_equal(got, spec.lengths(), 1e-9)

            # conservation at every peeling iteration, audited on a window
            # whose edge is clear of trace points (padding 1e-3 in relative
            # terms), so trace sizes are float-unambiguous
            wm = ZeroWindow(0, 20 * PI / spec.min_length() * (1 + 1e-3))
            audit = []
            got_m = recover_lengths(zero_line(spec, 0, wm), wm, audit=audit)
            assert multiset_equal(got_m, spec.lengths(), 1e-9)
            by_len = {a: m for a, m in spec.lengths()}
            for rec in audit:
                true_a = min(by_len, key=lambda a: abs(a - rec["length"]))
                size = len(class_trace(true_a, 0.0, (0,), wm))
                assert rec["multiplicity"] == by_len[true_a]
                assert rec["removed"] == rec["multiplicity"] * size


def test_c6_ratio_recovery_roundtrip(corpus):
    with budget("acceptance 6 (ratio recovery)", 60.0):
        for spec in corpus:
            w = ZeroWindow(0, 20 * PI / spec.min_length())
            lengths = recover_lengths(zero_line(spec, 0, w), w)
            got = recover_ratios(strip_k0(zero_line(spec, 1, w), lengths, w), lengths, w)
            want = RealMultiset(expected_ratio_pairs(spec))
            assert multiset_equal(got, want, 1e-8)

        # zero-holonomy degenerate: terminates with the ratio-0 report
        degen = Spectrum([(2.0, 0.0, 2), (1.0, 1.0, 1)])
        w = ZeroWindow(0, 20 * PI)
        lengths = recover_lengths(zero_line(degen, 0, w), w)
        got = recover_ratios(strip_k0(zero_line(degen, 1, w), lengths, w), lengths, w)
        assert multiset_equal(got, RealMultiset([(0.0, 4), (1.0, 1)]), 1e-9)


def test_c7_end_to_end_smo_check(rng):
    with budget("acceptance 7 (smo check)", 30.0):
        spec = rand_spectrum(rng, max_classes=6)
        w = ZeroWindow(0, 20 * PI / spec.min_length())
        assert smo_check(spec, spec, 1, w).status == "EXACT"

        rows = [(c.length, c.holonomy, c.multiplicity) for c in spec]
        a0, b0, m0 = rows[0]
        b_shift = b0 + 0.3 if b0 + 0.3 < TWO_PI else b0 - 0.3
        tweaked_b = Spectrum([(a0, b_shift, m0)] + rows[1:])
        rep = smo_check(spec, tweaked_b, 1, w)
        assert rep.status == "FAILED" and rep.witness is not None

        tweaked_a = Spectrum([(a0 + 0.1, b0, m0)] + rows[1:])
        rep = smo_check(spec, tweaked_a, 1, w)
        assert rep.status == "FAILED" and rep.witness is not None

        # same spectrum, different presentation order and file format
        shuffled = Spectrum(rows[::-1])
        via_csv = parse_spectrum(serialize_spectrum(spec, "csv"), "csv")
        via_json = parse_spectrum(serialize_spectrum(shuffled, "json"), "json")
        rep = smo_check(via_csv, via_json, 1, w)
        assert rep.status == "EXACT" and rep.residual == 0.0


def test_c8_cli_contract(rng):
    with budget("acceptance 8 (cli contract)", 10.0):
        seen_codes = set()
        for name, code, argv in GOLDEN_CASES:
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                got = run_cli(argv)
            assert got == code, name
            assert buf.getvalue() == (GOLDEN / name).read_text(), name
            seen_codes.add(code)
        assert seen_codes == {0, 1, 2}

        for _ in range(25):
            spec = rand_spectrum(rng, max_classes=8)
            for fmt in ("csv", "json"):
                again = parse_spectrum(serialize_spectrum(spec, fmt), fmt)
                assert [(c.length, c.holonomy, c.multiplicity) for c in again] == [
                    (c.length, c.holonomy, c.multiplicity) for c in spec
                ]
