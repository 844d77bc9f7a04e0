"""Multiset peeling: recover lengths and holonomy ratios from windowed zero data.

The k = 0 zero line of a spectrum is the union over classes of the traces
{2*n*pi/a}; the smallest positive element must be 2*pi/a for some hidden a,
so lengths peel off greedily.  The k = +1/-1 residual is the union of traces
{(-+b - 2*n*pi)/a}; its smallest positive element is min(b, 2*pi-b)/a for
some class, but several known lengths can explain the same minimal value, so
ratio peeling is a backtracking search over attributions.  The search commits
only when exactly one attribution extends to a complete, consistent peeling;
genuinely undecidable windows raise AmbiguousTrace instead of guessing.

Everything works on finite windows: a peeled class must show its first two
trace points inside the window (IncompleteWindow otherwise), and subtraction
shortfalls surface as NegativeMultiplicity rather than silent mis-recovery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    AmbiguousTrace,
    IncompleteWindow,
    NegativeMultiplicity,
    SpectralError,
    UnderflowError,
)
from .geodesic import Spectrum, spectrum_difference
from .multisets import (
    TAU_ZERO,
    MatchResult,
    RealMultiset,
    match_multisets,
    multiset_equal,
)
from .zeros import ZeroWindow, _check_window, class_trace, strip_k0, subtract_trace, zero_line

__all__ = [
    "RecoveryReport",
    "multiset_equal",
    "match_multisets",
    "recover_lengths",
    "recover_ratios",
    "smo_check",
]

TWO_PI = 2.0 * math.pi
PI = math.pi


def _coerce(z, tol: float) -> RealMultiset:
    return z if isinstance(z, RealMultiset) else RealMultiset.from_values(z, tol)


def recover_lengths(z, w: ZeroWindow, tol: float = TAU_ZERO, audit: list | None = None) -> RealMultiset:
    """Peel the hidden length multiset out of a windowed {-2*n*pi/a} multiset.

    Loop: take the smallest strictly positive element s0 with multiplicity
    mu; emit a = 2*pi/s0 with multiplicity mu; subtract mu copies of the full
    windowed trace of a; repeat until no positive element remains.  A list
    passed as ``audit`` receives one record per iteration (for conservation
    checks: removed == mu * trace size away from the window edge).
    """
    w = _check_window(w)
    cur = _coerce(z, tol)
    band = tol * max(1.0, w.im_bound)
    out: list[tuple[float, int]] = []
    for _ in range(cur.total() + 1):
        mp = cur.min_positive()
        if mp is None:
            break
        s0, mu = mp
        a = TWO_PI / s0
        if 2.0 * s0 > w.im_bound + band:
            raise IncompleteWindow(
                f"window |Im(s)| <= {w.im_bound!r} cannot contain the first two trace "
                f"points of recovered length {a!r}"
            )
        trace = class_trace(a, 0.0, (0,), w)
        before = cur.total()
        try:
            cur = subtract_trace(cur, a, 0.0, (0,), mu, w, tol)
        except UnderflowError as exc:
            raise NegativeMultiplicity(
                f"trace of recovered length {a!r} is not fully present: {exc}"
            ) from exc
        if audit is not None:
            audit.append(
                {
                    "smallest": s0,
                    "length": a,
                    "multiplicity": mu,
                    "trace_points": len(trace),
                    "removed": before - cur.total(),
                }
            )
        out.append((a, mu))
    if cur:
        raise IncompleteWindow(
            f"unpeeled residual of total multiplicity {cur.total()} remains; the window "
            "is too small for some class or the input is not a complete zero line"
        )
    return RealMultiset(out, tol)


# ---------------------------------------------------------------------------
# ratio recovery: backtracking attribution search


@dataclass
class _SearchCtx:
    w: ZeroWindow
    tol: float
    band: float
    solutions: list = field(default_factory=list)  # (ratio pairs, audit) per completion
    window_short: bool = False  # some candidate was rejected for window reasons
    stuck_at: float | None = None  # smallest value no candidate explained


def _probe_points(trace: list[float], im_bound: float, band: float) -> list[float]:
    # a few discriminating interior points; cheap pre-check before full subtraction
    interior = sorted(v for v in trace if abs(abs(v) - im_bound) > band)
    if not interior:
        return []
    picks = {interior[0], interior[-1], interior[len(interior) // 2]}
    if len(interior) > 3:
        picks.add(interior[len(interior) // 4])
    return sorted(picks)


def _candidates(cur: RealMultiset, avail: list[list], c: float, ctx: _SearchCtx) -> list[tuple]:
    """Attributions of minimal value c that survive a one-copy subtraction.

    Regular candidate: a known length a with canonical holonomy b = c*a in
    (0, pi].  Degenerate candidate: c is the first positive point 2*pi/a of
    the doubled k = 0 trace left behind by a zero-holonomy class.
    """
    found = []
    for idx, (a, rem) in enumerate(avail):
        if rem <= 0:
            continue
        b1 = c * a
        slack = ctx.tol * (1.0 + a)
        if 0.0 < b1 <= PI + slack:
            b_sub = min(b1, TWO_PI - b1)
            if (TWO_PI - b_sub) / a > ctx.w.im_bound + ctx.band:
                ctx.window_short = True
                continue
            trace = class_trace(a, b_sub, (1, -1), ctx.w)
            if all(cur.count_near(v, ctx.tol) >= 1 for v in _probe_points(trace, ctx.w.im_bound, ctx.band)):
                try:
                    nxt = subtract_trace(cur, a, b_sub, (1, -1), 1, ctx.w, ctx.tol)
                except UnderflowError:
                    pass
                else:
                    found.append(("ratio", idx, a, b_sub, (1, -1), trace, nxt))
        if abs(b1 - TWO_PI) <= slack:
            trace = class_trace(a, 0.0, (0,), ctx.w)
            if all(cur.count_near(v, ctx.tol) >= 2 for v in _probe_points(trace, ctx.w.im_bound, ctx.band)):
                try:
                    nxt = subtract_trace(cur, a, 0.0, (0,), 2, ctx.w, ctx.tol)
                except UnderflowError:
                    pass
                else:
                    found.append(("zero", idx, a, 0.0, (0,), trace, nxt))
    return found


def _distinct_solutions(ctx: _SearchCtx) -> list:
    distinct = []
    for pairs, aud in ctx.solutions:
        ms = RealMultiset(pairs, ctx.tol)
        if not any(multiset_equal(ms, seen, ctx.tol) for seen, _ in distinct):
            distinct.append((ms, aud))
    return distinct


def _peel_ratios(cur, avail, ratios, audit, ctx, last=None) -> None:
    """DFS over attributions; appends completed peelings to ctx.solutions.

    ``last`` = (value, candidate index) canonicalizes how equal copies of the
    same minimal value split across candidates (nondecreasing index order),
    so permutations of the same split are explored once.
    """
    while True:
        if len(_distinct_solutions(ctx)) >= 2:
            return
        mp = cur.min_positive()
        if mp is None:
            if cur.total() == 0:
                ctx.solutions.append((ratios, audit))
            return
        c, mult = mp
        cands = _candidates(cur, avail, c, ctx)
        if last is not None and abs(last[0] - c) <= ctx.tol:
            cands = [cd for cd in cands if cd[1] >= last[1]]
        if not cands:
            if ctx.stuck_at is None:
                ctx.stuck_at = c
            return
        if len(cands) == 1:
            # forced: attribute the whole multiplicity at c in one batch
            kind, idx, a, b_sub, ks, trace, _ = cands[0]
            units = mult if kind == "ratio" else mult // 2
            copies = units if kind == "ratio" else 2 * units
            if kind == "zero" and mult % 2:
                ctx.stuck_at = c if ctx.stuck_at is None else ctx.stuck_at
                return
            if avail[idx][1] < units:
                ctx.stuck_at = c if ctx.stuck_at is None else ctx.stuck_at
                return
            before = cur.total()
            try:
                cur = subtract_trace(cur, a, b_sub, ks, copies, ctx.w, ctx.tol)
            except UnderflowError:
                ctx.stuck_at = c if ctx.stuck_at is None else ctx.stuck_at
                return
            avail = [list(p) for p in avail]
            avail[idx][1] -= units
            emitted = mult  # ratio value c: mult copies; zero report keeps leftover count
            ratios = ratios + (((c if kind == "ratio" else 0.0), emitted),)
            audit = audit + (
                {
                    "smallest": c,
                    "kind": kind,
                    "length": a,
                    "holonomy": b_sub,
                    "multiplicity": emitted,
                    "trace_points": len(trace),
                    "removed": before - cur.total(),
                },
            )
            last = None
            continue
        # tie: several attributions survive locally; branch one unit at a time
        for kind, idx, a, b_sub, ks, trace, nxt in cands:
            n_avail = [list(p) for p in avail]
            n_avail[idx][1] -= 1
            emitted = 1 if kind == "ratio" else 2
            n_ratios = ratios + (((c if kind == "ratio" else 0.0), emitted),)
            n_audit = audit + (
                {
                    "smallest": c,
                    "kind": kind,
                    "length": a,
                    "holonomy": b_sub,
                    "multiplicity": emitted,
                    "trace_points": len(trace),
                    "removed": cur.total() - nxt.total(),
                },
            )
            _peel_ratios(nxt, n_avail, n_ratios, n_audit, ctx, last=(c, idx))
            if len(_distinct_solutions(ctx)) >= 2:
                return
        return


def recover_ratios(
    z_pm,
    lengths: RealMultiset,
    w: ZeroWindow,
    tol: float = TAU_ZERO,
    audit: list | None = None,
) -> RealMultiset:
    """Peel holonomy-to-length ratios out of a k = +1/-1 residual multiset.

    The smallest positive element is c = min(b, 2*pi-b)/a for some hidden
    class; every known length a with c*a in (0, pi] is a candidate owner.
    Candidates are tried with full backtracking: a candidate is accepted
    only if the whole remaining multiset then peels to empty.  If two
    attributions complete with genuinely different ratio multisets the data
    cannot decide and AmbiguousTrace is raised.

    Zero-holonomy classes surface as a doubled copy of their k = 0 trace
    (one copy per k = +1 and -1); they are reported as ratio 0 carrying that
    leftover multiplicity (twice the class multiplicity).
    """
    w = _check_window(w)
    cur = _coerce(z_pm, tol)
    lengths = _coerce(lengths, tol)
    ctx = _SearchCtx(w=w, tol=tol, band=tol * max(1.0, w.im_bound))
    avail = [[a, m] for a, m in lengths]
    _peel_ratios(cur, avail, (), (), ctx)
    distinct = _distinct_solutions(ctx)
    if not distinct:
        if ctx.window_short:
            raise IncompleteWindow(
                f"window |Im(s)| <= {w.im_bound!r} is too small to confirm a trace "
                f"attribution (stuck at {ctx.stuck_at!r})"
            )
        raise NegativeMultiplicity(
            f"no consistent attribution of the k=+1/-1 data; smallest unexplained "
            f"value {ctx.stuck_at!r}"
        )
    if len(distinct) > 1:
        raise AmbiguousTrace(
            f"window data admits {len(distinct)} distinct ratio multisets "
            f"(e.g. {distinct[0][0]!r} vs {distinct[1][0]!r}); refusing to guess"
        )
    ms, aud = distinct[0]
    if audit is not None:
        audit.extend(aud)
    return ms


# ---------------------------------------------------------------------------
# end-to-end comparison


@dataclass(frozen=True)
class RecoveryReport:
    """Outcome of comparing two spectra through their windowed zero data."""

    recovered_lengths: RealMultiset
    recovered_ratios: RealMultiset
    residual: float
    status: str  # EXACT | TOLERANT | FAILED
    witness: float | None = None
    diagnostics: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "residual": self.residual,
            "witness": self.witness,
            "recovered_lengths": [
                {"value": v, "multiplicity": m} for v, m in self.recovered_lengths
            ],
            "recovered_ratios": [
                {"value": v, "multiplicity": m} for v, m in self.recovered_ratios
            ],
            "diagnostics": list(self.diagnostics),
        }


def smo_check(
    spec1: Spectrum, spec2: Spectrum, tau, w: ZeroWindow, tol: float = TAU_ZERO
) -> RecoveryReport:
    """Compare two spectra by their windowed zero data and recovered invariants.

    Forms the multiset differences S1 = spec1 - spec2 and S2 = spec2 - spec1,
    compares their zero lines at the requested twist, then independently
    recovers lengths (twist 0 data) and ratios (stripped twist 1 data) on
    both sides and compares those.  Equality everywhere with zero residual
    is EXACT; equality within tol is TOLERANT; anything else (including
    recovery errors) is FAILED with diagnostics.
    """
    w = _check_window(w)
    s1, s2 = spectrum_difference(spec1, spec2)
    diagnostics: list[str] = []
    if s1 or s2:
        diagnostics.append(
            f"symmetric difference: {s1.total()} vs {s2.total()} class copies uncancelled"
        )
    matches: list[MatchResult] = []
    witness: float | None = None
    failed = False

    m_line = match_multisets(zero_line(s1, tau, w), zero_line(s2, tau, w), tol)
    matches.append(m_line)
    if not m_line.equal:
        failed = True
        witness = m_line.witness
        diagnostics.append(f"zero lines differ; witness imaginary part {m_line.witness!r}")

    lengths1 = lengths2 = ratios1 = ratios2 = RealMultiset()
    try:
        lengths1 = recover_lengths(zero_line(s1, 0, w), w, tol)
        lengths2 = recover_lengths(zero_line(s2, 0, w), w, tol)
        m_len = match_multisets(lengths1, lengths2, tol)
        matches.append(m_len)
        if not m_len.equal:
            failed = True
            witness = m_len.witness if witness is None else witness
            diagnostics.append(f"recovered lengths differ; witness {m_len.witness!r}")
        ratios1 = recover_ratios(strip_k0(zero_line(s1, 1, w), lengths1, w), lengths1, w, tol)
        ratios2 = recover_ratios(strip_k0(zero_line(s2, 1, w), lengths2, w), lengths2, w, tol)
        m_rat = match_multisets(ratios1, ratios2, tol)
        matches.append(m_rat)
        if not m_rat.equal:
            failed = True
            witness = m_rat.witness if witness is None else witness
            diagnostics.append(f"recovered ratios differ; witness {m_rat.witness!r}")
    except SpectralError as exc:
        failed = True
        diagnostics.append(f"{type(exc).__name__}: {exc}")

    finite = [m.max_distance for m in matches if m.equal]
    residual = max(finite, default=0.0) if not failed else float("inf")
    if failed:
        status = "FAILED"
    elif residual == 0.0:
        status = "EXACT"
    else:
        status = "TOLERANT"
    return RecoveryReport(
        recovered_lengths=lengths1,
        recovered_ratios=ratios1,
        residual=residual,
        status=status,
        witness=witness,
        diagnostics=tuple(diagnostics),
    )
