"""
Windowed zero multisets of the truncated product
================================================

Zeros live on vertical lines Re(s) = -(m1+m2); on each line they form
arithmetic progressions with spacing 2*pi/a(p) shifted by holonomy phases.
A ZeroWindow bounds both the line index and |Im(s)|.
"""

from lhspec import (
    LatticePoint,
    Spectrum,
    ZeroWindow,
    euler_factor,
    zero_line,
    zero_multiset,
)

spec = Spectrum([(2.0, 1.0, 1), (1.1, 2.6, 2)])
w = ZeroWindow(1, 9.0)

zm = zero_multiset(spec, 1, w)
print(f"window: lines 0..-{w.max_m}, |Im| <= {w.im_bound}")
print("zeros with multiplicity:")
for z, mult in zm:
    print(f"  {z.real:+.0f} {z.imag:+10.6f}i   x{mult}")

# each zero kills at least one local factor of the product
worst = 0.0
for z, _ in zm:
    best = min(
        abs(euler_factor(k, LatticePoint(m1, m2), cls, z))
        for cls in spec
        for k in (-1, 0, 1)
        for m1 in range(w.max_m + 1)
        for m2 in range(w.max_m + 1 - m1)
    )
    worst = max(worst, best)
print("worst annihilation residual:", worst)

# the untwisted Re(s) = 0 slice is the pure length trace: multiples of 2pi/a
print("k = 0 line:", sorted(v for v, _ in zero_line(spec, 0, ZeroWindow(0, 7.0))))

# twisted lines carry the holonomy: spacing preserved, phases shifted
line1 = zero_line(spec, 1, ZeroWindow(0, 7.0))
print("k = +-1 line:", [round(v, 4) for v, _ in line1])

# widening the window only appends entries, it never moves existing ones
narrow = zero_multiset(spec, 1, ZeroWindow(1, 5.0))
print("narrow window is a restriction:", narrow == zm.restrict_im(5.0))
