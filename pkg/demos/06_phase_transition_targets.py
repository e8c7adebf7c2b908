"""Prescribing first-order phase transitions.

Given kink locations (z_j), the target

    f(t) = 3 + integral_0^t g,   g(s) = sum over {j : z_j <= s} of 1/(2^j z_j^2)

is convex, piecewise linear, non-differentiable exactly at the z_j, and its
support-line intercepts stay >= 1, so it satisfies the construction's
hypotheses: the resulting potential's pressure curve has a first-order
phase transition exactly at each z_j.  This script builds targets for kink
sets (2), (2,3), (2,3,4), recovers the kinks by a numeric subdifferential
scan, and verifies the intercept bound.
"""

from pressure_forge import convex_model as cm
from pressure_forge import targets as tg

for points in [(2.0,), (2.0, 3.0), (2.0, 3.0, 4.0)]:
    spec = tg.PhaseTransitionSpec(1.0, points)
    target = tg.as_convex_target(spec)
    print(f"kink set {points}: target {target}")
    kinks = cm.kink_scan(target, 1.0401, max(points) + 1.1, 0.2345)
    for (loc, jump), z in zip(kinks, points):
        j_idx = points.index(z) + 1
        print(
            f"  scan found kink at {loc:.9f} with jump {jump:.9f} "
            f"(prescribed {z} with jump {tg.jump_size(spec, j_idx):.9f})"
        )
    worst = min(
        tg.f_of(spec, 1.0 + k * 0.02) - (1.0 + k * 0.02) * tg.g_of(spec, 1.0 + k * 0.02)
        for k in range(1, 451)
    )
    print(f"  smallest probed support intercept: {worst:.6f} (>= 1 required)\n")

print("between kinks the target is affine; s(gamma) pivots linearly on them:")
spec = tg.PhaseTransitionSpec(1.0, (2.0, 3.0))
target = tg.as_convex_target(spec)
for g in (2.8, 2.9, 2.95, 3.0):
    print(f"  s({g}) = {cm.slope_function(target, g):.6f}")
