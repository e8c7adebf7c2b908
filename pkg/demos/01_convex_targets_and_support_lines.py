"""Convex targets and their supporting lines.

The pipeline starts from a convex function f on (alpha, inf) whose support
lines cross the vertical axis inside [b, c].  This script walks the demo
target f(t) = t + 1/(4t):

* evaluates it and its numeric subdifferential,
* samples support points (intercept, slope) on a t-grid,
* rebuilds f as the max of the sampled lines and reports the gap,
* traces the slope function s(gamma) (the steepest slope a line with a
  given intercept can have while staying below f).

Every support line of this target has intercept 1/(2t) in (0, 1/2) and
slope 1 - 1/(4 t^2); s(gamma) comes out as 1 - gamma^2.
"""

from pressure_forge import convex_model as cm
from pressure_forge import targets as tg

demo = tg.demo_target()
print("demo target:", demo)
print("f(2) =", cm.eval_target(demo, 2.0))

sub = cm.subdifferential_1d(demo, 2.0)
print("subdifferential at t=2:", (sub.lo, sub.hi), "kink?" , sub.is_kink)

grid = [1.0 + k / 8 for k in range(1, 25)]
points = cm.sample_support_set(demo, grid)
print(f"\nsampled {len(points)} support points on a grid of spacing 1/8")
print("first three:", [(round(p.intercept, 4), round(p.slope[0], 4)) for p in points[:3]])

print("\nreconstruction vs truth (envelope of sampled lines):")
for t in (1.3, 2.0, 2.7):
    recon = cm.reconstruct_from_support(points, t)
    truth = cm.eval_target(demo, t)
    print(f"  t={t}: recon={recon:.6f}  f(t)={truth:.6f}  gap={truth - recon:.2e}")

print("\nslope function s(gamma) = 1 - gamma^2:")
for k in range(0, 33, 8):
    g = k / 64
    s = cm.slope_function(demo, g)
    print(f"  s({g:7.5f}) = {s:.6f}   (1 - gamma^2 = {1 - g * g:.6f})")

ub, lb = cm.lipschitz_bounds(demo, 2.0)
print(f"\nslope bounds from the hypothesis constants at probe 2: [{lb}, {ub}]")
