"""Convex targets, subgradients, support points, and the slope function.

A target is a convex Lipschitz function f on (alpha, inf)^m whose supporting
hyperplanes all cross the vertical axis inside [b, c].  The module computes

* numeric subdifferentials (one-sided difference quotients with Richardson
  refinement, kink detection at 1e-6 slope discrepancy),
* support points (intercept, slope) = (f(t) - v.t, v),
* the envelope reconstruction f(t) = max over sampled support points of
  h + v.t,
* the one-parameter slope function s(gamma) = sup{v : gamma + t v <= f(t)},
  evaluated as inf_t (f(t) - gamma)/t (the same object; the ratio is
  unimodal in t for convex f) with a geometric bracket and golden-section
  polish, cross-checked against the dense-grid underestimator test.

All operations are pure functions of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import DomainError, EmptySample, NotASubgradient

Vector = Tuple[float, ...]

#: tolerance for closed-form targets
TOL_CLOSED_FORM = 1e-9
#: tolerance for tabulated / refinement-derived values
TOL_DERIVED = 1e-6
#: one-sided slopes differing by more than this flag a kink
KINK_TOL = 1e-6
#: global-underestimator probes run on a geometric grid up to this multiple
#: of alpha (tail controlled because intercepts are bounded)
PROBE_SPAN = 100.0


@dataclass(frozen=True)
class SupportPoint:
    """(intercept, slope) data of one supporting hyperplane."""

    intercept: float
    slope: Vector

    def value_at(self, t: Sequence[float]) -> float:
        return self.intercept + _dot(self.slope, t)


@dataclass(frozen=True)
class SubgradientInterval:
    """One-parameter subdifferential [f'(t-), f'(t+)]."""

    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_kink(self) -> bool:
        return self.width > KINK_TOL


def _dot(v: Sequence[float], t: Sequence[float]) -> float:
    return sum(a * b for a, b in zip(v, t))


def _as_point(t, m: int) -> Vector:
    if isinstance(t, (int, float)):
        if m != 1:
            raise DomainError(f"target has arity {m}, got a scalar point")
        return (float(t),)
    pt = tuple(float(x) for x in t)
    if len(pt) != m:
        raise DomainError(f"target has arity {m}, got point of length {len(pt)}")
    return pt


class ConvexTarget:
    """A convex target together with its hypothesis data (alpha, [b,c], L).

    ``body`` is any callable mapping a tuple point to a float; use the
    factory functions in :mod:`pressure_forge.targets` for the built-ins.
    """

    def __init__(
        self,
        m: int,
        alpha: float,
        intercept_interval: Tuple[float, float],
        lipschitz_L: float,
        body: Callable[[Vector], float],
        body_json: Optional[dict] = None,
    ):
        if m < 1:
            raise ValueError("arity m must be >= 1")
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        b, c = intercept_interval
        if not (0 <= b <= c):
            raise ValueError("need 0 <= b <= c")
        if lipschitz_L < 0:
            raise ValueError("Lipschitz bound must be >= 0")
        self.m = m
        self.alpha = float(alpha)
        self.b = float(b)
        self.c = float(c)
        self.lipschitz_L = float(lipschitz_L)
        self._body = body
        self._body_json = body_json or {"kind": "opaque"}

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        out = dict(self._body_json)
        out.update(
            {
                "m": self.m,
                "alpha": self.alpha,
                "b": self.b,
                "c": self.c,
                "L": self.lipschitz_L,
            }
        )
        return out

    def __repr__(self) -> str:
        return (
            f"ConvexTarget(m={self.m}, alpha={self.alpha}, "
            f"[b,c]=[{self.b},{self.c}], L={self.lipschitz_L}, "
            f"body={self._body_json.get('kind')})"
        )

    # -- evaluation ----------------------------------------------------------

    def __call__(self, t) -> float:
        return eval_target(self, t)

    def probe_grid(self, ratio: float = 1.02) -> List[float]:
        """Geometric one-parameter grid spanning (alpha, PROBE_SPAN*alpha]."""
        lo = self.alpha * (1 + 1e-9)
        hi = self.alpha * PROBE_SPAN
        grid = [lo]
        while grid[-1] < hi:
            grid.append(grid[-1] * ratio)
        return grid


def eval_target(target: ConvexTarget, t) -> float:
    """f(t); DomainError unless every component exceeds alpha."""
    pt = _as_point(t, target.m)
    if any(x <= target.alpha for x in pt):
        raise DomainError(
            f"point {pt} outside domain (alpha, inf)^{target.m} with "
            f"alpha={target.alpha}"
        )
    return float(target._body(pt))


def _one_sided_slope(target: ConvexTarget, t: float, side: int) -> float:
    """Refined one-sided difference quotient at t (side=+1 right, -1 left).

    Halving steps with one Richardson elimination of the O(h) term; for
    piecewise-linear targets the quotient is exact once h clears the kink
    gap, and the stabilized value wins.
    """
    f0 = eval_target(target, t)
    h0 = min(0.25, (t - target.alpha) / 4) if side < 0 else 0.25
    h0 = max(h0, 1e-9)
    quotients = []
    h = h0
    for _ in range(40):
        th = t + side * h
        if th <= target.alpha:
            h /= 2
            continue
        q = side * (eval_target(target, th) - f0) / h
        quotients.append((h, q))
        if len(quotients) >= 2:
            (h1, q1), (h2, q2) = quotients[-2], quotients[-1]
            rich = 2 * q2 - q1  # eliminates the h*f''/2 term
            if abs(q2 - q1) < 1e-12 * max(1.0, abs(q2)):
                return q2
            if len(quotients) >= 3:
                (_, q0) = quotients[-3][0], quotients[-3][1]
                rich_prev = 2 * q1 - q0
                if abs(rich - rich_prev) < 1e-10 * max(1.0, abs(rich)):
                    return rich
        if h < 1e-8:
            break
        h /= 2
    if not quotients:
        raise DomainError(f"no admissible difference step at t={t} (too close to alpha)")
    if len(quotients) == 1:
        return quotients[0][1]
    return 2 * quotients[-1][1] - quotients[-2][1]


def subdifferential_1d(target: ConvexTarget, t: float) -> SubgradientInterval:
    """[f'(t-), f'(t+)] by one-sided refinement; collapses when no kink."""
    if target.m != 1:
        raise DomainError("subdifferential_1d needs a one-parameter target")
    if t <= target.alpha:
        raise DomainError(f"t={t} outside (alpha, inf), alpha={target.alpha}")
    left = _one_sided_slope(target, t, -1)
    right = _one_sided_slope(target, t, +1)
    if right - left <= KINK_TOL:
        mid = 0.5 * (left + right)
        return SubgradientInterval(mid, mid)
    return SubgradientInterval(left, right)


def gradient(target: ConvexTarget, t) -> Vector:
    """Central-difference gradient with one Richardson step per coordinate."""
    pt = _as_point(t, target.m)
    out = []
    for k in range(target.m):
        def fk(x: float) -> float:
            q = list(pt)
            q[k] = x
            return eval_target(target, tuple(q))

        h = min(1e-4, (pt[k] - target.alpha) / 8)
        d1 = (fk(pt[k] + h) - fk(pt[k] - h)) / (2 * h)
        d2 = (fk(pt[k] + h / 2) - fk(pt[k] - h / 2)) / h
        out.append((4 * d2 - d1) / 3)
    return tuple(out)


def _underestimates(
    target: ConvexTarget, h: float, v: Vector, tol: float
) -> bool:
    """Global-underestimator probe of the plane h + v.t over the domain grid."""
    grid = target.probe_grid()
    if target.m == 1:
        return all(h + v[0] * t <= eval_target(target, t) + tol for t in grid)
    # diagonal + axis-offset probes keep the grid size sane in higher arity
    base = [target.alpha * (1 + 1e-9) + x for x in (0.0, 0.5, 1.0, 3.0, 10.0)]
    import itertools

    for pt in itertools.product(base, repeat=target.m):
        if h + _dot(v, pt) > eval_target(target, pt) + tol:
            return False
    return True


def support_point(target: ConvexTarget, t, v) -> SupportPoint:
    """Support point (f(t) - v.t, v); NotASubgradient when the plane fails
    the global-underestimator probe."""
    pt = _as_point(t, target.m)
    vv = (float(v),) if isinstance(v, (int, float)) else tuple(float(x) for x in v)
    if len(vv) != target.m:
        raise DomainError("slope arity mismatch")
    tol = TOL_DERIVED
    if target.m == 1:
        sub = subdifferential_1d(target, pt[0])
        if not (sub.lo - tol <= vv[0] <= sub.hi + tol):
            raise NotASubgradient(
                f"v={vv[0]} outside subdifferential [{sub.lo}, {sub.hi}] at t={pt[0]}"
            )
    h = eval_target(target, pt) - _dot(vv, pt)
    if not _underestimates(target, h, vv, tol):
        raise NotASubgradient(f"plane with slope {vv} is not a global underestimator")
    return SupportPoint(h, vv)


def sample_support_set(target: ConvexTarget, domain_grid) -> List[SupportPoint]:
    """One support point per grid node; both one-sided slopes at kinks."""
    grid = list(domain_grid)
    if not grid:
        raise EmptySample("domain grid is empty")
    points: List[SupportPoint] = []
    for t in grid:
        pt = _as_point(t, target.m)
        if any(x <= target.alpha for x in pt):
            raise DomainError(f"grid node {pt} outside the domain")
        if target.m == 1:
            sub = subdifferential_1d(target, pt[0])
            slopes = [sub.lo, sub.hi] if sub.is_kink else [sub.lo]
            for v in slopes:
                h = eval_target(target, pt) - v * pt[0]
                points.append(SupportPoint(h, (v,)))
        else:
            v = gradient(target, pt)
            h = eval_target(target, pt) - _dot(v, pt)
            points.append(SupportPoint(h, v))
    return points


def reconstruct_from_support(points: Sequence[SupportPoint], t) -> float:
    """max over sampled support points of h + v.t (Fenchel-style envelope)."""
    if not points:
        raise EmptySample("no support points")
    if isinstance(t, (int, float)):
        t = (float(t),)
    return max(p.value_at(t) for p in points)


def _golden_min(fn: Callable[[float], float], lo: float, hi: float, iters: int = 90) -> float:
    """Golden-section minimum value of a unimodal fn on [lo, hi]."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(iters):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = fn(x2)
        if b - a < 1e-14 * max(1.0, abs(a)):
            break
    return min(f1, f2)


def slope_function(target: ConvexTarget, gamma: float) -> float:
    """s(gamma) = sup{v : gamma + t v <= f(t) on (alpha, inf)}.

    Equal to inf_t (f(t) - gamma)/t; bracketed on the geometric probe grid
    and polished by golden section.  Non-increasing in gamma and
    1/alpha-Lipschitz (asserted in tests, not here).
    """
    if target.m != 1:
        raise DomainError("slope_function needs a one-parameter target")
    tol = TOL_DERIVED
    if not (target.b - tol <= gamma <= target.c + tol):
        raise DomainError(
            f"gamma={gamma} outside intercept interval [{target.b}, {target.c}]"
        )

    def ratio(t: float) -> float:
        return (eval_target(target, t) - gamma) / t

    grid = target.probe_grid()
    vals = [ratio(t) for t in grid]
    k = min(range(len(vals)), key=vals.__getitem__)
    lo = grid[max(0, k - 1)]
    hi = grid[min(len(grid) - 1, k + 1)]
    s = _golden_min(ratio, lo, hi)
    s = min(s, min(vals))
    # when the infimum is only approached as t -> inf (gamma below every
    # intercept, e.g. a linear target), the chord slope over the grid tail
    # is a valid underestimator slope converging to the asymptote
    t2 = grid[-1]
    t1 = t2 / 2
    chord = (eval_target(target, t2) - eval_target(target, t1)) / (t2 - t1)
    if chord < s:
        s = chord
    return s


def verify_hypotheses(target: ConvexTarget, tol: float = TOL_DERIVED) -> None:
    """Probe-grid check of the ConvexTarget invariants.

    Midpoint convexity on the probe grid, and every probed support point
    inside [b - tol, c + tol] x [-L - tol, L + tol]^m.  Raises ValueError
    on the first violation (used by tests and config validation, not on
    hot paths).
    """
    if target.m == 1:
        grid = target.probe_grid(ratio=1.1)
        pts = [(t,) for t in grid]
    else:
        base = [target.alpha * (1 + 1e-6) + x for x in (0.0, 0.4, 1.1, 2.7)]
        import itertools

        pts = list(itertools.product(base, repeat=target.m))
    for a in pts[:: max(1, len(pts) // 40)]:
        for b_ in pts[:: max(1, len(pts) // 40)]:
            mid = tuple((x + y) / 2 for x, y in zip(a, b_))
            lhs = eval_target(target, mid)
            rhs = (eval_target(target, a) + eval_target(target, b_)) / 2
            if lhs > rhs + tol:
                raise ValueError(f"midpoint convexity fails between {a} and {b_}")
    if math.isfinite(target.lipschitz_L):
        margin = 1e-4 * max(1.0, target.alpha)
        interior = [p for p in pts if all(x > target.alpha + margin for x in p)]
        for p in interior[:: max(1, len(interior) // 25)]:
            if target.m == 1:
                sub = subdifferential_1d(target, p[0])
                slopes = [(sub.lo,), (sub.hi,)]
            else:
                slopes = [gradient(target, p)]
            for v in slopes:
                h = eval_target(target, p) - _dot(v, p)
                if not (target.b - 1e-3 <= h <= target.c + 1e-3):
                    raise ValueError(f"intercept {h} escapes [b, c] at {p}")
                if any(abs(x) > target.lipschitz_L + 1e-3 for x in v):
                    raise ValueError(f"slope {v} exceeds L at {p}")


def lipschitz_bounds(target: ConvexTarget, probe: float) -> Tuple[float, float]:
    """(upper, lower) slope bounds at the probe: (f(p)-b)/p and (f(p)-c)/p.

    Every subgradient of the target is <= the upper bound, and subgradients
    at points >= probe are >= the lower bound.
    """
    if target.m != 1:
        raise DomainError("lipschitz_bounds needs a one-parameter target")
    fp = eval_target(target, probe)
    return (fp - target.b) / probe, (fp - target.c) / probe


def kink_scan(
    target: ConvexTarget,
    t_lo: float,
    t_hi: float,
    step: float,
    locate_tol: float = 1e-9,
) -> List[Tuple[float, float]]:
    """Locate kinks of a one-parameter target on [t_lo, t_hi].

    Scans cells of width ``step``; a cell whose endpoint one-sided slopes
    disagree is bisected down to ``locate_tol``.  Returns (location, jump)
    pairs with jump = subdifferential width at the located point.
    """
    if target.m != 1:
        raise DomainError("kink_scan needs a one-parameter target")
    kinks: List[Tuple[float, float]] = []
    t = t_lo
    while t < t_hi - 1e-15:
        a, b_ = t, min(t + step, t_hi)
        slope_in = _one_sided_slope(target, a, +1)
        slope_out = _one_sided_slope(target, b_, -1)
        if slope_out - slope_in > KINK_TOL:
            lo, hi = a, b_
            while hi - lo > locate_tol:
                mid = 0.5 * (lo + hi)
                if _one_sided_slope(target, mid, -1) - slope_in > KINK_TOL:
                    hi = mid
                else:
                    lo = mid
            loc = 0.5 * (lo + hi)
            # [lo, hi] straddles the kink: the jump is the slope gap across it
            jump = _one_sided_slope(target, hi, +1) - _one_sided_slope(
                target, lo, -1
            )
            kinks.append((loc, jump))
        t = b_
    return kinks
