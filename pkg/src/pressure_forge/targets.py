"""Built-in convex targets, including the prescribed-phase-transition family.

The phase-transition construction: given alpha > 0 and kink locations
(z_j) in (alpha, inf), let

    g(s) = sum over {j : z_j <= s} of alpha / (2^j z_j^2)       (1-indexed j)
    f(t) = base_constant + integral_0^t g(s) ds.

g is a right-continuous non-decreasing step function, so f is convex and
piecewise linear with a derivative jump of alpha/(2^j z_j^2) exactly at each
z_j, and the support-line intercept f(t) - t g(t) stays >= 1.

Only finite kink lists are supported; the countable case is approximated by
truncation (the 2^-j weights make deep tails numerically invisible anyway).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .convex_model import ConvexTarget, lipschitz_bounds
from .errors import DomainError


@dataclass(frozen=True)
class PhaseTransitionSpec:
    """Data of the kink-prescribing target: alpha, the kink locations z_j,
    and the additive base constant (the construction uses 3)."""

    alpha: float
    points: Tuple[float, ...]
    base_constant: float = 3.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if any(z <= self.alpha for z in self.points):
            raise ValueError("every kink z_j must exceed alpha")

    @classmethod
    def from_json(cls, data: dict) -> "PhaseTransitionSpec":
        return cls(
            alpha=float(data["alpha"]),
            points=tuple(float(z) for z in data.get("points", ())),
            base_constant=float(data.get("base_constant", 3.0)),
        )

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "points": list(self.points),
            "base_constant": self.base_constant,
        }


def jump_size(spec: PhaseTransitionSpec, j: int) -> float:
    """Derivative jump at z_j (j is 1-indexed)."""
    return spec.alpha / (2**j * spec.points[j - 1] ** 2)


def g_of(spec: PhaseTransitionSpec, s: float) -> float:
    """Partial sum over included kinks; right-continuous step function."""
    if s < 0:
        raise ValueError("g is evaluated on s >= 0")
    return sum(
        jump_size(spec, j)
        for j, z in enumerate(spec.points, start=1)
        if z <= s
    )


def f_of(spec: PhaseTransitionSpec, t: float) -> float:
    """f(t) = base + integral_0^t g, summed exactly as rectangle areas."""
    if t <= spec.alpha:
        raise DomainError(f"t={t} outside (alpha, inf), alpha={spec.alpha}")
    total = spec.base_constant
    for j, z in enumerate(spec.points, start=1):
        if z <= t:
            total += jump_size(spec, j) * (t - z)
    return total


def as_convex_target(spec: PhaseTransitionSpec, probe_count: int = 400) -> ConvexTarget:
    """Wrap the spec as a ConvexTarget with probed hypothesis constants.

    b is the smallest probed intercept clipped to >= 1, c is the base
    constant, and L comes from the lipschitz_bounds upper bound at the
    far probes.
    """
    body = lambda pt: f_of(spec, pt[0])  # noqa: E731

    # intercept of the steepest support line at t is f(t) - t g(t)
    lo = spec.alpha * (1 + 1e-9)
    hi = spec.alpha * 100
    ratio = (hi / lo) ** (1.0 / (probe_count - 1))
    probes = [lo * ratio**k for k in range(probe_count)]
    probes += [z * (1 + 1e-9) for z in spec.points]
    intercepts = [f_of(spec, t) - t * g_of(spec, t) for t in probes]
    b = max(1.0, min(intercepts))
    c = spec.base_constant
    slope_cap = sum(jump_size(spec, j) for j in range(1, len(spec.points) + 1))
    target = ConvexTarget(
        m=1,
        alpha=spec.alpha,
        intercept_interval=(b, c),
        lipschitz_L=max(slope_cap, 1e-12),
        body=body,
        body_json={"kind": "phase_transition", **spec.to_json()},
    )
    # tighten L with the support-line bound if it is sharper
    ub, _ = lipschitz_bounds(target, hi)
    target.lipschitz_L = min(max(slope_cap, 1e-12), max(ub, slope_cap))
    return target


# -- other built-in bodies -------------------------------------------------


def demo_target() -> ConvexTarget:
    """f(t) = t + 1/(4t) on (1, inf): alpha=1, intercepts in [0, 1/2], L=1.

    Tangent calculus: the support line with intercept gamma touches at
    t = 1/(2 gamma) and has slope 1 - gamma^2.
    """
    return ConvexTarget(
        m=1,
        alpha=1.0,
        intercept_interval=(0.0, 0.5),
        lipschitz_L=1.0,
        body=lambda pt: pt[0] + 1.0 / (4.0 * pt[0]),
        body_json={"kind": "closed_form", "form": "t_plus_quarter_inverse"},
    )


def linear_target(h0: float, v0: float, alpha: float = 1.0) -> ConvexTarget:
    """Affine target h0 + v0 t; every support line is the function itself.

    The hypothesis interval is declared [0, h0] (any closed interval
    containing the intercepts qualifies), which keeps s(gamma) defined for
    all gamma <= h0.
    """
    if h0 < 0:
        raise ValueError("intercept must be nonnegative")
    return ConvexTarget(
        m=1,
        alpha=alpha,
        intercept_interval=(0.0, h0),
        lipschitz_L=abs(v0),
        body=lambda pt: h0 + v0 * pt[0],
        body_json={"kind": "closed_form", "form": "linear", "h0": h0, "v0": v0},
    )


def max_affine_target(
    pieces: Sequence[Tuple[float, float]], alpha: float = 0.5
) -> ConvexTarget:
    """f = max_i (h_i + v_i t); used for kink fixtures like max(t, 2t-1)."""
    hs = [h for h, _ in pieces]
    vs = [v for _, v in pieces]
    return ConvexTarget(
        m=1,
        alpha=alpha,
        intercept_interval=(max(0.0, min(hs)), max(hs)),
        lipschitz_L=max(abs(v) for v in vs),
        body=lambda pt: max(h + v * pt[0] for h, v in pieces),
        body_json={"kind": "closed_form", "form": "max_affine", "pieces": list(map(list, pieces))},
    )


def saddle_2d_target() -> ConvexTarget:
    """The non-Lipschitz two-parameter example F(t1,t2) = t1^2/(4 t2).

    Every supporting plane has intercept 0 while the gradient norm blows up
    along t2 -> 0+; it violates the Lipschitz hypothesis on purpose and is
    used only by the convex-analysis layer.
    """
    return ConvexTarget(
        m=2,
        alpha=1e-9,
        intercept_interval=(0.0, 0.0),
        lipschitz_L=math.inf,
        body=lambda pt: pt[0] ** 2 / (4.0 * pt[1]),
        body_json={"kind": "closed_form", "form": "saddle_ratio"},
    )


def sum_reciprocal_2d_target() -> ConvexTarget:
    """Lipschitz two-parameter fixture f(t1,t2) = t1 + t2 + 1/(4(t1+t2)).

    Supporting planes have intercepts 1/(2(t1+t2)) in (0, 1/4] for the
    domain (1, inf)^2, so the construction hypotheses hold with L = 1.
    """
    return ConvexTarget(
        m=2,
        alpha=1.0,
        intercept_interval=(0.0, 0.25),
        lipschitz_L=1.0,
        body=lambda pt: pt[0] + pt[1] + 1.0 / (4.0 * (pt[0] + pt[1])),
        body_json={"kind": "closed_form", "form": "sum_reciprocal_2d"},
    )


_CLOSED_FORMS = {
    "t_plus_quarter_inverse": lambda data: demo_target(),
    "linear": lambda data: linear_target(data["h0"], data["v0"], data.get("alpha", 1.0)),
    "max_affine": lambda data: max_affine_target(
        [tuple(p) for p in data["pieces"]], data.get("alpha", 0.5)
    ),
    "saddle_ratio": lambda data: saddle_2d_target(),
    "sum_reciprocal_2d": lambda data: sum_reciprocal_2d_target(),
}


def target_from_json(data: dict) -> ConvexTarget:
    """Deserialize a target: closed_form, phase_transition, or support_table."""
    kind = data.get("kind")
    if kind == "closed_form":
        form = data.get("form")
        if form not in _CLOSED_FORMS:
            raise ValueError(f"unknown closed form {form!r}")
        target = _CLOSED_FORMS[form](data)
    elif kind == "phase_transition":
        target = as_convex_target(PhaseTransitionSpec.from_json(data))
    elif kind == "support_table":
        from .convex_model import SupportPoint, reconstruct_from_support

        points = [
            SupportPoint(float(h), tuple(float(x) for x in v))
            for h, v in data["points"]
        ]
        m = len(points[0].slope)
        body = lambda pt: reconstruct_from_support(points, pt)  # noqa: E731
        target = ConvexTarget(
            m=m,
            alpha=float(data["alpha"]),
            intercept_interval=(float(data["b"]), float(data["c"])),
            lipschitz_L=float(data["L"]),
            body=body,
            body_json={"kind": "support_table", "points": data["points"]},
        )
    else:
        raise ValueError(f"unknown target kind {kind!r}")
    # explicit hypothesis constants override probed ones when present
    for attr, key in (("alpha", "alpha"), ("b", "b"), ("c", "c"), ("lipschitz_L", "L")):
        if key in data:
            setattr(target, attr, float(data[key]))
    return target
