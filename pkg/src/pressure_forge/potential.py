"""The constructed potential: penalty schedule, phi evaluation on windows.

The penalty schedule is

    delta_j   = (c + 2L + 14 + 9 log j) / (j min{alpha, 1})   for j >= 1,
    delta_0   = delta_1 + 2L,
    delta_inf = 0,

strictly decreasing to 0, and phi_gamma at a coordinate is gamma's slope
value minus delta at the centered admissibility window j_gamma.  On a finite
word the true j of an extension is only bracketed, so evaluation carries a
mode: *optimistic* treats an edge-capped window as j = inf (a certified
upper reading on the cylinder), *pessimistic* charges the capped j (a
certified lower reading at any admissible extension).

The one-parameter form uses phi_gamma = s(gamma) - delta_j over the grid of
intercepts; the full form uses phi_{k,gamma} = gamma_k - delta_j over a
sampled support set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .convex_model import ConvexTarget, slope_function
from .errors import DomainError
from .product_shift import (
    GammaVector,
    ProductAlphabet,
    ZFamily,
    ZGamma,
    j_window,
    _coerce_word,
)

INFINITE_J = math.inf


@dataclass
class DeltaSchedule:
    """Memoized delta_j values for one set of hypothesis constants.

    ``scale`` rescales the whole schedule; it is an experimental knob (not
    from the construction) and defaults to 1.
    """

    alpha: float
    b: float
    c: float
    L: float
    scale: float = 1.0
    _memo: Dict[int, float] = field(default_factory=dict, repr=False)

    def delta(self, j) -> float:
        if j == INFINITE_J:
            return 0.0
        j = int(j)
        if j < 0:
            raise ValueError("j must be >= 0")
        hit = self._memo.get(j)
        if hit is not None:
            return hit
        if j == 0:
            val = self.delta(1) + 2 * self.L
        else:
            val = (
                self.scale
                * (self.c + 2 * self.L + 14 + 9 * math.log(j))
                / (j * min(self.alpha, 1.0))
            )
        self._memo[j] = val
        return val

    def __call__(self, j) -> float:
        return self.delta(j)


def delta(schedule: DeltaSchedule, j) -> float:
    """delta_j; accepts j in {0, 1, 2, ...} or math.inf."""
    return schedule.delta(j)


@dataclass
class PotentialSpec:
    """Everything defining phi: constants, gamma grid with slope data,
    schedule, and alphabet.

    One-parameter form: ``gammas[i]`` has empty ``rest`` and ``slopes[i]``
    is the scalar s(gamma).  Full form: ``slopes[i]`` is the support-point
    slope vector attached to gamma_i.
    """

    alpha: float
    b: float
    c: float
    L: float
    gammas: Tuple[GammaVector, ...]
    slopes: Tuple[Tuple[float, ...], ...]
    schedule: DeltaSchedule
    alphabet: ProductAlphabet
    grid_spacing: float
    target: Optional[ConvexTarget] = None
    decoration_k: int = 1
    precision_bits: Optional[int] = None
    _zcache: Dict[int, ZGamma] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.gammas:
            raise ValueError("gamma grid is empty")
        if len(self.gammas) != len(self.slopes):
            raise ValueError("one slope entry per gamma")
        lo = min(float(g.gamma0) for g in self.gammas)
        hi = max(float(g.gamma0) for g in self.gammas)
        if lo < self.b - 1e-12 or hi > self.c + 1e-12:
            raise ValueError("gamma grid escapes [b, c]")

    # -- construction ------------------------------------------------------

    @classmethod
    def one_parameter(
        cls,
        target: ConvexTarget,
        spacing: Fraction = Fraction(1, 64),
        extra_gammas: Sequence[Fraction] = (),
        delta_scale: float = 1.0,
        decoration_k: int = 1,
    ) -> "PotentialSpec":
        """Build the default one-parameter spec from a target: gamma grid of
        the given spacing over [b, c] with cached s(gamma) values."""
        if target.m != 1:
            raise DomainError("one-parameter spec needs an arity-1 target")
        b = Fraction(target.b)
        c = Fraction(target.c)
        grid = []
        g = b
        while g <= c + Fraction(1, 10**12):
            grid.append(min(g, c))
            g += Fraction(spacing)
        for extra in extra_gammas:
            e = Fraction(extra)
            if b <= e <= c and e not in grid:
                grid.append(e)
        grid = sorted(set(grid))
        slopes = tuple((slope_function(target, float(g)),) for g in grid)
        schedule = DeltaSchedule(target.alpha, target.b, target.c, target.lipschitz_L, delta_scale)
        return cls(
            alpha=target.alpha,
            b=target.b,
            c=target.c,
            L=target.lipschitz_L,
            gammas=tuple(GammaVector(g) for g in grid),
            slopes=slopes,
            schedule=schedule,
            alphabet=ProductAlphabet.one_parameter(target.b, target.c),
            grid_spacing=float(spacing),
            target=target,
            decoration_k=decoration_k,
        )

    @classmethod
    def custom_grid(
        cls,
        target: ConvexTarget,
        gammas: Sequence[Fraction],
        grid_spacing: Optional[float] = None,
        delta_scale: float = 1.0,
        decoration_k: int = 1,
    ) -> "PotentialSpec":
        """One-parameter spec over an explicit gamma grid (tests, demos)."""
        grid = sorted(Fraction(g) for g in gammas)
        slopes = tuple((slope_function(target, float(g)),) for g in grid)
        schedule = DeltaSchedule(
            target.alpha, target.b, target.c, target.lipschitz_L, delta_scale
        )
        if grid_spacing is None:
            grid_spacing = (
                max(float(b - a) for a, b in zip(grid, grid[1:]))
                if len(grid) > 1
                else float(target.c - target.b)
            )
        return cls(
            alpha=target.alpha,
            b=target.b,
            c=target.c,
            L=target.lipschitz_L,
            gammas=tuple(GammaVector(g) for g in grid),
            slopes=slopes,
            schedule=schedule,
            alphabet=ProductAlphabet.one_parameter(target.b, target.c),
            grid_spacing=grid_spacing,
            target=target,
            decoration_k=decoration_k,
        )

    @classmethod
    def from_support_sample(
        cls,
        target: ConvexTarget,
        support_points,
        grid_spacing: float,
        delta_scale: float = 1.0,
        decoration_k: int = 1,
    ) -> "PotentialSpec":
        """Full-form spec from a sampled support set: gamma = (h, v_1..v_m)."""
        gammas = []
        slopes = []
        for p in support_points:
            g0 = Fraction(p.intercept).limit_denominator(1 << 32)
            rest = tuple(Fraction(v).limit_denominator(1 << 32) for v in p.slope)
            gammas.append(GammaVector(g0, rest))
            slopes.append(tuple(float(v) for v in p.slope))
        schedule = DeltaSchedule(
            target.alpha, target.b, target.c, target.lipschitz_L, delta_scale
        )
        return cls(
            alpha=target.alpha,
            b=target.b,
            c=target.c,
            L=target.lipschitz_L,
            gammas=tuple(gammas),
            slopes=tuple(slopes),
            schedule=schedule,
            alphabet=ProductAlphabet.full_form(
                target.m, target.b, target.c, target.lipschitz_L
            ),
            grid_spacing=grid_spacing,
            target=target,
            decoration_k=decoration_k,
        )

    # -- accessors -----------------------------------------------------------

    @property
    def is_one_parameter(self) -> bool:
        return all(g.m == 0 for g in self.gammas)

    def zgamma(self, index: int) -> ZGamma:
        zg = self._zcache.get(index)
        if zg is None:
            zg = ZGamma(self.gammas[index], self.precision_bits)
            self._zcache[index] = zg
        return zg

    def s_value(self, index: int) -> float:
        """One-parameter slope s(gamma_index)."""
        return self.slopes[index][0]

    def zfamily(self) -> ZFamily:
        if not self.is_one_parameter:
            raise DomainError("ZFamily is a one-parameter structure")
        return ZFamily([g.gamma0 for g in self.gammas], self.precision_bits)

    def gamma_values(self) -> List[Fraction]:
        return [g.gamma0 for g in self.gammas]

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "b": self.b,
            "c": self.c,
            "L": self.L,
            "grid_spacing": self.grid_spacing,
            "gamma_count": len(self.gammas),
            "delta_scale": self.schedule.scale,
            "decoration_k": self.decoration_k,
            "form": "one-parameter" if self.is_one_parameter else "theorem-1",
        }


def _delta_hat(spec: PotentialSpec, word, center: int, index: int, mode: str) -> float:
    """delta at the bracketed j of gamma_index around center.

    optimistic: capped windows read delta_inf = 0.
    pessimistic: capped windows are charged at the capped j.
    """
    j, capped = j_window(word, center, spec.gammas[index], spec.zgamma(index))
    if capped and mode == "optimistic":
        return 0.0
    return spec.schedule.delta(j)


def phi_gamma_at(
    spec: PotentialSpec,
    word,
    center: int,
    gamma_index: int,
    k: int = 0,
    mode: str = "optimistic",
) -> float:
    """phi_{k,gamma}(word, center) = slope_k(gamma) - delta at the bracketed j."""
    if mode not in ("optimistic", "pessimistic"):
        raise ValueError("mode must be optimistic or pessimistic")
    d = _delta_hat(spec, word, center, gamma_index, mode)
    return spec.slopes[gamma_index][k] - d


def phi_at(
    spec: PotentialSpec,
    word,
    center: int,
    mode: str = "optimistic",
    k: int = 0,
) -> float:
    """max over the gamma grid of phi_gamma_at (the phi of the construction).

    Optimistic mode upper-bounds sup over the cylinder of the true phi at
    the coordinate; pessimistic lower-bounds phi at any point extending the
    word inside the best-fitting Z_gamma.
    """
    return max(
        phi_gamma_at(spec, word, center, i, k, mode)
        for i in range(len(spec.gammas))
    )


def cylinder_sum_upper(spec: PotentialSpec, word, t) -> float:
    """Upper bound for sup over the cylinder of the Birkhoff sum of t*phi.

    One-parameter: sum_i t * phi_at(i, optimistic).  Full form: the sum of
    t_k-weighted per-component optimistic maxima.
    """
    w = _coerce_word(word)
    n = len(w)
    if n < 1:
        raise ValueError("word must be nonempty")
    if spec.is_one_parameter:
        tv = float(t)
        return sum(tv * phi_at(spec, w, i, "optimistic") for i in range(n))
    ts = tuple(float(x) for x in t)
    total = 0.0
    for i in range(n):
        for k, tk in enumerate(ts):
            total += tk * phi_at(spec, w, i, "optimistic", k)
    return total


def equicontinuity_modulus(spec: PotentialSpec, half_length: int) -> float:
    """Words agreeing on a centered 2l-1 window have phi values within
    delta_l of each other."""
    return spec.schedule.delta(half_length)
