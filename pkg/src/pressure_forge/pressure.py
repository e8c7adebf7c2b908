"""Certified numerical topological pressure.

Upper approximant: P_n+ = (1/n) log sum over words w in A^n of
exp(sup-over-cylinder upper bound of the n-step Birkhoff sum of t*phi).
Per coordinate the upper bound is the *optimistic* phi reading (edge-capped
windows charged delta_inf = 0), which dominates the true sup pointwise, and
the word sum is explored depth-first with an admissible bound per remaining
letter.  Pruned subtrees contribute their whole bound to the reported sum,
so the result stays a certified upper bound no matter how aggressive the
pruning; the pruned relative mass is reported alongside.

Lower bound: max over the gamma grid of gamma0 + t . v(gamma), the value
h(mu) + integral t phi dmu of the product measure carried by Z_gamma; it
never exceeds the target (support-line inequality).

Determinism: the word tree is split into fixed-depth shards merged in
lexicographic order, and the prune threshold is anchored to a greedy seed
leaf computed up front, so results are bit-identical for any thread count.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, DomainError
from .potential import PotentialSpec
from .product_shift import SymbolWord, ZFamily

DEFAULT_NODE_CAP = 60_000_000
#: a subtree is pruned when its bound cannot move the log-sum beyond this
#: relative mass (design target 1e-12; threshold is anchored to the greedy
#: seed leaf, which only makes pruning more conservative)
DEFAULT_PRUNE_REL = 1e-12
_SHARD_DEPTH = 2


@dataclass
class UpperResult:
    value: float
    pruned_mass_rel: float
    nodes: int
    leaves: int
    slack_bound: float


@dataclass
class PressureRow:
    """One sandwich record; ``upper`` is NaN when the budget was exceeded."""

    t: float
    n: int
    upper: float
    lower: float
    target: float
    gamma_grid_spacing: float
    pruned_mass_bound: float
    budget_exceeded: bool = False

    @property
    def gap(self) -> float:
        return self.upper - self.lower


class _Kahan:
    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        y = x - self.c
        t = self.s + y
        self.c = (t - self.s) - y
        self.s = t


def lower_pressure(spec: PotentialSpec, t) -> float:
    """max over the gamma grid of gamma0 + t . v(gamma).

    The variational value of the product measure carried by the best
    Z_gamma; certified not to exceed the target up to the slope-function
    tolerance.
    """
    ts = (float(t),) if isinstance(t, (int, float)) else tuple(map(float, t))
    if any(x <= spec.alpha for x in ts):
        raise DomainError(f"t={ts} not componentwise above alpha={spec.alpha}")
    best = -math.inf
    for g, slope in zip(spec.gammas, spec.slopes):
        val = float(g.gamma0) + sum(a * b for a, b in zip(ts, slope))
        if val > best:
            best = val
    return best


def boundary_slack(spec: PotentialSpec, t: float, n: int) -> float:
    """Per-step bound on the optimism of edge-capped windows:
    (2 t / n) * sum_{l <= ceil(n/2)} delta_l.  Decreases to 0 in n and
    dominates P_{2n}+ - P_n+ (which is in fact <= 0)."""
    return (
        2.0
        * float(t)
        / n
        * sum(spec.schedule.delta(l) for l in range(1, n // 2 + 2))
    )


class _Engine:
    """Shared per-(spec, t, n) state of the branch-and-bound sweep."""

    def __init__(self, spec: PotentialSpec, t: float, n: int):
        if not spec.is_one_parameter:
            raise DomainError(
                "the branch-and-bound engine runs the one-parameter form; "
                "use reference_upper_pressure for the full alphabet"
            )
        if n > 60:
            raise ValueError("window packing supports n <= 60")
        self.spec = spec
        self.t = float(t)
        self.n = n
        self.family: ZFamily = spec.zfamily()
        self.G = self.family.size
        self.s = [spec.s_value(i) for i in range(self.G)]
        # death accounting assumes s is non-increasing along the grid
        assert all(
            self.s[i] >= self.s[i + 1] - 1e-12 for i in range(self.G - 1)
        ), "slope values must be non-increasing in gamma"
        self.smax = max(self.s)
        self.deltas = [spec.schedule.delta(j) for j in range(n + 2)]
        alpha = spec.alphabet
        self.x_hi = alpha.x_max
        self.y_lo, self.y_hi = alpha.y0_range
        self.k = spec.decoration_k
        self.base_letters = [
            (x, y)
            for x in range(self.x_hi + 1)
            for y in range(self.y_lo, self.y_hi + 1)
        ]
        self.letters = [
            (x, y, d) for (x, y) in self.base_letters for d in range(self.k)
        ]
        self.logA = math.log(len(self.letters))
        self.xcache: Dict[int, int] = {}
        self.ycache: Dict[int, Tuple[int, int]] = {}
        self.xbase = self.x_hi + 1
        self.ybase = self.y_hi - self.y_lo + 1

    # packed-window lookups ------------------------------------------------

    def x_min_index(self, xs: List[int], a: int, d: int, packed: int) -> int:
        hit = self.xcache.get(packed)
        if hit is None:
            hit = self.family.x_min_index(tuple(xs[a : d + 1]))
            self.xcache[packed] = hit
        return hit

    def y_interval(self, ys: List[int], a: int, d: int, packed: int) -> Tuple[int, int]:
        hit = self.ycache.get(packed)
        if hit is None:
            hit = self.family.y_interval(tuple(ys[a : d + 1]))
            self.ycache[packed] = hit
        return hit


class _Sweep:
    """One DFS over (a shard of) A^n with undoable per-center state."""

    def __init__(
        self,
        eng: _Engine,
        prune_log: float,
        node_cap: int,
        deadline: Optional[float] = None,
    ):
        self.eng = eng
        n = eng.n
        self.prune_log = prune_log
        self.node_cap = node_cap
        self.deadline = deadline
        self.nodes = 0
        self.leaves = 0
        self.sum = _Kahan()
        self.pruned = _Kahan()
        self.offset = eng.t * n * eng.smax  # exp() rescaling anchor
        # word under construction
        self.xs = [0] * n
        self.ys = [0] * n
        self.ds = [0] * n
        self.packx = [0] * n   # packed x[a..d] per start a
        self.packy = [0] * n
        # per-center state
        self.xmin = [0] * n
        self.ylo = [0] * n
        self.yhi = [0] * n
        self.dcon = [True] * n
        self.alive = [False] * n
        self.bestdead = [-math.inf] * n
        self.phi = [0.0] * n
        self.sum_phi = 0.0
        self.depth = 0
        self._trail: List[Tuple] = []
        self._marks: List[Tuple[int, float]] = []

    # -- state transitions ---------------------------------------------------

    def push(self, letter: Tuple[int, int, int]) -> None:
        """Append a letter, updating every center whose window grew."""
        eng = self.eng
        d = self.depth
        x, y, deco = letter
        self.xs[d] = x
        self.ys[d] = y
        self.ds[d] = deco
        xb, yb = eng.xbase, eng.ybase
        xoff = x
        yoff = y - eng.y_lo
        packx, packy = self.packx, self.packy
        for a in range(d):
            packx[a] = packx[a] * xb + xoff
            packy[a] = packy[a] * yb + yoff
        packx[d] = xoff
        packy[d] = yoff
        self._marks.append((len(self._trail), self.sum_phi))

        # new center at d (l = 1)
        xm = eng.x_min_index(self.xs, d, d, (packx[d] << 6) | 1)
        ylo, yhi = eng.y_interval(self.ys, d, d, (packy[d] << 6) | 1)
        lo = xm if xm > ylo else ylo
        alive = lo <= yhi
        bd = -math.inf
        if not alive:
            # j = 0 for every gamma: even the letter fails.  When only SOME
            # gammas reject the letter their s - delta_0 values never beat a
            # later death (s spreads at most 2L = delta_0 - delta_1), so only
            # the all-dead case needs recording here.
            bd = eng.smax - eng.deltas[0]
        phi = eng.s[lo] if alive else bd
        self._trail.append((d, None))
        self.xmin[d] = xm
        self.ylo[d] = ylo
        self.yhi[d] = yhi
        self.dcon[d] = True
        self.alive[d] = alive
        self.bestdead[d] = bd
        self.phi[d] = phi
        self.sum_phi += phi

        # grown windows: centers i with l = d - i + 1, window [2i-d, d]
        for i in range((d + 1) // 2, d):
            if not self.alive[i]:
                continue
            a = 2 * i - d
            ln = d - a + 1
            key_x = (packx[a] << 6) | ln
            key_y = (packy[a] << 6) | ln
            old = (
                i,
                self.xmin[i],
                self.ylo[i],
                self.yhi[i],
                self.dcon[i],
                self.alive[i],
                self.bestdead[i],
                self.phi[i],
            )
            xm = eng.x_min_index(self.xs, a, d, key_x)
            if xm < self.xmin[i]:
                xm = self.xmin[i]
            ylo, yhi = eng.y_interval(self.ys, a, d, key_y)
            if ylo < self.ylo[i]:
                ylo = self.ylo[i]
            if yhi > self.yhi[i]:
                yhi = self.yhi[i]
            dcon = self.dcon[i] and self.ds[a] == self.ds[i] and self.ds[d] == self.ds[i]
            old_lo = old[1] if old[1] > old[2] else old[2]
            old_hi = old[3]
            new_lo = xm if xm > ylo else ylo
            alive = dcon and new_lo <= yhi
            bd = self.bestdead[i]
            if not alive or new_lo > old_lo or yhi < old_hi:
                # some gammas died at half-length l = d - i + 1: j = l - 1
                l = d - i + 1
                if not alive:
                    dropped_min = old_lo
                elif new_lo > old_lo:
                    dropped_min = old_lo
                else:
                    dropped_min = yhi + 1
                cand = self.eng.s[dropped_min] - self.eng.deltas[l - 1]
                if cand > bd:
                    bd = cand
            phi = self.eng.s[new_lo] if alive else bd
            if (
                xm != old[1]
                or ylo != old[2]
                or yhi != old[3]
                or dcon != old[4]
                or alive != old[5]
                or bd != old[6]
                or phi != old[7]
            ):
                self._trail.append(old)
                self.xmin[i] = xm
                self.ylo[i] = ylo
                self.yhi[i] = yhi
                self.dcon[i] = dcon
                self.alive[i] = alive
                self.bestdead[i] = bd
                self.sum_phi += phi - self.phi[i]
                self.phi[i] = phi
        self.depth = d + 1

    def pop(self) -> None:
        d = self.depth - 1
        mark, sum_phi = self._marks.pop()
        while len(self._trail) > mark:
            entry = self._trail.pop()
            i = entry[0]
            if entry[1] is None:
                continue  # creation record for center d
            (_, xm, ylo, yhi, dcon, alive, bd, phi) = entry
            self.xmin[i] = xm
            self.ylo[i] = ylo
            self.yhi[i] = yhi
            self.dcon[i] = dcon
            self.alive[i] = alive
            self.bestdead[i] = bd
            self.phi[i] = phi
        self.sum_phi = sum_phi
        xb, yb = self.eng.xbase, self.eng.ybase
        for a in range(d):
            self.packx[a] //= xb
            self.packy[a] //= yb
        self.depth = d

    # -- DFS ------------------------------------------------------------------

    def bound_log(self) -> float:
        rem = self.eng.n - self.depth
        return self.eng.t * self.sum_phi + rem * (
            self.eng.t * self.eng.smax + self.eng.logA
        )

    def run(self, prefix: Sequence[Tuple[int, int, int]]) -> None:
        for letter in prefix:
            self.push(letter)
        self._dfs()
        for _ in prefix:
            self.pop()

    def _dfs(self) -> None:
        if self.depth == self.eng.n:
            self.leaves += 1
            self.sum.add(math.exp(self.eng.t * self.sum_phi - self.offset))
            return
        for letter in self.eng.letters:
            self.nodes += 1
            if self.nodes > self.node_cap:
                raise BudgetExceeded(
                    f"pressure sweep exceeded {self.node_cap} nodes"
                )
            if self.deadline is not None and self.nodes % 4096 == 0:
                import time

                if time.monotonic() > self.deadline:
                    raise BudgetExceeded("pressure sweep exceeded the time cap")
            self.push(letter)
            lb = self.bound_log()
            if lb <= self.prune_log:
                self.pruned.add(math.exp(lb - self.offset))
            else:
                self._dfs()
            self.pop()


def _greedy_seed_log(eng: _Engine) -> float:
    """log of one deterministically chosen dominant leaf: at each depth keep
    the letter with the largest partial phi sum (ties to the first letter)."""
    sweep = _Sweep(eng, -math.inf, 10**9)
    for _ in range(eng.n):
        best_letter = None
        best_val = -math.inf
        for letter in eng.letters:
            sweep.push(letter)
            val = sweep.sum_phi
            sweep.pop()
            if val > best_val + 1e-15:
                best_val = val
                best_letter = letter
        sweep.push(best_letter)
    return eng.t * sweep.sum_phi


def _shard_prefixes(eng: _Engine, depth: int) -> List[Tuple]:
    import itertools

    return list(itertools.product(eng.letters, repeat=depth))


def upper_pressure(
    spec: PotentialSpec,
    t,
    n: int,
    node_cap: int = DEFAULT_NODE_CAP,
    prune_rel: float = DEFAULT_PRUNE_REL,
    threads: Optional[int] = None,
    time_cap_s: Optional[float] = None,
) -> UpperResult:
    """Certified n-block upper pressure approximant at parameter t.

    Returns (1/n) log( sum + pruned mass ), the pruned relative mass, node
    and leaf counts, and the boundary slack bound.  Full-alphabet (m >= 1)
    specs fall back to the reference evaluator at the same node cap.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not spec.is_one_parameter:
        value = reference_upper_pressure(spec, t, n, node_cap=node_cap)
        return UpperResult(
            value=value,
            pruned_mass_rel=0.0,
            nodes=spec.alphabet.size() ** n,
            leaves=spec.alphabet.size() ** n,
            slack_bound=boundary_slack(spec, max(_as_tuple(t)), n),
        )
    if float(t) <= spec.alpha:
        raise DomainError(f"t={t} must exceed alpha={spec.alpha}")
    eng = _Engine(spec, t, n)
    seed_log = _greedy_seed_log(eng)
    prune_log = math.log(prune_rel) + seed_log
    depth = min(_SHARD_DEPTH, n)
    prefixes = _shard_prefixes(eng, depth)
    deadline = None
    if time_cap_s is not None:
        import time

        deadline = time.monotonic() + time_cap_s

    threads = threads if threads is not None else _threads_from_env()
    shard_totals: List[Tuple[float, float, int, int]] = []
    if threads <= 1 or len(prefixes) < 4:
        sweep = _Sweep(eng, prune_log, node_cap, deadline)
        for prefix in prefixes:
            sweep.sum = _Kahan()
            sweep.pruned = _Kahan()
            nodes0, leaves0 = sweep.nodes, sweep.leaves
            sweep.run(prefix)
            shard_totals.append(
                (
                    sweep.sum.s,
                    sweep.pruned.s,
                    sweep.nodes - nodes0,
                    sweep.leaves - leaves0,
                )
            )
    else:
        shard_totals = _parallel_shards(
            spec, t, n, prune_log, node_cap, prefixes, threads
        )

    total = math.fsum(x[0] for x in shard_totals)
    pruned = math.fsum(x[1] for x in shard_totals)
    nodes = sum(x[2] for x in shard_totals) + len(prefixes) * depth
    leaves = sum(x[3] for x in shard_totals)
    value = (math.log(total + pruned) + eng.t * n * eng.smax) / n
    rel = pruned / (total + pruned) if total + pruned > 0 else 0.0
    return UpperResult(
        value=value,
        pruned_mass_rel=rel,
        nodes=nodes,
        leaves=leaves,
        slack_bound=boundary_slack(spec, t, n),
    )


def _as_tuple(t) -> Tuple[float, ...]:
    return (float(t),) if isinstance(t, (int, float)) else tuple(map(float, t))


def _threads_from_env() -> int:
    raw = os.environ.get("PRESSURE_FORGE_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# module-level worker state for fork-based pools
_WORKER: Dict[str, object] = {}


def _init_worker(spec, t, n, prune_log, node_cap):
    _WORKER["sweep"] = _Sweep(_Engine(spec, t, n), prune_log, node_cap)


def _run_shard(prefix):
    sweep: _Sweep = _WORKER["sweep"]  # type: ignore[assignment]
    sweep.sum = _Kahan()
    sweep.pruned = _Kahan()
    nodes0 = sweep.nodes
    leaves0 = sweep.leaves
    sweep.run(prefix)
    out = (
        sweep.sum.s,
        sweep.pruned.s,
        sweep.nodes - nodes0,
        sweep.leaves - leaves0,
    )
    return out


def _parallel_shards(spec, t, n, prune_log, node_cap, prefixes, threads):
    import multiprocessing as mp

    ctx = mp.get_context("fork")
    with ctx.Pool(
        processes=threads,
        initializer=_init_worker,
        initargs=(spec, t, n, prune_log, node_cap),
    ) as pool:
        return pool.map(_run_shard, prefixes)


def reference_upper_pressure(
    spec: PotentialSpec, t, n: int, node_cap: int = 2_000_000
) -> float:
    """Plain full-enumeration approximant via cylinder_sum_upper.

    Works for any alphabet form (including the full product); meant
    for small n and as the dual-route check of the fast engine.
    """
    from .potential import cylinder_sum_upper

    import itertools

    alphabet = spec.alphabet
    syms = list(alphabet.symbols())
    if len(syms) ** n > node_cap:
        raise BudgetExceeded(
            f"|A|^n = {len(syms) ** n} exceeds the reference cap {node_cap}"
        )
    ts = t
    vals = []
    for combo in itertools.product(syms, repeat=n):
        vals.append(cylinder_sum_upper(spec, SymbolWord(combo), ts))
    top = max(vals)
    total = math.fsum(math.exp(v - top) for v in vals)
    return (math.log(total) + top) / n


def sandwich(
    spec: PotentialSpec,
    t_list: Sequence,
    n_list: Sequence[int],
    node_cap: int = DEFAULT_NODE_CAP,
    prune_rel: float = DEFAULT_PRUNE_REL,
    threads: Optional[int] = None,
    time_cap_s: Optional[float] = None,
) -> List[PressureRow]:
    """Pressure rows over the Cartesian product of t_list and n_list.

    BudgetExceeded marks the row (upper = NaN) and the run continues.
    For full-alphabet specs t entries are tuples and rows keep them as-is.
    """
    from .convex_model import eval_target

    rows: List[PressureRow] = []
    for t in t_list:
        if spec.is_one_parameter and isinstance(t, (tuple, list)):
            t = t[0]
        t_row = float(t) if isinstance(t, (int, float)) else tuple(map(float, t))
        lower = lower_pressure(spec, t)
        target_val = (
            eval_target(spec.target, t) if spec.target is not None else math.nan
        )
        for n in n_list:
            try:
                up = upper_pressure(
                    spec,
                    t,
                    n,
                    node_cap=node_cap,
                    prune_rel=prune_rel,
                    threads=threads,
                    time_cap_s=time_cap_s,
                )
                rows.append(
                    PressureRow(
                        t=t_row,
                        n=n,
                        upper=up.value,
                        lower=lower,
                        target=target_val,
                        gamma_grid_spacing=spec.grid_spacing,
                        pruned_mass_bound=up.pruned_mass_rel,
                    )
                )
            except BudgetExceeded:
                rows.append(
                    PressureRow(
                        t=t_row,
                        n=n,
                        upper=math.nan,
                        lower=lower,
                        target=target_val,
                        gamma_grid_spacing=spec.grid_spacing,
                        pruned_mass_bound=math.nan,
                        budget_exceeded=True,
                    )
                )
    return rows
