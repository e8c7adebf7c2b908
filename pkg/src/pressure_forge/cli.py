"""Command-line front end.

Subcommands: betashift, sturmian, potential, pins, pressure, target, convex.
Configuration comes from a JSON file (see RunConfig); every output file
starts with a manifest header (config hash, grid spacing, precision bits,
version) and is byte-identical across reruns with the same config and seed.

Exit codes: 0 success, 2 config validation failure, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .convex_model import (
    eval_target,
    kink_scan,
    sample_support_set,
    slope_function,
)
from .errors import BudgetExceeded, ConfigError, PressureForgeError
from .pinning import greedy_pins, partition_stats
from .potential import PotentialSpec, phi_at
from .pressure import sandwich
from .product_shift import SymbolWord
from .targets import target_from_json
from .beta_shift import BetaLanguage
from .sturmian import enumerate_by_weight, generate_word


@dataclass
class RunConfig:
    """Validated run configuration."""

    target: object
    gamma_spacing: Fraction
    extra_gammas: Tuple[Fraction, ...]
    alphabet_form: str
    node_cap: int
    time_cap_s: object
    support_grid: dict
    seed: int
    precision_bits: int
    delta_scale: float
    decoration_k: int
    config_hash: str

    @classmethod
    def load(cls, path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError("config", f"cannot read {path}: {exc}")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"line {exc.lineno}", f"invalid JSON: {exc.msg}"
            )
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be an object")
        tgt_data = data.get("target")
        if tgt_data is None:
            raise ConfigError("target", "missing target specification")
        try:
            target = target_from_json(tgt_data)
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError("target", str(exc))
        consts = data.get("constants", {})
        for key in ("alpha", "b", "c", "L"):
            if key in consts:
                setattr(
                    target,
                    {"L": "lipschitz_L"}.get(key, key),
                    float(consts[key]),
                )
        if target.alpha <= 0:
            raise ConfigError("constants.alpha", "must be > 0")
        if not (0 <= target.b <= target.c):
            raise ConfigError("constants.b", "need 0 <= b <= c")
        if target.lipschitz_L < 0:
            raise ConfigError("constants.L", "must be >= 0")
        grid = data.get("gamma_grid", {})
        try:
            spacing = Fraction(str(grid.get("spacing", "1/64")))
        except (ValueError, ZeroDivisionError):
            raise ConfigError("gamma_grid.spacing", "not a rational number")
        if spacing <= 0:
            raise ConfigError("gamma_grid.spacing", "must be positive")
        try:
            extra = tuple(Fraction(str(x)) for x in grid.get("extra", ()))
        except ValueError:
            raise ConfigError("gamma_grid.extra", "entries must be rational")
        for e in extra:
            if not (target.b - 1e-12 <= float(e) <= target.c + 1e-12):
                raise ConfigError("gamma_grid.extra", f"{e} outside [b, c]")
        form = data.get("alphabet_form", "one-parameter")
        if form not in ("one-parameter", "theorem-1"):
            raise ConfigError("alphabet_form", f"unknown form {form!r}")
        budgets = data.get("budgets", {})
        node_cap = int(budgets.get("node_cap", 60_000_000))
        if node_cap < 1:
            raise ConfigError("budgets.node_cap", "must be >= 1")
        time_cap_s = budgets.get("time_cap_s")
        if time_cap_s is not None:
            time_cap_s = float(time_cap_s)
            if time_cap_s <= 0:
                raise ConfigError("budgets.time_cap_s", "must be positive")
        support_grid = data.get("support_grid", {})
        if not isinstance(support_grid, dict):
            raise ConfigError("support_grid", "must be an object")
        seed = int(data.get("seed", 0))
        precision_bits = int(data.get("precision_bits", 192))
        if precision_bits < 64:
            raise ConfigError("precision_bits", "need at least 64 bits")
        delta_scale = float(data.get("delta_scale", 1.0))
        if delta_scale <= 0:
            raise ConfigError("delta_scale", "must be positive")
        decoration_k = int(data.get("decoration_k", 1))
        if decoration_k < 1:
            raise ConfigError("decoration_k", "must be >= 1")
        canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(canonical.encode()).hexdigest()[:16]
        return cls(
            target=target,
            gamma_spacing=spacing,
            extra_gammas=extra,
            alphabet_form=form,
            node_cap=node_cap,
            time_cap_s=time_cap_s,
            support_grid=support_grid,
            seed=seed,
            precision_bits=precision_bits,
            delta_scale=delta_scale,
            decoration_k=decoration_k,
            config_hash=digest,
        )

    def potential_spec(self) -> PotentialSpec:
        if self.alphabet_form == "one-parameter":
            spec = PotentialSpec.one_parameter(
                self.target,
                spacing=self.gamma_spacing,
                extra_gammas=self.extra_gammas,
                delta_scale=self.delta_scale,
                decoration_k=self.decoration_k,
            )
        else:
            spec = self._full_alphabet_spec()
        spec.precision_bits = self.precision_bits
        return spec

    def _full_alphabet_spec(self) -> PotentialSpec:
        """Full-alphabet spec: sample the support set S on a domain grid."""
        target = self.target
        lo = float(self.support_grid.get("lo", target.alpha * 1.05))
        hi = float(self.support_grid.get("hi", target.alpha * 8.0))
        count = int(self.support_grid.get("count", 9))
        if not (target.alpha < lo < hi) or count < 1:
            raise ConfigError("support_grid", "need alpha < lo < hi, count >= 1")
        step = (hi - lo) / max(count - 1, 1)
        if target.m == 1:
            grid = [lo + step * k for k in range(count)]
        else:
            import itertools

            axis = [lo + step * k for k in range(count)]
            grid = list(itertools.product(axis, repeat=target.m))
        points = sample_support_set(target, grid)
        return PotentialSpec.from_support_sample(
            target,
            points,
            grid_spacing=step,
            delta_scale=self.delta_scale,
            decoration_k=self.decoration_k,
        )

    def manifest_lines(self, grid_spacing: Optional[float] = None) -> List[str]:
        spacing = grid_spacing if grid_spacing is not None else float(self.gamma_spacing)
        return [
            f"# pressure-forge {__version__}",
            f"# config_hash: {self.config_hash}",
            f"# gamma_grid_spacing: {spacing!r}",
            f"# precision_bits: {self.precision_bits}",
        ]


def _emit(lines: Sequence[str], out: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_word(text: str) -> SymbolWord:
    """Parse 'x y,x y,...' (letters comma-separated, components by space)."""
    symbols = []
    for token in text.split(","):
        parts = token.split()
        if not parts:
            raise ConfigError("word", f"empty letter in {text!r}")
        symbols.append(tuple(int(p) for p in parts))
    return SymbolWord(symbols)


def _render_word(word: Tuple[Tuple[int, ...], ...]) -> str:
    return ",".join(" ".join(str(c) for c in sym) for sym in word)


# -- subcommand handlers ------------------------------------------------------


def _cmd_betashift(args) -> int:
    lang = BetaLanguage(args.beta, args.precision_bits)
    lines = [f"# pressure-forge {__version__}", f"# beta: {args.beta}"]
    if args.count_only:
        lines.append(str(lang.count_words(args.n)))
    else:
        for w in lang.words(args.n):
            lines.append("".join(map(str, w)) if max(w, default=0) < 10 else " ".join(map(str, w)))
    _emit(lines, args.out)
    return 0


def _cmd_sturmian(args) -> int:
    lines = [f"# pressure-forge {__version__}"]
    if args.enumerate_all_slopes:
        if args.weight is None:
            raise ConfigError("weight", "--enumerate-all-slopes needs --weight")
        words = sorted(enumerate_by_weight(args.n, args.weight))
        lines.append(f"# length {args.n} weight {args.weight}: {len(words)} words")
        lines.extend(" ".join(map(str, w)) for w in words)
    else:
        if args.gamma is None:
            raise ConfigError("gamma", "--gamma required without --enumerate-all-slopes")
        g = Fraction(args.gamma)
        a = Fraction(args.a)
        word = generate_word(g, a, 0, args.n)
        if args.weight is not None and sum(word) != args.weight:
            lines.append(f"# weight {sum(word)} != requested {args.weight}")
        lines.append(" ".join(map(str, word)))
    _emit(lines, args.out)
    return 0


def _cmd_potential(args) -> int:
    cfg = RunConfig.load(args.config)
    spec = cfg.potential_spec()
    word = _parse_word(args.word)
    val = phi_at(spec, word, args.center, args.mode)
    lines = cfg.manifest_lines()
    lines.append(f"phi[{args.mode}] at {args.center}: {val!r}")
    _emit(lines, args.out)
    return 0


def _cmd_pins(args) -> int:
    cfg = RunConfig.load(args.config)
    spec = cfg.potential_spec()
    family = spec.zfamily()
    alphabet = list(spec.alphabet.symbols())
    rng = random.Random(args.seed if args.seed is not None else cfg.seed)
    records = []
    for _ in range(args.samples):
        word = SymbolWord(rng.choice(alphabet) for _ in range(args.length))
        records.append(greedy_pins(word, family))
    stats = partition_stats(records)
    payload = {
        "manifest": {
            "version": __version__,
            "config_hash": cfg.config_hash,
            "gamma_grid_spacing": float(cfg.gamma_spacing),
            "precision_bits": cfg.precision_bits,
            "seed": args.seed if args.seed is not None else cfg.seed,
            "samples": args.samples,
            "length": args.length,
        },
        "pin_count": stats.pin_count,
        "total_length": stats.total_length,
        "mean_return": str(stats.mean_return),
        "q_hat": {str(j): str(q) for j, q in sorted(stats.q_hat.items())},
        "r_hat": {
            f"{j}|{','.join(map(str, n))}": str(r)
            for (j, n), r in sorted(stats.r_hat.items())
        },
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


def _parse_t(token: str):
    """Scalar t, or a colon-joined tuple for full-alphabet targets."""
    if ":" in token:
        return tuple(float(Fraction(x)) for x in token.split(":"))
    return float(Fraction(token))


def _fmt_t(t) -> str:
    if isinstance(t, tuple):
        return ":".join(repr(x) for x in t)
    return repr(t)


def _cmd_pressure(args) -> int:
    cfg = RunConfig.load(args.config)
    spec = cfg.potential_spec()
    t_list = [_parse_t(x) for x in args.t.split(",")]
    n_list = [int(x) for x in args.n.split(",")]
    rows = sandwich(
        spec,
        t_list,
        n_list,
        node_cap=cfg.node_cap,
        threads=args.threads,
        time_cap_s=cfg.time_cap_s,
    )
    lines = cfg.manifest_lines(grid_spacing=spec.grid_spacing)
    lines.append("t,n,upper,lower,target,gap,gamma_grid_spacing,pruned_mass_bound")
    exceeded = False
    for r in rows:
        exceeded = exceeded or r.budget_exceeded
        lines.append(
            f"{_fmt_t(r.t)},{r.n},{r.upper!r},{r.lower!r},{r.target!r},"
            f"{r.gap!r},{r.gamma_grid_spacing!r},{r.pruned_mass_bound!r}"
        )
    _emit(lines, args.out)
    return 3 if exceeded else 0


def _cmd_target(args) -> int:
    cfg = RunConfig.load(args.config)
    lines = cfg.manifest_lines()
    if args.action == "eval":
        ts = [float(Fraction(x)) for x in args.t.split(",")]
        for t in ts:
            lines.append(f"f({t!r}) = {eval_target(cfg.target, t)!r}")
    elif args.action == "kinks":
        kinks = kink_scan(cfg.target, args.lo, args.hi, args.step)
        lines.append("location,jump")
        for loc, jump in kinks:
            lines.append(f"{loc!r},{jump!r}")
    _emit(lines, args.out)
    return 0


def _cmd_convex(args) -> int:
    cfg = RunConfig.load(args.config)
    lines = cfg.manifest_lines()
    if args.action == "slope":
        g = float(Fraction(args.gamma))
        lines.append(f"s({g!r}) = {slope_function(cfg.target, g)!r}")
    elif args.action == "support":
        lo, hi, step = (float(Fraction(x)) for x in args.grid.split(":"))
        grid = []
        t = lo
        while t <= hi + 1e-12:
            grid.append(t)
            t += step
        points = sample_support_set(cfg.target, grid)
        lines.append("intercept,slope")
        for p in points:
            lines.append(f"{p.intercept!r},{' '.join(repr(v) for v in p.slope)}")
    _emit(lines, args.out)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pressure-forge",
        description=(
            "Subshift constructions with prescribed pressure curves: "
            "beta-shift and Sturmian languages, penalty potentials, pinning "
            "statistics, and certified pressure sandwiches."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betashift", help="beta-shift language tools")
    ps_ = p.add_subparsers(dest="action", required=True)
    w = ps_.add_parser("words", help="enumerate or count admissible words")
    w.add_argument("--beta", required=True, help="number, 'golden', 'e', 'exp:p/q', 'sqrt:D'")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--count-only", action="store_true")
    w.add_argument("--precision-bits", type=int, default=None)
    w.add_argument("--out")
    w.set_defaults(func=_cmd_betashift)

    p = sub.add_parser("sturmian", help="Sturmian word tools")
    ps_ = p.add_subparsers(dest="action", required=True)
    w = ps_.add_parser("words", help="generate or enumerate Sturmian words")
    w.add_argument("--gamma", help="slope (rational or decimal)")
    w.add_argument("--a", default="0", help="intercept in [0,1)")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--weight", type=int, default=None)
    w.add_argument("--enumerate-all-slopes", action="store_true")
    w.add_argument("--out")
    w.set_defaults(func=_cmd_sturmian)

    p = sub.add_parser("potential", help="evaluate the constructed potential")
    ps_ = p.add_subparsers(dest="action", required=True)
    w = ps_.add_parser("eval", help="phi at one coordinate of a word")
    w.add_argument("--config", required=True)
    w.add_argument("--word", required=True, help="letters 'x y' separated by commas")
    w.add_argument("--center", type=int, required=True)
    w.add_argument("--mode", choices=("optimistic", "pessimistic"), default="optimistic")
    w.add_argument("--out")
    w.set_defaults(func=_cmd_potential)

    p = sub.add_parser("pins", help="greedy pinning statistics")
    p.add_argument("--config", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_pins)

    p = sub.add_parser("pressure", help="pressure sandwich estimates")
    ps_ = p.add_subparsers(dest="action", required=True)
    w = ps_.add_parser("estimate", help="upper/lower sandwich over t and n lists")
    w.add_argument("--config", required=True)
    w.add_argument("--t", required=True, help="comma-separated t values")
    w.add_argument("--n", required=True, help="comma-separated window lengths")
    w.add_argument("--threads", type=int, default=None)
    w.add_argument("--out")
    w.set_defaults(func=_cmd_pressure)

    p = sub.add_parser("target", help="evaluate targets / locate kinks")
    ps_ = p.add_subparsers(dest="action", required=True)
    w = ps_.add_parser("eval")
    w.add_argument("--config", required=True)
    w.add_argument("--t", required=True)
    w.add_argument("--out")
    w.set_defaults(func=_cmd_target, action="eval")
    w = ps_.add_parser("kinks")
    w.add_argument("--config", required=True)
    w.add_argument("--lo", type=float, required=True)
    w.add_argument("--hi", type=float, required=True)
    w.add_argument("--step", type=float, default=0.2345)
    w.add_argument("--out")
    w.set_defaults(func=_cmd_target, action="kinks")

    p = sub.add_parser("convex", help="slope function / support sampling")
    ps_ = p.add_subparsers(dest="action", required=True)
    w = ps_.add_parser("slope")
    w.add_argument("--config", required=True)
    w.add_argument("--gamma", required=True)
    w.add_argument("--out")
    w.set_defaults(func=_cmd_convex, action="slope")
    w = ps_.add_parser("support")
    w.add_argument("--config", required=True)
    w.add_argument("--grid", required=True, help="lo:hi:step")
    w.add_argument("--out")
    w.set_defaults(func=_cmd_convex, action="support")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error at {exc.field}: {exc.message}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except PressureForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
