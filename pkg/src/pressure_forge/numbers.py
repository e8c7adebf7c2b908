"""Exact and extended-precision scalar handling.

Language-level decisions (admissibility of a digit word, membership of a
Sturmian word) must be bit-reliable, so parameters are never silently
truncated to doubles.  A scalar is carried either

* exactly, as a ``fractions.Fraction`` (ints, Fractions and floats -- a float
  is an exact binary rational -- all take this path), or
* symbolically, as a tag evaluated with gmpy2's mpfr at whatever working
  precision the consumer requests (``golden``, ``e``, ``sqrt:D``, ``exp:q``,
  ``pi`` and arithmetic forms built on them).

Consumers that iterate (beta-orbits, Sturmian floors at irrational slope)
re-request the value at escalated precision instead of reusing a stale one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Union

import gmpy2

ScalarLike = Union[int, float, Fraction, "SymbolicReal", str]

#: spec-mandated guard band half-width around integer boundaries (2^-40)
GUARD_BITS = 40


class SymbolicReal:
    """A real number given by a recipe, re-evaluable at any mpfr precision."""

    def __init__(self, name: str, producer: Callable[[int], "gmpy2.mpfr"]):
        self.name = name
        self._producer = producer

    def to_mpfr(self, precision_bits: int) -> "gmpy2.mpfr":
        with gmpy2.context(precision=precision_bits):
            return self._producer(precision_bits)

    def __float__(self) -> float:
        return float(self.to_mpfr(80))

    def __repr__(self) -> str:
        return f"SymbolicReal({self.name})"


def golden_mean() -> SymbolicReal:
    return SymbolicReal("golden", lambda p: (1 + gmpy2.sqrt(gmpy2.mpfr(5))) / 2)


def euler_e() -> SymbolicReal:
    return SymbolicReal("e", lambda p: gmpy2.exp(gmpy2.mpfr(1)))


def sqrt_of(d: Fraction) -> SymbolicReal:
    return SymbolicReal(
        f"sqrt:{d}",
        lambda p: gmpy2.sqrt(gmpy2.mpfr(d.numerator) / d.denominator),
    )


def exp_of(q: Fraction) -> SymbolicReal:
    """e**q for rational q; the beta values of the gamma-grid."""
    return SymbolicReal(
        f"exp:{q}",
        lambda p: gmpy2.exp(gmpy2.mpfr(q.numerator) / q.denominator),
    )


def pi_times(q: Fraction) -> SymbolicReal:
    return SymbolicReal(
        f"pi:{q}",
        lambda p: gmpy2.const_pi() * q.numerator / q.denominator,
    )


def parse_scalar(value: ScalarLike) -> Union[Fraction, SymbolicReal]:
    """Normalize a user-facing scalar to Fraction (exact) or SymbolicReal.

    Strings: ``"golden"``, ``"e"``, ``"pi/6"``-style pi multiples,
    ``"sqrt:D"``, ``"exp:p/q"``, or anything ``Fraction`` parses ("3/2",
    "1.58").
    """
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite scalar: {value!r}")
        return Fraction(value)
    if isinstance(value, SymbolicReal):
        return value
    if isinstance(value, str):
        text = value.strip().lower()
        if text == "golden":
            return golden_mean()
        if text == "e":
            return euler_e()
        if text.startswith("sqrt:"):
            return sqrt_of(Fraction(text[5:]))
        if text.startswith("exp:"):
            return exp_of(Fraction(text[4:]))
        if text.startswith("pi"):
            rest = text[2:]
            if not rest:
                return pi_times(Fraction(1))
            if rest.startswith("/"):
                return pi_times(Fraction(1, int(rest[1:])))
            if rest.startswith("*"):
                return pi_times(Fraction(rest[1:]))
        return Fraction(text)
    raise TypeError(f"unsupported scalar: {value!r}")


def scalar_float(value: ScalarLike) -> float:
    v = parse_scalar(value)
    return float(v)


def scalar_repr(value: Union[Fraction, SymbolicReal]) -> str:
    if isinstance(value, SymbolicReal):
        return value.name
    return str(value)
