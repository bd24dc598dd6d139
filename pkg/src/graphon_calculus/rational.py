"""Parsing and canonical printing of exact rationals."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, str, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fmt(x: Fraction | int) -> str:
    """`p/q` in lowest terms, integers without `/1`."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
