"""Exact rational scalars and tiny planar vector helpers.

All coordinates in this package are ``fractions.Fraction`` values.  Points
and vectors are plain ``(Fraction, Fraction)`` tuples; the helpers below keep
the arithmetic exact (no floats anywhere in the geometric kernel).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Tuple, Union

Scalar = Fraction
Vec = Tuple[Fraction, Fraction]

RatLike = Union[int, str, Fraction]


def rat(value: RatLike) -> Fraction:
    """Parse an exact rational from an int, Fraction, or a string.

    Strings may be fractions ("1/2", "-3/4") or decimals ("0.75").  Floats
    are rejected: binary rounding would silently corrupt exact comparisons.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def rat_str(value: Fraction) -> str:
    """Serialize a rational as a fraction string ("1/2", "3")."""
    return str(value)


def vec(x: RatLike, y: RatLike) -> Vec:
    return (rat(x), rat(y))


def vec_str(v: Vec) -> list:
    return [rat_str(v[0]), rat_str(v[1])]


def v_add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def v_sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def v_scale(k: Fraction, a: Vec) -> Vec:
    return (k * a[0], k * a[1])


def v_dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def v_cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def v_len2(a: Vec) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def dist2(a: Vec, b: Vec) -> Fraction:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


def midpoint(a: Vec, b: Vec) -> Vec:
    half = Fraction(1, 2)
    return ((a[0] + b[0]) * half, (a[1] + b[1]) * half)


def q_floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def q_ceil(x: Fraction) -> int:
    return -((-x).numerator // (-x).denominator)
