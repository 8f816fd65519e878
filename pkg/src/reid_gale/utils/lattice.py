"""Small integer vector helpers for three-dimensional lattice arithmetic."""

from functools import reduce
from math import gcd
from typing import Sequence


def det3(p: Sequence[int], q: Sequence[int], s: Sequence[int]) -> int:
    """Determinant of the 3x3 matrix with rows p, q, s."""
    return (
        p[0] * (q[1] * s[2] - q[2] * s[1])
        - p[1] * (q[0] * s[2] - q[2] * s[0])
        + p[2] * (q[0] * s[1] - q[1] * s[0])
    )


def cross(p: Sequence[int], q: Sequence[int]) -> tuple[int, int, int]:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def dot(p: Sequence[int], q: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(p, q))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """v divided by the gcd of its entries; zero stays zero."""
    g = reduce(gcd, v, 0)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)
