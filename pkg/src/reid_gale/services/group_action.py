"""The cyclic group 1/r(a,b,c): validation, characters and junior points."""

import logging
from math import gcd
from typing import Sequence

from reid_gale.errors import DegenerateWeight, GroupActionError, NotFaithful, NotSL
from reid_gale.types.group import CyclicAction, JuniorPoint

logger = logging.getLogger(__name__)


def validate_action(r: int, a: int, b: int, c: int) -> CyclicAction:
    """Validate 1/r(a,b,c) as a faithful subgroup of SL(3).

    Weights are normalized into [1, r).
    """
    if r < 2:
        raise GroupActionError(f"group order must be at least 2, got {r}", r=r)
    weights = tuple(w % r for w in (a, b, c))
    for w, original in zip(weights, (a, b, c)):
        if w == 0:
            raise DegenerateWeight(
                f"weight {original} is divisible by {r}", r=r, weight=original,
            )
    if sum(weights) % r != 0:
        raise NotSL(
            f"weights {a},{b},{c} do not sum to 0 mod {r}", r=r, weights=[a, b, c],
        )
    if gcd(r, *weights) != 1:
        raise NotFaithful(
            f"gcd of {r},{a},{b},{c} exceeds 1", r=r, weights=[a, b, c],
        )
    return CyclicAction(r, weights)


def parse_group(spec: str) -> CyclicAction:
    """Parse the CLI form `r,a,b,c`."""
    try:
        r, a, b, c = (int(x) for x in spec.split(","))
    except ValueError:
        raise GroupActionError(f"expected r,a,b,c but got {spec!r}", spec=spec) from None
    return validate_action(r, a, b, c)


def weight(action: CyclicAction, m: Sequence[int]) -> int:
    """Character of the monomial x^m; negative exponents are allowed."""
    a, b, c = action.weights
    return (m[0] * a + m[1] * b + m[2] * c) % action.r


def element(action: CyclicAction, k: int) -> tuple[int, int, int]:
    """Numerators of the k-th group element (k·(a,b,c) mod r)."""
    return tuple((k * w) % action.r for w in action.weights)


def age(action: CyclicAction, k: int) -> int:
    return sum(element(action, k)) // action.r


def corners(action: CyclicAction) -> list[JuniorPoint]:
    r = action.r
    return [JuniorPoint((r, 0, 0)), JuniorPoint((0, r, 0)), JuniorPoint((0, 0, r))]


def junior_points(action: CyclicAction) -> list[JuniorPoint]:
    """Corners plus the age-one elements, sorted lexicographically."""
    points = set(corners(action))
    for k in range(1, action.r):
        if age(action, k) == 1:
            points.add(JuniorPoint(element(action, k)))
    result = sorted(points)
    logger.debug(
        "%s: %d junior points, %d interior",
        action.label(), len(result), sum(1 for p in result if p.interior),
    )
    return result


def is_junior_point(action: CyclicAction, numerators: Sequence[int]) -> bool:
    return JuniorPoint(tuple(numerators)) in set(junior_points(action))


def pairing(point: JuniorPoint, m: Sequence[int]) -> int:
    """r·<v, m> for v = numerators / r."""
    return sum(p * x for p, x in zip(point.numerators, m))
