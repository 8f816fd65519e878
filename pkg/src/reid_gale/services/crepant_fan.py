"""Load, validate and index crepant triangulations of the junior simplex."""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Any

import orjson

from reid_gale.errors import (
    GroupActionError,
    NonIntegralRelation,
    OpenStar,
    SchemaError,
    ValidationError,
)
from reid_gale.services.group_action import junior_points, validate_action
from reid_gale.types.fan import CrepantFan, InteriorPointIndex, Wall
from reid_gale.types.group import CyclicAction, JuniorPoint
from reid_gale.utils.lattice import cross, det3, primitive

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("r", "weights", "points", "triangles")


@dataclass
class FanIssue:
    """One failed fan invariant."""

    check: str
    message: str
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check": self.check, "message": self.message, "details": self.details}


# ---------------------------------------------------------------------------
# Reading
# ---------------------------------------------------------------------------

def read_fan_json(path: str | Path) -> dict:
    """Parse a fan file and check its schema. Raises SchemaError."""
    path = Path(path)
    try:
        raw = orjson.loads(path.read_bytes())
    except FileNotFoundError:
        raise SchemaError(f"fan file not found: {path}", path=str(path)) from None
    except OSError as e:
        raise SchemaError(f"cannot read fan file {path}: {e.strerror or e}", path=str(path)) from None
    except orjson.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON in {path.name}: {e}", path=str(path)) from None
    _check_schema(raw, path.name)
    return raw


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_schema(raw: Any, name: str) -> None:
    if not isinstance(raw, dict):
        raise SchemaError(f"{name}: top level must be an object")
    missing = [k for k in REQUIRED_KEYS if k not in raw]
    if missing:
        raise SchemaError(f"{name}: missing keys {missing}", missing=missing)
    if not _is_int(raw["r"]):
        raise SchemaError(f"{name}: 'r' must be an integer")
    weights = raw["weights"]
    if not (isinstance(weights, list) and len(weights) == 3 and all(_is_int(w) for w in weights)):
        raise SchemaError(f"{name}: 'weights' must be three integers")
    for key in ("points", "triangles"):
        rows = raw[key]
        if not isinstance(rows, list):
            raise SchemaError(f"{name}: '{key}' must be a list")
        for i, row in enumerate(rows):
            if not (isinstance(row, list) and len(row) == 3 and all(_is_int(x) for x in row)):
                raise SchemaError(
                    f"{name}: {key}[{i}] must be three integers", key=key, index=i,
                )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _canonical_order(points: list[tuple[int, int, int]], r: int) -> list[int]:
    """File indices sorted corners-first, then lexicographically."""
    corner_rank = {(r, 0, 0): 0, (0, r, 0): 1, (0, 0, r): 2}
    return sorted(
        range(len(points)),
        key=lambda i: (corner_rank.get(points[i], 3), points[i]),
    )


def _edge_counts(triangles) -> dict[tuple[int, int], list[int]]:
    edges: dict[tuple[int, int], list[int]] = defaultdict(list)
    for t, tri in enumerate(triangles):
        for u, v in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
            edges[(min(u, v), max(u, v))].append(t)
    return edges


def _on_simplex_side(p: tuple, q: tuple) -> bool:
    return any(p[s] == 0 and q[s] == 0 for s in range(3))


def check_fan(raw: dict) -> tuple[CyclicAction | None, list[FanIssue]]:
    """Evaluate every crepant fan invariant on parsed fan data.

    Returns the validated action (None when the group itself is invalid) and
    the list of failed checks, in evaluation order.
    """
    issues: list[FanIssue] = []
    r = raw["r"]
    try:
        action = validate_action(r, *raw["weights"])
    except GroupActionError as e:
        return None, [FanIssue("group", str(e), {"code": e.code})]

    points = [tuple(p) for p in raw["points"]]
    triangles = [tuple(t) for t in raw["triangles"]]
    allowed = {p.numerators for p in junior_points(action)}

    for i, p in enumerate(points):
        if any(x < 0 for x in p) or sum(p) != r:
            issues.append(FanIssue("point-height", f"point {i} {p} is not at height {r}", {"point": i}))
        elif p not in allowed:
            issues.append(FanIssue("point-junior", f"point {i} {p} is not a junior point", {"point": i}))
    if len(set(points)) != len(points):
        issues.append(FanIssue("point-duplicate", "duplicate points"))

    bad_index = False
    for t, tri in enumerate(triangles):
        if len(set(tri)) != 3 or any(not 0 <= x < len(points) for x in tri):
            issues.append(FanIssue("triangle-index", f"triangle {t} has bad indices {list(tri)}", {"triangle": t}))
            bad_index = True
    if bad_index:
        return action, issues

    if len(triangles) != r:
        issues.append(FanIssue(
            "volume", f"expected {r} triangles, found {len(triangles)}",
            {"expected": r, "found": len(triangles)},
        ))
    for t, tri in enumerate(triangles):
        d = det3(*(points[i] for i in tri))
        if abs(d) != r * r:
            issues.append(FanIssue(
                "unimodular", f"triangle {t} has |det| {abs(d)}, expected {r * r}",
                {"triangle": t, "det": d},
            ))

    edges = _edge_counts(triangles)
    boundary_edges = set()
    for (u, v), sides in sorted(edges.items()):
        on_side = _on_simplex_side(points[u], points[v])
        expected = 1 if on_side else 2
        if len(sides) != expected:
            issues.append(FanIssue(
                "wall-sides", f"wall ({u},{v}) lies on {len(sides)} triangles, expected {expected}",
                {"wall": [u, v], "sides": sides},
            ))
        if on_side:
            boundary_edges.add((u, v))

    for s in range(3):
        side = sorted((i for i, p in enumerate(points) if p[s] == 0), key=lambda i: points[i])
        expected = {(min(a, b), max(a, b)) for a, b in zip(side, side[1:])}
        covered = {(u, v) for (u, v) in boundary_edges if points[u][s] == 0 and points[v][s] == 0}
        if expected != covered:
            issues.append(FanIssue(
                "boundary-cover", f"side {s} of the simplex is not covered exactly once",
                {"side": s},
            ))

    used = {i for tri in triangles for i in tri}
    for i in range(len(points)):
        if i not in used:
            issues.append(FanIssue("point-unused", f"point {i} lies on no triangle", {"point": i}))

    return action, issues


# ---------------------------------------------------------------------------
# Derived data
# ---------------------------------------------------------------------------

def relation(p1, p2, p3, p4) -> tuple[int, int]:
    """Integers (alpha, beta) with p3 + p4 = alpha*p1 + beta*p2."""
    q = tuple(a + b for a, b in zip(p3, p4))
    for s, t in ((0, 1), (0, 2), (1, 2)):
        det = p1[s] * p2[t] - p1[t] * p2[s]
        if det == 0:
            continue
        a_num = q[s] * p2[t] - q[t] * p2[s]
        b_num = p1[s] * q[t] - p1[t] * q[s]
        if a_num % det or b_num % det:
            break
        alpha, beta = a_num // det, b_num // det
        if all(alpha * x + beta * y == z for x, y, z in zip(p1, p2, q)):
            return alpha, beta
        break
    raise NonIntegralRelation(
        f"no integral relation for {p3}+{p4} in terms of {p1}, {p2}",
        endpoints=[list(p1), list(p2)],
    )


def wall_relation(fan: CrepantFan, wall: Wall) -> tuple[int, int]:
    if not wall.compact:
        raise ValueError(f"wall {wall.endpoints} is on the boundary")
    u, v = wall.endpoints
    w3, w4 = wall.opposite
    return relation(fan.numerators(u), fan.numerators(v), fan.numerators(w3), fan.numerators(w4))


def recipe_marking(fan: CrepantFan, wall: Wall) -> int:
    """Character of the ratio monomial x^{u+} : x^{u-} cut out by a wall.

    u is the primitive invariant exponent orthogonal to both endpoints.
    """
    r = fan.r
    a, b, c = fan.action.weights
    g = primitive(cross(fan.numerators(wall.endpoints[0]), fan.numerators(wall.endpoints[1])))
    w = (g[0] * a + g[1] * b + g[2] * c) % r
    step = r // gcd(r, w)
    u = tuple(step * x for x in g)
    positive = tuple(max(x, 0) for x in u)
    return (positive[0] * a + positive[1] * b + positive[2] * c) % r


def _build_walls(points: list[tuple], triangles: list[tuple]) -> list[Wall]:
    walls = []
    for (u, v), sides in sorted(_edge_counts(triangles).items()):
        opposite = tuple(
            next(x for x in triangles[t] if x not in (u, v)) for t in sides
        )
        rel = relation(points[u], points[v], *(points[o] for o in opposite)) if len(sides) == 2 else None
        walls.append(Wall((u, v), tuple(sides), opposite, rel))
    return walls


def build_stars(points: list[tuple], triangles: list[tuple]) -> InteriorPointIndex:
    """Counterclockwise neighbour cycles of every interior point.

    Viewed from (1,1,1), det[rho, u, w] > 0 means u -> w runs counterclockwise
    around rho.
    """
    interior = tuple(i for i, p in enumerate(points) if 0 not in p)
    neighbours: dict[int, tuple[int, ...]] = {}
    for rho in interior:
        step: dict[int, int] = {}
        for tri in triangles:
            if rho not in tri:
                continue
            u, w = (x for x in tri if x != rho)
            if det3(points[rho], points[u], points[w]) < 0:
                u, w = w, u
            if u in step:
                raise OpenStar(f"star of point {rho} folds over at {u}", point=rho)
            step[u] = w
        if not step:
            raise OpenStar(f"point {rho} lies on no triangle", point=rho)
        start = min(step)
        cycle = [start]
        while True:
            nxt = step.get(cycle[-1])
            if nxt is None:
                raise OpenStar(f"star of point {rho} does not close", point=rho)
            if nxt == start:
                break
            if nxt in cycle:
                raise OpenStar(f"star of point {rho} is not a single cycle", point=rho)
            cycle.append(nxt)
        if len(cycle) != len(step) or len(cycle) < 3:
            raise OpenStar(f"star of point {rho} is not a single cycle", point=rho)
        neighbours[rho] = tuple(cycle)
    return InteriorPointIndex(interior, neighbours)


def stars(fan: CrepantFan) -> InteriorPointIndex:
    return fan.stars


def build_fan(raw: dict) -> CrepantFan:
    """Validate parsed fan data and index it in canonical point order."""
    action, issues = check_fan(raw)
    if issues:
        first = issues[0]
        raise ValidationError(f"{first.check}: {first.message}", check=first.check, **first.details)

    file_points = [tuple(p) for p in raw["points"]]
    order = _canonical_order(file_points, action.r)
    new_index = {old: new for new, old in enumerate(order)}
    points = [file_points[i] for i in order]
    triangles = sorted(tuple(sorted(new_index[i] for i in tri)) for tri in raw["triangles"])

    walls = _build_walls(points, triangles)
    index = build_stars(points, triangles)
    fan = CrepantFan(
        action=action,
        points=tuple(JuniorPoint(p) for p in points),
        triangles=tuple(triangles),
        walls=tuple(walls),
        stars=index,
        file_index=tuple(order),
    )
    logger.debug(
        "Loaded fan for %s: %d points, %d triangles, %d compact walls",
        action.label(), len(points), len(triangles), len(fan.compact_walls),
    )
    return fan


def load_fan(path: str | Path) -> CrepantFan:
    return build_fan(read_fan_json(path))
