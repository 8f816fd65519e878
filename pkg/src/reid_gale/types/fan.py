"""Crepant fan types: triangulated junior simplex, walls and stars."""

from dataclasses import dataclass, field

from reid_gale.types.group import CyclicAction, JuniorPoint


@dataclass(frozen=True)
class Wall:
    """An edge of the triangulation.

    `endpoints` is a sorted pair of point indices. Interior walls have two
    sides, two opposite vertices and the relation p3 + p4 = alpha*p1 + beta*p2.
    """

    endpoints: tuple[int, int]
    sides: tuple[int, ...]
    opposite: tuple[int, ...]
    relation: tuple[int, int] | None = None

    @property
    def compact(self) -> bool:
        return len(self.sides) == 2

    def coefficient_of(self, point: int) -> int:
        """Relation coefficient attached to one endpoint."""
        if self.relation is None:
            raise ValueError(f"wall {self.endpoints} has no relation")
        if point == self.endpoints[0]:
            return self.relation[0]
        if point == self.endpoints[1]:
            return self.relation[1]
        raise ValueError(f"point {point} is not an endpoint of wall {self.endpoints}")

    def other(self, point: int) -> int:
        return self.endpoints[1] if point == self.endpoints[0] else self.endpoints[0]


@dataclass(frozen=True)
class InteriorPointIndex:
    """Interior points with their neighbours in counterclockwise order."""

    points: tuple[int, ...]
    neighbours: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def star(self, point: int) -> tuple[int, ...]:
        return self.neighbours[point]


@dataclass(frozen=True)
class CrepantFan:
    """A validated unimodular triangulation of the junior simplex.

    Points are held in canonical order: corners e1, e2, e3 first, then the
    remaining points lexicographically. `file_index[i]` is the position of
    canonical point i in the source file.
    """

    action: CyclicAction
    points: tuple[JuniorPoint, ...]
    triangles: tuple[tuple[int, int, int], ...]
    walls: tuple[Wall, ...]
    stars: InteriorPointIndex
    file_index: tuple[int, ...] = ()

    @property
    def r(self) -> int:
        return self.action.r

    @property
    def interior_points(self) -> tuple[int, ...]:
        return self.stars.points

    @property
    def compact_walls(self) -> tuple[Wall, ...]:
        return tuple(w for w in self.walls if w.compact)

    @property
    def divisor_count(self) -> int:
        """Exceptional prime divisors, compact or not."""
        return sum(1 for p in self.points if not p.is_corner)

    def numerators(self, index: int) -> tuple[int, int, int]:
        return self.points[index].numerators

    def wall(self, u: int, v: int) -> Wall:
        key = (min(u, v), max(u, v))
        for w in self.walls:
            if w.endpoints == key:
                return w
        raise KeyError(key)

    def point_label(self, index: int) -> str:
        return self.points[index].label()
