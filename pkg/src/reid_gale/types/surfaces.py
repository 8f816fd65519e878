"""Compact exceptional surfaces and their Euler characteristic table."""

from dataclasses import dataclass

from reid_gale.types.matrices import ZMatrix


@dataclass(frozen=True)
class ToricSurface:
    """Smooth projective toric surface E_rho with its boundary cycle.

    Curve j is the wall (center, neighbours[j]); neighbours run
    counterclockwise.
    """

    center: int
    neighbours: tuple[int, ...]
    self_intersections: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.self_intersections)

    def intersection_matrix(self) -> list[list[int]]:
        k = self.k
        m = [[0] * k for _ in range(k)]
        for j in range(k):
            m[j][j] = self.self_intersections[j]
            m[j][(j + 1) % k] = 1
            m[(j + 1) % k][j] = 1
        return m


@dataclass(frozen=True)
class EulerTable:
    """X[rho][chi] = chi(E_rho, T_chi|E_rho), rows in interior point order."""

    points: tuple[int, ...]
    matrix: ZMatrix

    def value(self, point: int, chi: int) -> int:
        return self.matrix.data[self.points.index(point)][chi]
