"""Cyclic group action types."""

from dataclasses import dataclass


@dataclass(frozen=True)
class CyclicAction:
    """The group 1/r(a,b,c) inside SL(3)."""

    r: int
    weights: tuple[int, int, int]

    def label(self) -> str:
        a, b, c = self.weights
        return f"1/{self.r}({a},{b},{c})"

    @property
    def characters(self) -> range:
        return range(self.r)

    def to_dict(self) -> dict:
        return {"r": self.r, "weights": list(self.weights)}


@dataclass(frozen=True, order=True)
class JuniorPoint:
    """Lattice point of the junior simplex, stored as numerators at height r."""

    numerators: tuple[int, int, int]

    @property
    def boundary(self) -> bool:
        return 0 in self.numerators

    @property
    def interior(self) -> bool:
        return not self.boundary

    @property
    def is_corner(self) -> bool:
        return self.numerators.count(0) == 2

    def label(self) -> str:
        return ",".join(str(p) for p in self.numerators)


@dataclass(frozen=True)
class DimensionVector:
    """Dimension v_i of each vertex; v[0] belongs to the trivial character."""

    values: tuple[int, ...]

    @classmethod
    def ones(cls, n_vertices: int) -> "DimensionVector":
        return cls((1,) * n_vertices)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)
