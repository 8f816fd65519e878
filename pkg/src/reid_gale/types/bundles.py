"""Tautological bundle data: support functions and curve degrees."""

from dataclasses import dataclass, field

from reid_gale.types.matrices import ZMatrix


@dataclass(frozen=True)
class SupportTable:
    """Per-character local generators and support values.

    generators[chi][t] is the monomial exponent generating T_chi on triangle t;
    values[chi][p] is n_chi(p) = r * psi_chi(v_p).
    """

    r: int
    generators: tuple[tuple[tuple[int, int, int], ...], ...]
    values: tuple[tuple[int, ...], ...]

    def value(self, chi: int, point: int) -> int:
        return self.values[chi][point]


@dataclass(frozen=True)
class DegreeMatrix:
    """deg(T_chi|C) with rows = compact walls, columns = characters 1..r-1."""

    walls: tuple[tuple[int, int], ...]
    characters: tuple[int, ...]
    matrix: ZMatrix
    _wall_rows: dict[tuple[int, int], int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._wall_rows.update({w: i for i, w in enumerate(self.walls)})

    def degree(self, wall: tuple[int, int], chi: int) -> int:
        if chi == 0:
            return 0
        return self.matrix.data[self._wall_rows[(min(wall), max(wall))]][self.characters.index(chi)]

    def column(self, chi: int) -> tuple[int, ...]:
        if chi == 0:
            return (0,) * len(self.walls)
        return self.matrix.column(self.characters.index(chi))

    def row(self, wall: tuple[int, int]) -> tuple[int, ...]:
        return self.matrix.row(self._wall_rows[(min(wall), max(wall))])
