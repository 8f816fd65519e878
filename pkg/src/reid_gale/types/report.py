"""Report types: trichotomy, markings, cross-check and the Gale report."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from reid_gale.types.group import CyclicAction
from reid_gale.types.matrices import ExactnessReport, ZMatrix


class Severity(str, Enum):
    INFO = "info"
    WARNING = "warning"
    FAILURE = "failure"


class SignClass(str, Enum):
    PLUS = "plus"
    ZERO = "zero"
    MINUS = "minus"
    INCOHERENT = "incoherent"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    severity: Severity
    message: str
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "severity": self.severity.value,
            "message": self.message,
            "details": self.details,
        }


@dataclass(frozen=True)
class ThetaVector:
    """Full stability coefficients, theta[0] included."""

    coefficients: tuple[int, ...]

    def weighted_sum(self, v: tuple[int, ...]) -> int:
        return sum(vi * ti for vi, ti in zip(v, self.coefficients))


@dataclass(frozen=True)
class ColumnClass:
    """Sign class of one Kt column; `entries` maps row -> nonzero entry."""

    label: int | str
    column: int
    sign: SignClass
    entries: dict[int, int] = field(default_factory=dict)

    @property
    def multiplicities(self) -> dict[int, int]:
        return {row: abs(x) for row, x in self.entries.items()}


@dataclass(frozen=True)
class Trichotomy:
    columns: tuple[ColumnClass, ...]

    def labels(self, sign: SignClass) -> list[int | str]:
        return [c.label for c in self.columns if c.sign is sign]

    def of(self, label: int | str) -> ColumnClass:
        for c in self.columns:
            if c.label == label:
                return c
        raise KeyError(label)

    @property
    def sign_coherent(self) -> bool:
        return all(c.sign is not SignClass.INCOHERENT for c in self.columns)


@dataclass(frozen=True)
class Markings:
    """Characters attached to interior points and compact walls."""

    points: dict[int, tuple[int, ...]]
    segments: dict[tuple[int, int], int]
    degree_one: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def segments_marked(self, chi: int) -> list[tuple[int, int]]:
        return [w for w, c in self.segments.items() if c == chi]


@dataclass(frozen=True)
class CHTEntry:
    character: int
    point: int
    kt_entry: int
    predicted: int
    passed: bool


@dataclass(frozen=True)
class CHTCheck:
    entries: tuple[CHTEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[CHTEntry]:
        return [e for e in self.entries if not e.passed]


@dataclass(frozen=True)
class GaleReport:
    """End product of both pipelines. Kt rows are described by `kt_rows`."""

    mode: str
    labels: tuple[int | str, ...]
    ns_rank: int
    L: ZMatrix
    K: ZMatrix
    Kt: ZMatrix
    kt_rows: tuple[str, ...]
    thetas: tuple[ThetaVector, ...]
    trichotomy: Trichotomy
    exactness: ExactnessReport
    group: CyclicAction | None = None
    reid_basis: tuple[int, ...] | None = None
    markings: Markings | None = None
    cht_check: CHTCheck | None = None
    case0: dict[int | str, tuple] = field(default_factory=dict)
    diagnostics: tuple[Diagnostic, ...] = ()
    point_labels: tuple[str, ...] = ()

    @property
    def Lt(self) -> ZMatrix:
        return self.L.transpose()

    @property
    def sign_coherent(self) -> bool:
        return self.trichotomy.sign_coherent

    @property
    def failures(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity is Severity.FAILURE]
