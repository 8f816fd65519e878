"""Type definitions for reid_gale."""

from reid_gale.types.matrices import ZMatrix, SNFDecomposition, ExactnessReport
from reid_gale.types.group import CyclicAction, JuniorPoint, DimensionVector
from reid_gale.types.fan import CrepantFan, Wall, InteriorPointIndex
from reid_gale.types.bundles import SupportTable, DegreeMatrix
from reid_gale.types.surfaces import ToricSurface, EulerTable
from reid_gale.types.report import (
    CHTCheck,
    CHTEntry,
    ColumnClass,
    Diagnostic,
    GaleReport,
    Markings,
    Severity,
    SignClass,
    ThetaVector,
    Trichotomy,
)

__all__ = [
    "ZMatrix",
    "SNFDecomposition",
    "ExactnessReport",
    "CyclicAction",
    "JuniorPoint",
    "DimensionVector",
    "CrepantFan",
    "Wall",
    "InteriorPointIndex",
    "SupportTable",
    "DegreeMatrix",
    "ToricSurface",
    "EulerTable",
    "CHTCheck",
    "CHTEntry",
    "ColumnClass",
    "Diagnostic",
    "GaleReport",
    "Markings",
    "Severity",
    "SignClass",
    "ThetaVector",
    "Trichotomy",
]
