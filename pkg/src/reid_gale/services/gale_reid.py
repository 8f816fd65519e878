"""Gale duality for Reid's recipe.

Builds the linearisation matrix L in the Reid basis, the kernel K dual to the
exceptional divisors under the Euler pairing, its transpose Kt, the column
sign trichotomy, point/segment markings and the segment-count cross-check.
"""

import logging
from typing import Sequence

from sympy import Matrix

from reid_gale.errors import (
    DimensionMismatch,
    NotABasis,
    NotAKernelBasis,
    NotUnimodular,
    RankMismatch,
)
from reid_gale.services.crepant_fan import recipe_marking
from reid_gale.services.exact_zmat import (
    gale_dual,
    kernel_basis,
    rank,
    same_column_lattice,
    solve_integral,
    verify_short_exact,
)
from reid_gale.types.bundles import DegreeMatrix
from reid_gale.types.fan import CrepantFan
from reid_gale.types.group import DimensionVector
from reid_gale.types.matrices import ZMatrix
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
from reid_gale.types.surfaces import EulerTable

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# NS lattice and kernels
# ---------------------------------------------------------------------------

def ns_and_raw_kernel(
    degrees: DegreeMatrix,
    v: DimensionVector,
    *,
    interior_count: int,
    divisor_count: int | None = None,
) -> tuple[int, ZMatrix, ZMatrix]:
    """NS as the column lattice of the degree matrix, plus a raw kernel basis.

    The kernel must have one column per compact exceptional surface and NS
    must have one generator per exceptional divisor.
    """
    if len(v) != len(degrees.characters) + 1:
        raise DimensionMismatch(
            "dimension vector does not match the characters",
            vertices=len(v), characters=len(degrees.characters) + 1,
        )
    ns_rank = rank(degrees.matrix)
    raw_kernel = kernel_basis(degrees.matrix)
    expected_ns = interior_count if divisor_count is None else divisor_count
    if raw_kernel.cols != interior_count or ns_rank != expected_ns:
        raise RankMismatch(
            f"kernel rank {raw_kernel.cols} and NS rank {ns_rank} do not match "
            f"{interior_count} compact surfaces and {expected_ns} divisors",
            kernel_rank=raw_kernel.cols, ns_rank=ns_rank,
            interior=interior_count, divisors=expected_ns,
        )
    logger.debug("NS rank %d, kernel rank %d", ns_rank, raw_kernel.cols)
    return ns_rank, degrees.matrix, raw_kernel


def lift_theta(column: Sequence[int], v: DimensionVector) -> ThetaVector:
    """Prepend theta_0 = -sum v_i theta_i so the vector lies in Theta."""
    theta0 = -sum(v[i + 1] * x for i, x in enumerate(column))
    if theta0 % v[0]:
        raise DimensionMismatch("theta_0 is not integral for this dimension vector", v0=v[0])
    return ThetaVector((theta0 // v[0], *column))


def pairing_matrix(raw_kernel: ZMatrix, euler: EulerTable, v: DimensionVector) -> ZMatrix:
    """P[rho][j] = sum_i theta_j[i] * X[rho][i] over all characters i."""
    thetas = [lift_theta(col, v) for col in raw_kernel.columns()]
    rows = [
        [sum(t * x for t, x in zip(theta.coefficients, euler.matrix.data[p])) for theta in thetas]
        for p in range(euler.matrix.rows)
    ]
    return ZMatrix.from_rows(rows, len(thetas))


def canonical_kernel(raw_kernel: ZMatrix, euler: EulerTable, v: DimensionVector) -> ZMatrix:
    """The kernel basis dual to the exceptional surfaces under the Euler pairing.

    Column j of the result pairs to 1 with E_j and to 0 with the others,
    where E_j is the j-th row of the Euler table.
    """
    if euler.matrix.rows != raw_kernel.cols:
        raise RankMismatch(
            f"{euler.matrix.rows} surfaces but {raw_kernel.cols} kernel columns",
            surfaces=euler.matrix.rows, kernel_rank=raw_kernel.cols,
        )
    if raw_kernel.cols == 0:
        return raw_kernel
    P = pairing_matrix(raw_kernel, euler, v)
    sym = Matrix(P.to_lists())
    det = int(sym.det())
    if abs(det) != 1:
        raise NotUnimodular(
            f"Euler pairing matrix has determinant {det}", det=det, P=P.to_lists(),
        )
    inverse = ZMatrix.from_rows([[int(x) for x in row] for row in (sym.adjugate() * det).tolist()])
    result = raw_kernel @ inverse
    check = pairing_matrix(result, euler, v)
    if check != ZMatrix.identity(result.cols):
        raise NotUnimodular("canonicalized kernel does not pair to the identity")
    return result


# ---------------------------------------------------------------------------
# Trichotomy and the Reid basis
# ---------------------------------------------------------------------------

def trichotomy(Kt: ZMatrix, labels: Sequence[int | str]) -> Trichotomy:
    """Classify every Kt column by the signs of its entries."""
    if len(labels) != Kt.cols:
        raise DimensionMismatch("one label per column required", labels=len(labels), cols=Kt.cols)
    columns = []
    for j, label in enumerate(labels):
        entries = {i: x for i, x in enumerate(Kt.column(j)) if x != 0}
        values = entries.values()
        if not entries:
            sign = SignClass.ZERO
        elif all(x > 0 for x in values):
            sign = SignClass.PLUS
        elif all(x < 0 for x in values):
            sign = SignClass.MINUS
        else:
            sign = SignClass.INCOHERENT
            logger.warning("Column %s of Kt is not sign-coherent: %s", label, entries)
        columns.append(ColumnClass(label, j, sign, entries))
    return Trichotomy(tuple(columns))


def trichotomy_diagnostics(tri: Trichotomy, toric: bool) -> list[Diagnostic]:
    diagnostics = []
    for c in tri.columns:
        if c.sign is SignClass.INCOHERENT:
            diagnostics.append(Diagnostic(
                "sign-incoherent", Severity.FAILURE,
                f"column {c.label} of Kt has entries of both signs",
                {"character": c.label, "entries": {str(k): x for k, x in c.entries.items()}},
            ))
        elif toric and c.sign is SignClass.PLUS and list(c.entries.values()) != [1]:
            diagnostics.append(Diagnostic(
                "plus-column-not-unit", Severity.FAILURE,
                f"positive column {c.label} is not a single entry 1",
                {"character": c.label, "entries": {str(k): x for k, x in c.entries.items()}},
            ))
    return diagnostics


def _plus_rows(tri: Trichotomy) -> dict[int, list]:
    """Kt row -> positive-column labels with a positive entry there."""
    rows: dict[int, list] = {}
    for c in tri.columns:
        if c.sign is SignClass.PLUS:
            for row, x in c.entries.items():
                if x > 0:
                    rows.setdefault(row, []).append(c.label)
    return rows


def reid_basis(
    Kt: ZMatrix, degrees: DegreeMatrix, tri: Trichotomy,
) -> tuple[tuple[int, ...], ZMatrix]:
    """Characters whose bundles form the Reid basis of NS, and L in that basis.

    The basis is every character outside case (+) plus, for each Kt row
    marked by two or more (+) characters, the smallest of them.
    """
    plus = set(tri.labels(SignClass.PLUS))
    extra = {min(labels) for labels in _plus_rows(tri).values() if len(labels) >= 2}
    basis = tuple(sorted((set(degrees.characters) - plus) | extra))

    deg = degrees.matrix
    B = deg.select_columns(degrees.characters.index(chi) for chi in basis)
    if rank(B) != len(basis) or not same_column_lattice(B, deg):
        raise NotABasis(
            f"degree columns of {list(basis)} are not a Z-basis of NS",
            basis=list(basis),
        )
    columns = []
    for chi in degrees.characters:
        x = solve_integral(B, degrees.column(chi))
        if x is None:
            raise NotABasis(f"T_{chi} is not an integral combination of the basis", character=chi)
        columns.append(x)
    L = ZMatrix.from_columns(columns, len(basis))
    logger.debug("Reid basis %s", list(basis))
    return basis, L


def marked_Kt_ordering(Kt: ZMatrix, tri: Trichotomy) -> tuple[list[int], list[int]]:
    """Row permutation sorting rows by their smallest marking (+) column.

    Returns (order, unmarked) where order[k] is the old index of new row k
    and unmarked lists rows without a positive (+) entry, placed last.
    """
    position = {c.label: c.column for c in tri.columns}
    marks = _plus_rows(tri)
    marked = sorted(marks, key=lambda row: (min(position[x] for x in marks[row]), row))
    unmarked = [row for row in range(Kt.rows) if row not in marks]
    return marked + unmarked, unmarked


# ---------------------------------------------------------------------------
# Markings and the segment count cross-check
# ---------------------------------------------------------------------------

def markings(fan: CrepantFan, degrees: DegreeMatrix, tri: Trichotomy) -> Markings:
    """Point markings from (+) columns, segment markings from ratio monomials.

    Rows of the classified Kt are the interior points in canonical order.
    """
    interior = fan.interior_points
    points = {
        interior[row]: tuple(sorted(labels))
        for row, labels in sorted(_plus_rows(tri).items())
    }
    plus = set(tri.labels(SignClass.PLUS))
    segments = {}
    degree_one = {}
    for wall in fan.compact_walls:
        segments[wall.endpoints] = recipe_marking(fan, wall)
        degree_one[wall.endpoints] = tuple(
            chi for chi in degrees.characters
            if chi not in plus and degrees.degree(wall.endpoints, chi) == 1
        )
    return Markings(points, segments, degree_one)


def cht_check(fan: CrepantFan, Kt: ZMatrix, tri: Trichotomy, marks: Markings) -> CHTCheck:
    """Compare |Kt[rho][i]| with N(i, rho) = max(0, n(i, rho) - 1).

    n(i, rho) counts compact walls marked i with rho as an endpoint. For (+)
    characters only entries in {0, 1} are required.
    """
    interior = fan.interior_points
    entries = []
    for c in tri.columns:
        chi = c.label
        marked = marks.segments_marked(chi)
        for row, rho in enumerate(interior):
            kt = Kt.data[row][c.column]
            if c.sign is SignClass.PLUS:
                entries.append(CHTEntry(chi, rho, kt, min(max(kt, 0), 1), kt in (0, 1)))
                continue
            touching = sum(1 for w in marked if rho in w)
            predicted = max(0, touching - 1)
            entries.append(CHTEntry(chi, rho, kt, predicted, kt <= 0 and -kt == predicted))
    check = CHTCheck(tuple(entries))
    if not check.passed:
        logger.warning("Segment count cross-check failed on %d entries", len(check.failures))
    return check


def case0_supports(tri: Trichotomy, degrees: DegreeMatrix) -> tuple[dict, list[Diagnostic]]:
    """Curves carrying each (0)-character.

    A support curve has deg(T_i|C) = 1 and degree 0 for every other
    character; the looser degree-one candidates are returned alongside.
    Only the support curve has to be unique.
    """
    supports = {}
    diagnostics = []
    for chi in tri.labels(SignClass.ZERO):
        candidates = [w for w in degrees.walls if degrees.degree(w, chi) == 1]
        exact = [
            w for w in candidates
            if all(degrees.degree(w, other) == 0 for other in degrees.characters if other != chi)
        ]
        supports[chi] = (tuple(exact), tuple(candidates))
        if len(exact) != 1:
            diagnostics.append(Diagnostic(
                "non-unique-case-0-support", Severity.FAILURE,
                f"character {chi} has {len(exact)} support curves and {len(candidates)} degree-one curves",
                {"character": chi, "supports": [list(w) for w in exact],
                 "candidates": [list(w) for w in candidates]},
            ))
    return supports, diagnostics


# ---------------------------------------------------------------------------
# Matrix mode
# ---------------------------------------------------------------------------

def matrix_mode(
    L: ZMatrix,
    v: DimensionVector | None = None,
    labels: Sequence[str] | None = None,
    K_user: ZMatrix | None = None,
) -> GaleReport:
    """Gale dual of a user-supplied linearisation matrix, without geometry."""
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(1, L.cols + 1))
    v = v or DimensionVector.ones(L.cols + 1)
    if len(labels) != L.cols or len(v) != L.cols + 1:
        raise DimensionMismatch(
            "labels and dimension vector must match the columns of L",
            cols=L.cols, labels=len(labels), vertices=len(v),
        )

    Kt_hnf = gale_dual(L)
    diagnostics = []
    if K_user is not None:
        if K_user.rows != L.cols:
            raise DimensionMismatch("K must have one row per column of L", K=K_user.shape, L=L.shape)
        if not (L @ K_user).is_zero() or rank(K_user) != K_user.cols \
                or not same_column_lattice(K_user, Kt_hnf.transpose()):
            raise NotAKernelBasis("supplied relations are not a basis of the kernel of L")
        K = K_user
    else:
        K = Kt_hnf.transpose()
        if K.cols:
            diagnostics.append(Diagnostic(
                "non-canonical-rows", Severity.WARNING,
                "Kt rows are in Hermite order; no divisor identification without geometry",
            ))
    Kt = K.transpose()
    if K.cols == 0:
        diagnostics.append(Diagnostic("kernel-trivial", Severity.INFO, "kernel trivial"))

    tri = trichotomy(Kt, labels)
    diagnostics.extend(trichotomy_diagnostics(tri, toric=False))
    exactness = verify_short_exact(K, L)
    if not exactness.passed:
        diagnostics.append(Diagnostic(
            "exactness-failed", Severity.FAILURE, "; ".join(exactness.failures),
        ))
    case0 = {c.label: tuple(L.column(c.column)) for c in tri.columns if c.sign is SignClass.ZERO}

    return GaleReport(
        mode="matrix",
        labels=labels,
        ns_rank=L.rows,
        L=L,
        K=K,
        Kt=Kt,
        kt_rows=tuple(f"relation {j + 1}" for j in range(Kt.rows)),
        thetas=tuple(lift_theta(col, v) for col in K.columns()),
        trichotomy=tri,
        exactness=exactness,
        case0=case0,
        diagnostics=tuple(diagnostics),
    )
