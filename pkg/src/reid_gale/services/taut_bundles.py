"""Tautological line bundles T_chi as toric support functions, and their curve degrees.

T_chi = O(-sum psi_chi(rho) D_rho) with psi_chi(v) the minimum of <v, m> over
monomials x^m of weight chi. On each triangle the bundle is generated by one
monomial that attains the minimum on all three rays at once.
"""

import logging
from functools import lru_cache

from reid_gale.errors import InconsistentSupport, NonIntegralDegree, NotLocallyFree
from reid_gale.types.bundles import DegreeMatrix, SupportTable
from reid_gale.types.fan import CrepantFan
from reid_gale.types.group import CyclicAction
from reid_gale.types.matrices import ZMatrix
from reid_gale.types.report import Diagnostic, Severity
from reid_gale.utils.lattice import dot
from reid_gale.utils.parallel import parallel_map

logger = logging.getLogger(__name__)

Monomial = tuple[int, int, int]


@lru_cache(maxsize=1024)
def weight_monomials(action: CyclicAction, chi: int) -> tuple[Monomial, ...]:
    """All exponents in the box [0, r)^3 of weight chi, lexicographically."""
    r = action.r
    a, b, c = action.weights
    by_residue: dict[int, list[int]] = {}
    for m3 in range(r):
        by_residue.setdefault((m3 * c) % r, []).append(m3)
    found = []
    for m1 in range(r):
        for m2 in range(r):
            for m3 in by_residue.get((chi - m1 * a - m2 * b) % r, ()):
                found.append((m1, m2, m3))
    return tuple(found)


def local_generator(fan: CrepantFan, chi: int, triangle: tuple[int, int, int]) -> Monomial:
    """Monomial generating T_chi on the chart of a triangle."""
    chi %= fan.r
    if chi == 0:
        return (0, 0, 0)
    rays = [fan.numerators(i) for i in triangle]
    candidates = weight_monomials(fan.action, chi)
    lows = [min(dot(p, m) for m in candidates) for p in rays]
    for m in candidates:
        if all(dot(p, m) == low for p, low in zip(rays, lows)):
            return m
    raise NotLocallyFree(
        f"T_{chi} has no single generator on triangle {list(triangle)}",
        character=chi,
        triangle=list(triangle),
        minima=lows,
    )


def support_values(fan: CrepantFan, chi: int) -> tuple[tuple[Monomial, ...], tuple[int, ...]]:
    """Local generators per triangle and n_chi(rho) = r*psi_chi(v_rho) per point."""
    generators = tuple(local_generator(fan, chi, tri) for tri in fan.triangles)
    values: list[int | None] = [None] * len(fan.points)
    for tri, m in zip(fan.triangles, generators):
        for i in tri:
            n = dot(fan.numerators(i), m)
            if values[i] is None:
                values[i] = n
            elif values[i] != n:
                raise InconsistentSupport(
                    f"T_{chi} disagrees on point {i} across cones ({values[i]} vs {n})",
                    character=chi, point=i,
                )
    return generators, tuple(values)


def compute_support_table(fan: CrepantFan, threads: int = 1) -> SupportTable:
    results = parallel_map(lambda chi: support_values(fan, chi), range(fan.r), threads)
    return SupportTable(
        r=fan.r,
        generators=tuple(g for g, _ in results),
        values=tuple(v for _, v in results),
    )


def degree_matrix(fan: CrepantFan, supports: SupportTable) -> DegreeMatrix:
    """deg(T_chi|C) = alpha*psi(v1) + beta*psi(v2) - psi(v3) - psi(v4) per compact wall."""
    r = fan.r
    walls = fan.compact_walls
    characters = tuple(range(1, r))
    rows = []
    for wall in walls:
        u, v = wall.endpoints
        w3, w4 = wall.opposite
        alpha, beta = wall.relation
        row = []
        for chi in characters:
            n = supports.values[chi]
            numerator = alpha * n[u] + beta * n[v] - n[w3] - n[w4]
            if numerator % r:
                raise NonIntegralDegree(
                    f"degree of T_{chi} on wall {wall.endpoints} is {numerator}/{r}",
                    character=chi, wall=list(wall.endpoints),
                )
            row.append(numerator // r)
        rows.append(row)
    matrix = ZMatrix.from_rows(rows, len(characters))
    logger.debug("Degree matrix %dx%d for %s", matrix.rows, matrix.cols, fan.action.label())
    return DegreeMatrix(tuple(w.endpoints for w in walls), characters, matrix)


def degree_diagnostics(degrees: DegreeMatrix) -> list[Diagnostic]:
    diagnostics = []
    negative = [
        (w, chi, degrees.degree(w, chi))
        for w in degrees.walls for chi in degrees.characters
        if degrees.degree(w, chi) < 0
    ]
    if negative:
        logger.warning("%d negative tautological degrees", len(negative))
        diagnostics.append(Diagnostic(
            "negative-degree", Severity.WARNING,
            f"{len(negative)} tautological degrees are negative",
            {"entries": [{"wall": list(w), "character": c, "degree": d} for w, c, d in negative]},
        ))
    above_one = sum(1 for row in degrees.matrix.data for d in row if d > 1)
    if above_one:
        diagnostics.append(Diagnostic(
            "degree-above-one", Severity.INFO,
            f"{above_one} tautological degrees exceed one",
            {"count": above_one},
        ))
    return diagnostics
