"""Compact exceptional surfaces E_rho: intersection numbers and surface Riemann-Roch."""

import logging
from typing import Sequence

from sympy import Matrix, Rational

from reid_gale.errors import InconsistentDegrees, NonIntegralChi, OpenStar
from reid_gale.types.bundles import DegreeMatrix
from reid_gale.types.fan import CrepantFan
from reid_gale.types.matrices import ZMatrix
from reid_gale.types.surfaces import EulerTable, ToricSurface
from reid_gale.utils.lattice import det3
from reid_gale.utils.parallel import parallel_map

logger = logging.getLogger(__name__)


def surface(fan: CrepantFan, rho: int) -> ToricSurface:
    """Boundary cycle of E_rho with C_j^2 = -beta_j from the wall (rho, rho_j)."""
    if rho not in fan.stars.neighbours:
        raise OpenStar(f"point {rho} is not an interior point", point=rho)
    cycle = fan.stars.star(rho)
    k = len(cycle)
    squares = []
    for j, nj in enumerate(cycle):
        wall = fan.wall(rho, nj)
        expected = {cycle[j - 1], cycle[(j + 1) % k]}
        if set(wall.opposite) != expected:
            raise OpenStar(
                f"wall ({rho},{nj}) does not sit between its star neighbours",
                point=rho, wall=[rho, nj],
            )
        squares.append(-wall.coefficient_of(nj))
    return ToricSurface(rho, cycle, tuple(squares))


def solve_class(surf: ToricSurface, degrees: Sequence[int]) -> list[Rational]:
    """A rational class lambda with (C.C) lambda = d; free parameters set to zero."""
    if len(degrees) != surf.k:
        raise InconsistentDegrees(
            f"expected {surf.k} degrees, got {len(degrees)}", point=surf.center,
        )
    system = Matrix(surf.intersection_matrix())
    try:
        solution, params = system.gauss_jordan_solve(Matrix([int(d) for d in degrees]))
    except ValueError:
        raise InconsistentDegrees(
            f"degrees {list(degrees)} are not the degrees of a class on E_{surf.center}",
            point=surf.center, degrees=list(degrees),
        ) from None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    return [Rational(x) for x in solution]


def intersection_kernel(surf: ToricSurface) -> list[list[Rational]]:
    return [[Rational(x) for x in v] for v in Matrix(surf.intersection_matrix()).nullspace()]


def euler_char(surf: ToricSurface, degrees: Sequence[int]) -> int:
    """chi(E, L) = 1 + (L.L - L.K)/2 with L.L = lambda.d and L.K = -sum(d)."""
    lam = solve_class(surf, degrees)
    self_int = sum((x * d for x, d in zip(lam, degrees)), Rational(0))
    value = 1 + (self_int + sum(degrees)) / Rational(2)
    if not value.is_integer:
        raise NonIntegralChi(
            f"Riemann-Roch gives {value} on E_{surf.center}",
            point=surf.center, degrees=list(degrees),
        )
    return int(value)


def projected_self_intersections(fan: CrepantFan, rho: int) -> tuple[int, ...]:
    """Self-intersections recomputed from the 2D fan of E_rho.

    Neighbours are written in the basis (rho, n_0, n_1) of N and projected
    along rho; the cyclic relation w_{j-1} + w_{j+1} = k_j w_j gives -k_j.
    """
    cycle = fan.stars.star(rho)
    p_rho = fan.numerators(rho)
    b1, b2 = fan.numerators(cycle[0]), fan.numerators(cycle[1])
    base = det3(p_rho, b1, b2)

    def project(p):
        y, z = det3(p_rho, p, b2), det3(p_rho, b1, p)
        if y % base or z % base:
            raise OpenStar(f"neighbour {p} of point {rho} is not in the lattice", point=rho)
        return (y // base, z // base)

    w = [project(fan.numerators(n)) for n in cycle]
    k = len(w)
    squares = []
    for j in range(k):
        prev, cur, nxt = w[j - 1], w[j], w[(j + 1) % k]
        total = (prev[0] + nxt[0], prev[1] + nxt[1])
        unit = cur[0] * nxt[1] - cur[1] * nxt[0]
        kj = (total[0] * nxt[1] - total[1] * nxt[0]) // unit
        if (kj * cur[0], kj * cur[1]) != total:
            raise OpenStar(f"projected fan of point {rho} is not smooth", point=rho)
        squares.append(-kj)
    return tuple(squares)


def restriction_degrees(fan: CrepantFan, degrees: DegreeMatrix, surf: ToricSurface, chi: int) -> list[int]:
    return [degrees.degree((surf.center, n), chi) for n in surf.neighbours]


def euler_table(fan: CrepantFan, degrees: DegreeMatrix, threads: int = 1) -> EulerTable:
    """X[rho][chi] = chi(E_rho, T_chi|E_rho) for interior rho and every character."""
    interior = fan.interior_points

    def row(rho: int) -> list[int]:
        surf = surface(fan, rho)
        return [
            euler_char(surf, restriction_degrees(fan, degrees, surf, chi))
            for chi in range(fan.r)
        ]

    rows = parallel_map(row, interior, threads)
    logger.debug("Euler table %dx%d", len(rows), fan.r)
    return EulerTable(tuple(interior), ZMatrix.from_rows(rows, fan.r))
