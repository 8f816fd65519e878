"""End-to-end recipe: fan -> bundles -> surfaces -> Gale report."""

import logging
import time
from dataclasses import dataclass

from reid_gale.services.exact_zmat import verify_short_exact
from reid_gale.services.exc_surfaces import euler_table
from reid_gale.services.gale_reid import (
    canonical_kernel,
    case0_supports,
    cht_check,
    markings,
    ns_and_raw_kernel,
    lift_theta,
    marked_Kt_ordering,
    reid_basis,
    trichotomy,
    trichotomy_diagnostics,
)
from reid_gale.services.taut_bundles import (
    compute_support_table,
    degree_diagnostics,
    degree_matrix,
)
from reid_gale.types.bundles import DegreeMatrix, SupportTable
from reid_gale.types.fan import CrepantFan
from reid_gale.types.group import DimensionVector
from reid_gale.types.report import Diagnostic, GaleReport, Severity
from reid_gale.types.surfaces import EulerTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Analysis:
    """Report plus the intermediate tables behind it."""

    fan: CrepantFan
    supports: SupportTable
    degrees: DegreeMatrix
    euler: EulerTable
    report: GaleReport


def analyze_fan(fan: CrepantFan, threads: int = 1) -> Analysis:
    started = time.monotonic()
    diagnostics: list[Diagnostic] = []
    characters = tuple(range(1, fan.r))
    interior = fan.interior_points
    v = DimensionVector.ones(fan.r)

    supports = compute_support_table(fan, threads)
    degrees = degree_matrix(fan, supports)
    diagnostics.extend(degree_diagnostics(degrees))
    euler = euler_table(fan, degrees, threads)
    logger.debug("Bundles and surfaces done in %.2fs", time.monotonic() - started)

    ns_rank, _, raw_kernel = ns_and_raw_kernel(
        degrees, v, interior_count=len(interior), divisor_count=fan.divisor_count,
    )
    Kt_canonical = canonical_kernel(raw_kernel, euler, v).transpose()
    tri_canonical = trichotomy(Kt_canonical, characters)

    marks = markings(fan, degrees, tri_canonical)
    cht = cht_check(fan, Kt_canonical, tri_canonical, marks)
    basis, L = reid_basis(Kt_canonical, degrees, tri_canonical)

    order, unmarked = marked_Kt_ordering(Kt_canonical, tri_canonical)
    Kt = Kt_canonical.select_rows(order)
    K = Kt.transpose()
    tri = trichotomy(Kt, characters)
    diagnostics.extend(trichotomy_diagnostics(tri, toric=True))
    for row in unmarked:
        diagnostics.append(Diagnostic(
            "unmarked-divisor-row", Severity.FAILURE,
            f"no (+) character marks point {fan.point_label(interior[row])}",
            {"point": fan.point_label(interior[row])},
        ))

    case0, case0_diagnostics = case0_supports(tri, degrees)
    diagnostics.extend(case0_diagnostics)

    if not cht.passed:
        diagnostics.append(Diagnostic(
            "cht-mismatch", Severity.FAILURE,
            f"{len(cht.failures)} Kt entries disagree with the marked segment counts",
            {"failures": len(cht.failures)},
        ))

    exactness = verify_short_exact(K, L)
    if not exactness.passed:
        diagnostics.append(Diagnostic(
            "exactness-failed", Severity.FAILURE, "; ".join(exactness.failures),
        ))

    report = GaleReport(
        mode="analyze",
        labels=characters,
        ns_rank=ns_rank,
        L=L,
        K=K,
        Kt=Kt,
        kt_rows=tuple(fan.point_label(interior[row]) for row in order),
        thetas=tuple(lift_theta(col, v) for col in K.columns()),
        trichotomy=tri,
        exactness=exactness,
        group=fan.action,
        reid_basis=basis,
        markings=marks,
        cht_check=cht,
        case0=case0,
        diagnostics=tuple(diagnostics),
        point_labels=tuple(p.label() for p in fan.points),
    )
    logger.info(
        "Analyzed %s in %.2fs: %d surfaces, %d diagnostics",
        fan.action.label(), time.monotonic() - started, len(interior), len(diagnostics),
    )
    return Analysis(fan, supports, degrees, euler, report)
