"""Tests for reid_gale.services.gale_reid and the end-to-end pipeline."""

import numpy as np
import pytest

from reid_gale.errors import (
    DimensionMismatch,
    NotAKernelBasis,
    NotSurjective,
    NotUnimodular,
    RankMismatch,
)
from reid_gale.services.exact_zmat import row_lattice, verify_short_exact
from reid_gale.services.gale_reid import (
    canonical_kernel,
    case0_supports,
    lift_theta,
    matrix_mode,
    ns_and_raw_kernel,
    marked_Kt_ordering,
    trichotomy,
    trichotomy_diagnostics,
)
from reid_gale.services.matrix_io import read_matrix
from reid_gale.services.pipeline import analyze_fan
from reid_gale.types.bundles import DegreeMatrix
from reid_gale.types.group import DimensionVector
from reid_gale.types.matrices import ZMatrix
from reid_gale.types.report import Severity, SignClass
from reid_gale.types.surfaces import EulerTable

BENTO_LABELS = ["0-", "1", "2+", "2-", "4+", "4-", "5", "6+", "6-", "8+", "8-", "9", "10+", "10-"]
BENTO_V = DimensionVector((1, 1, 2, 1, 1, 1, 1, 2, 1, 1, 1, 1, 2, 1, 1))


def Z(rows):
    return ZMatrix.from_rows(rows)


def _random_unimodular(rng, n: int, steps: int = 15) -> ZMatrix:
    A = ZMatrix.identity(n).to_array()
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        A[i, :] = A[i, :] + int(rng.integers(-1, 2)) * A[j, :]
    if rng.integers(0, 2):
        A[0, :] = -A[0, :]
    return ZMatrix.from_array(A)


# ---------------------------------------------------------------------------
# 1. 1/3(1,1,1): the smallest complete run
# ---------------------------------------------------------------------------

class TestOneThird:
    @pytest.fixture
    def analysis(self, fan_1_3):
        return analyze_fan(fan_1_3)

    def test_matrices(self, analysis):
        report = analysis.report
        assert report.L == Z([[1, 2]])
        assert report.Kt == Z([[-2, 1]])
        assert report.K == Z([[-2], [1]])
        assert report.reid_basis == (1,)
        assert report.ns_rank == 1
        assert report.kt_rows == ("1,1,1",)

    def test_theta(self, analysis):
        theta = analysis.report.thetas[0]
        assert theta.coefficients == (1, -2, 1)
        assert theta.weighted_sum((1, 1, 1)) == 0

    def test_trichotomy_and_markings(self, analysis):
        report = analysis.report
        assert report.trichotomy.labels(SignClass.MINUS) == [1]
        assert report.trichotomy.labels(SignClass.PLUS) == [2]
        assert report.markings.points == {3: (2,)}
        assert set(report.markings.segments.values()) == {1}

    def test_checks_pass(self, analysis):
        report = analysis.report
        assert report.exactness.passed
        assert report.cht_check.passed
        assert report.failures == []
        assert [d.kind for d in report.diagnostics] == ["degree-above-one"]


# ---------------------------------------------------------------------------
# 2. 1/19(1,3,15) against the published matrices
# ---------------------------------------------------------------------------

class TestOneNineteen:
    def test_golden_pair_is_exact(self, golden_1_19):
        L, Kt = golden_1_19
        assert verify_short_exact(Kt.transpose(), L).passed

    def test_reid_basis(self, analysis_1_19):
        assert analysis_1_19.report.reid_basis == (1, 2, 3, 7, 8, 9, 11, 12, 15)

    def test_L(self, analysis_1_19, golden_1_19):
        assert analysis_1_19.report.L == golden_1_19[0]

    def test_Kt(self, analysis_1_19, golden_1_19):
        assert analysis_1_19.report.Kt == golden_1_19[1]

    def test_row_labels(self, analysis_1_19):
        assert analysis_1_19.report.kt_rows == (
            "14,4,1", "9,8,2", "4,12,3", "8,5,6", "3,9,7",
            "2,6,11", "13,1,5", "7,2,10", "1,3,15",
        )

    def test_trichotomy(self, analysis_1_19):
        tri = analysis_1_19.report.trichotomy
        assert tri.sign_coherent
        assert tri.labels(SignClass.PLUS) == [4, 5, 6, 8, 10, 13, 14, 16, 17, 18]
        assert tri.labels(SignClass.ZERO) == [9]
        assert tri.labels(SignClass.MINUS) == [1, 2, 3, 7, 11, 12, 15]

    def test_point_g_carries_two_markings(self, analysis_1_19):
        assert analysis_1_19.report.markings.points[8] == (8, 13)

    def test_three_segments_marked_3_meet_the_plane(self, analysis_1_19):
        marks = analysis_1_19.report.markings
        touching = [w for w in marks.segments_marked(3) if 6 in w]
        assert sorted(touching) == [(1, 6), (5, 6), (6, 9)]
        assert analysis_1_19.report.Kt.data[2][2] == -2

    def test_case0_support_of_9_is_unique(self, analysis_1_19):
        exact, candidates = analysis_1_19.report.case0[9]
        assert exact == ((5, 9),)
        assert sorted(candidates) == [(1, 5), (1, 9), (5, 9)]

    def test_cross_checks(self, analysis_1_19):
        report = analysis_1_19.report
        assert report.exactness.passed
        assert report.cht_check.passed
        assert report.failures == []

    def test_euler_pairing_is_dual(self, analysis_1_19):
        """Canonical kernel column j pairs to 1 with its own surface, 0 elsewhere."""
        report = analysis_1_19.report
        euler = analysis_1_19.euler
        labels = [analysis_1_19.fan.point_label(p) for p in euler.points]
        for j, theta in enumerate(report.thetas):
            for i, label in enumerate(labels):
                pairing = sum(t * x for t, x in zip(theta.coefficients, euler.matrix.data[i]))
                assert pairing == int(label == report.kt_rows[j])

    @pytest.mark.parametrize("seed", range(50))
    def test_canonical_kernel_ignores_raw_basis(self, analysis_1_19, seed):
        rng = np.random.default_rng(seed)
        v = DimensionVector.ones(19)
        _, _, raw = ns_and_raw_kernel(
            analysis_1_19.degrees, v, interior_count=9, divisor_count=9,
        )
        expected = canonical_kernel(raw, analysis_1_19.euler, v)
        U = _random_unimodular(rng, raw.cols)
        assert canonical_kernel(raw @ U, analysis_1_19.euler, v) == expected

    def test_rank_mismatch(self, analysis_1_19):
        with pytest.raises(RankMismatch):
            ns_and_raw_kernel(
                analysis_1_19.degrees, DimensionVector.ones(19), interior_count=8,
            )


# ---------------------------------------------------------------------------
# 3. Building blocks
# ---------------------------------------------------------------------------

class TestBuildingBlocks:
    def test_lift_theta(self):
        assert lift_theta((-2, 1), DimensionVector.ones(3)).coefficients == (1, -2, 1)
        assert lift_theta((1, 1), DimensionVector((2, 1, 1))).coefficients == (-1, 1, 1)
        with pytest.raises(DimensionMismatch):
            lift_theta((1, 0), DimensionVector((2, 1, 1)))

    def test_not_unimodular(self):
        euler = EulerTable((3,), Z([[1, 3, 8]]))
        with pytest.raises(NotUnimodular) as exc:
            canonical_kernel(Z([[2], [-1]]), euler, DimensionVector.ones(3))
        assert exc.value.details["det"] == -3

    def test_trichotomy_negative_control(self):
        tri = trichotomy(Z([[1, 0, -1], [-1, 0, -2]]), (1, 2, 3))
        assert tri.of(1).sign is SignClass.INCOHERENT
        assert tri.of(2).sign is SignClass.ZERO
        assert tri.of(3).sign is SignClass.MINUS
        assert tri.of(3).multiplicities == {0: 1, 1: 2}
        assert not tri.sign_coherent
        diagnostics = trichotomy_diagnostics(tri, toric=True)
        assert [d.kind for d in diagnostics] == ["sign-incoherent"]
        assert diagnostics[0].severity is Severity.FAILURE

    def test_plus_column_must_be_unit_in_toric_case(self):
        tri = trichotomy(Z([[2], [0]]), (1,))
        assert [d.kind for d in trichotomy_diagnostics(tri, toric=True)] == ["plus-column-not-unit"]
        assert trichotomy_diagnostics(tri, toric=False) == []

    def test_unmarked_row_goes_last(self):
        Kt = Z([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
        tri = trichotomy(Kt, (1, 2, 3))
        order, unmarked = marked_Kt_ordering(Kt, tri)
        assert order == [1, 2, 0]
        assert unmarked == [0]

    def test_case0_support(self):
        degrees = DegreeMatrix(((0, 1), (1, 2)), (1, 2), Z([[1, 0], [1, 1]]))
        tri = trichotomy(Z([[0, -1]]), (1, 2))
        supports, diagnostics = case0_supports(tri, degrees)
        assert supports == {1: (((0, 1),), ((0, 1), (1, 2)))}
        assert diagnostics == []

    def test_case0_support_missing(self):
        degrees = DegreeMatrix(((0, 1), (1, 2)), (1, 2), Z([[1, 1], [1, 1]]))
        tri = trichotomy(Z([[0, -1]]), (1, 2))
        supports, diagnostics = case0_supports(tri, degrees)
        assert supports == {1: ((), ((0, 1), (1, 2)))}
        assert [d.kind for d in diagnostics] == ["non-unique-case-0-support"]
        assert diagnostics[0].severity is Severity.FAILURE

    def test_case0_unique(self):
        degrees = DegreeMatrix(((0, 1), (1, 2)), (1, 2), Z([[1, 0], [0, 1]]))
        tri = trichotomy(Z([[0, -1]]), (1, 2))
        supports, diagnostics = case0_supports(tri, degrees)
        assert supports[1] == (((0, 1),), ((0, 1),))
        assert diagnostics == []


# ---------------------------------------------------------------------------
# 4. Matrix mode
# ---------------------------------------------------------------------------

class TestMatrixMode:
    def test_bento_with_relations(self, fixtures_dir):
        L = read_matrix(fixtures_dir / "bento_L.csv")
        K = read_matrix(fixtures_dir / "bento_K.csv")
        report = matrix_mode(L, BENTO_V, BENTO_LABELS, K)
        assert report.Kt == K.transpose()
        assert report.sign_coherent
        assert report.exactness.passed
        assert report.trichotomy.labels(SignClass.ZERO) == ["1", "4-", "10+", "10-"]
        assert report.case0["1"] == (1, 0, 0, 0, 0, 0, 0, 0, 0)
        assert report.failures == []
        for theta in report.thetas:
            assert theta.weighted_sum(BENTO_V.values) == 0

    def test_bento_signs(self, fixtures_dir):
        L = read_matrix(fixtures_dir / "bento_L.csv")
        K = read_matrix(fixtures_dir / "bento_K.csv")
        tri = matrix_mode(L, BENTO_V, BENTO_LABELS, K).trichotomy
        assert tri.labels(SignClass.PLUS) == ["0-", "5", "6+", "6-", "8+"]
        assert tri.labels(SignClass.MINUS) == ["2+", "2-", "4+", "8-", "9"]

    def test_longhex(self, fixtures_dir):
        L = read_matrix(fixtures_dir / "longhex_L.csv")
        K = read_matrix(fixtures_dir / "longhex_K.json")
        report = matrix_mode(L, K_user=K)
        assert report.Kt == Z([
            [0, 1, -1, 0, 1, -1, 0, -1, 0],
            [0, 1, 0, -1, 0, 0, 0, 0, -1],
        ])
        assert report.labels == tuple(str(i) for i in range(1, 10))
        assert report.kt_rows == ("relation 1", "relation 2")
        assert report.exactness.passed

    def test_hermite_rows_without_relations(self, fixtures_dir):
        L = read_matrix(fixtures_dir / "longhex_L.csv")
        K = read_matrix(fixtures_dir / "longhex_K.json")
        report = matrix_mode(L)
        assert row_lattice(report.Kt) == row_lattice(K.transpose())
        assert [d.kind for d in report.diagnostics][0] == "non-canonical-rows"

    def test_identity_has_trivial_kernel(self, fixtures_dir):
        report = matrix_mode(read_matrix(fixtures_dir / "identity_L.csv"))
        assert report.Kt.shape == (0, 3)
        assert report.K.shape == (3, 0)
        assert report.exactness.passed
        assert [d.kind for d in report.diagnostics] == ["kernel-trivial"]
        assert report.trichotomy.labels(SignClass.ZERO) == ["1", "2", "3"]
        assert report.case0["2"] == (0, 1, 0)

    def test_single_relation_is_coherent(self):
        report = matrix_mode(Z([[1, 1, 0], [0, 1, 1]]))
        assert report.Kt == Z([[1, -1, 1]])
        assert report.sign_coherent
        assert report.trichotomy.labels(SignClass.PLUS) == ["1", "3"]

    def test_mixed_signs_fail(self):
        K = Z([[1, 0], [-1, 1], [0, -1]])
        report = matrix_mode(Z([[1, 1, 1]]), K_user=K)
        assert report.trichotomy.labels(SignClass.INCOHERENT) == ["2"]
        assert not report.sign_coherent
        assert [d.kind for d in report.failures] == ["sign-incoherent"]

    def test_not_surjective(self):
        with pytest.raises(NotSurjective):
            matrix_mode(Z([[2, 0], [0, 1]]))

    def test_not_a_kernel_basis(self, fixtures_dir):
        L = read_matrix(fixtures_dir / "longhex_L.csv")
        K = read_matrix(fixtures_dir / "longhex_K.json")
        doubled = ZMatrix.from_rows([[2 * x for x in row] for row in K.data])
        with pytest.raises(NotAKernelBasis):
            matrix_mode(L, K_user=doubled)

    def test_labels_must_match(self):
        with pytest.raises(DimensionMismatch):
            matrix_mode(Z([[1, 2]]), labels=["a"])

    def test_transpose_duality(self, fixtures_dir):
        L = read_matrix(fixtures_dir / "bento_L.csv")
        report = matrix_mode(L, BENTO_V, BENTO_LABELS)
        assert report.Lt == report.L.transpose()
        assert report.Kt == report.K.transpose()


# ---------------------------------------------------------------------------
# 5. 1/6(1,1,4): non-isolated, one junior point on the boundary
# ---------------------------------------------------------------------------

class TestOneSix:
    """Canonical indices: corners 0-2, (1,1,4) = 3, (2,2,2) = 4, (3,3,0) = 5."""

    @pytest.fixture
    def analysis(self, fan_1_6):
        return analyze_fan(fan_1_6)

    @pytest.mark.parametrize("wall,expected", [
        ((2, 3), (1, 2, 3, 4, 5)),
        ((0, 3), (0, 0, 0, 1, 1)),
        ((1, 3), (0, 0, 0, 1, 1)),
        ((0, 4), (0, 1, 1, 0, 0)),
        ((1, 4), (0, 1, 1, 0, 0)),
        ((3, 4), (1, 2, 3, 0, 1)),
        ((4, 5), (1, 0, 1, 0, 1)),
    ])
    def test_degrees(self, analysis, wall, expected):
        assert analysis.degrees.row(wall) == expected

    def test_euler_rows(self, analysis):
        assert analysis.euler.points == (3, 4)
        assert analysis.euler.matrix.to_lists() == [[1, 2, 3, 4, 6, 8], [1, 2, 4, 6, 1, 2]]

    def test_boundary_point_counts_in_ns(self, analysis):
        report = analysis.report
        assert report.ns_rank == 3
        assert report.reid_basis == (1, 2, 4)
        assert report.L.to_lists() == [[1, 0, 1, 0, 1], [0, 1, 1, 0, 0], [0, 0, 0, 1, 1]]

    def test_kt(self, analysis):
        report = analysis.report
        assert report.kt_rows == ("2,2,2", "1,1,4")
        assert report.Kt.to_lists() == [[-1, -1, 1, 0, 0], [-1, 0, 0, -1, 1]]

    def test_trichotomy_and_checks(self, analysis):
        report = analysis.report
        tri = report.trichotomy
        assert tri.labels(SignClass.PLUS) == [3, 5]
        assert tri.labels(SignClass.ZERO) == []
        assert tri.labels(SignClass.MINUS) == [1, 2, 4]
        assert report.exactness.passed
        assert report.cht_check.passed
        assert report.failures == []

    def test_segment_markings(self, analysis):
        marks = analysis.report.markings
        assert sorted(marks.segments_marked(1)) == [(2, 3), (3, 4), (4, 5)]
        assert sorted(marks.segments_marked(2)) == [(0, 4), (1, 4)]
        assert sorted(marks.segments_marked(4)) == [(0, 3), (1, 3)]
