"""Exact integer matrix algebra: Hermite and Smith normal forms, kernels, Gale duals.

All row and column operations run on numpy object arrays so entries stay
arbitrary precision Python ints.
"""

import logging

import numpy as np

from reid_gale.errors import DimensionMismatch, NotSurjective
from reid_gale.types.matrices import ExactnessReport, SNFDecomposition, ZMatrix

logger = logging.getLogger(__name__)


def _identity(n: int) -> np.ndarray:
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1
    return eye


def _swap_rows(A: np.ndarray, i: int, j: int) -> None:
    if i != j:
        A[[i, j], :] = A[[j, i], :]


def _swap_cols(A: np.ndarray, i: int, j: int) -> None:
    if i != j:
        A[:, [i, j]] = A[:, [j, i]]


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def hermite_normal_form(M: ZMatrix) -> tuple[ZMatrix, ZMatrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with H = U·M, U unimodular, H in row echelon form with
    positive pivots and entries above each pivot p reduced into [0, p).
    """
    m, n = M.shape
    A = M.to_array()
    U = _identity(m)
    row = 0
    for col in range(n):
        if row == m:
            break
        while True:
            nonzero = [i for i in range(row, m) if A[i, col] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: (abs(A[i, col]), i))
            _swap_rows(A, row, piv)
            _swap_rows(U, row, piv)
            done = True
            for i in range(row + 1, m):
                if A[i, col] != 0:
                    q = A[i, col] // A[row, col]
                    A[i, :] = A[i, :] - q * A[row, :]
                    U[i, :] = U[i, :] - q * U[row, :]
                    if A[i, col] != 0:
                        done = False
            if done:
                break
        if A[row, col] == 0:
            continue
        if A[row, col] < 0:
            A[row, :] = -A[row, :]
            U[row, :] = -U[row, :]
        for i in range(row):
            q = A[i, col] // A[row, col]
            if q:
                A[i, :] = A[i, :] - q * A[row, :]
                U[i, :] = U[i, :] - q * U[row, :]
        row += 1
    return ZMatrix.from_array(A), ZMatrix.from_array(U)


def row_lattice(M: ZMatrix) -> ZMatrix:
    """Canonical basis of the row lattice: the nonzero rows of the HNF."""
    H, _ = hermite_normal_form(M)
    return H.select_rows(i for i in range(H.rows) if any(H.data[i]))


def column_lattice(M: ZMatrix) -> ZMatrix:
    """Canonical basis of the column lattice, as columns."""
    return row_lattice(M.transpose()).transpose()


def same_column_lattice(A: ZMatrix, B: ZMatrix) -> bool:
    if A.rows != B.rows:
        return False
    return row_lattice(A.transpose()) == row_lattice(B.transpose())


def rank(M: ZMatrix) -> int:
    return row_lattice(M).rows


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _smallest_entry(D: np.ndarray, t: int) -> tuple[int, int] | None:
    best = None
    m, n = D.shape
    for i in range(t, m):
        for j in range(t, n):
            if D[i, j] != 0 and (best is None or abs(D[i, j]) < best[0]):
                best = (abs(D[i, j]), i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(M: ZMatrix) -> SNFDecomposition:
    """Smith normal form with smallest-absolute-value pivoting.

    Returns U, D, V with U·M·V = D, diagonal entries nonnegative and each
    dividing the next.
    """
    m, n = M.shape
    D = M.to_array()
    U = _identity(m)
    V = _identity(n)

    for t in range(min(m, n)):
        pos = _smallest_entry(D, t)
        if pos is None:
            break
        _swap_rows(D, t, pos[0])
        _swap_rows(U, t, pos[0])
        _swap_cols(D, t, pos[1])
        _swap_cols(V, t, pos[1])

        while True:
            p = D[t, t]
            for i in range(t + 1, m):
                q = D[i, t] // p
                if q:
                    D[i, :] = D[i, :] - q * D[t, :]
                    U[i, :] = U[i, :] - q * U[t, :]
            for j in range(t + 1, n):
                q = D[t, j] // p
                if q:
                    D[:, j] = D[:, j] - q * D[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]

            leftover = [(abs(D[i, t]), i, t) for i in range(t + 1, m) if D[i, t] != 0]
            leftover += [(abs(D[t, j]), t, j) for j in range(t + 1, n) if D[t, j] != 0]
            if leftover:
                _, i, j = min(leftover)
                _swap_rows(D, t, i)
                _swap_rows(U, t, i)
                _swap_cols(D, t, j)
                _swap_cols(V, t, j)
                continue

            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % p != 0),
                None,
            )
            if bad is None:
                break
            # pull the offending row up; the next sweep shrinks the pivot
            D[t, :] = D[t, :] + D[bad, :]
            U[t, :] = U[t, :] + U[bad, :]

        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]

    return SNFDecomposition(ZMatrix.from_array(U), ZMatrix.from_array(D), ZMatrix.from_array(V))


def invariant_factors(M: ZMatrix) -> tuple[int, ...]:
    return smith_normal_form(M).invariant_factors


def is_surjective(L: ZMatrix) -> bool:
    """True when L maps Z^cols onto Z^rows."""
    factors = invariant_factors(L)
    return len(factors) == L.rows and all(d == 1 for d in factors)


# ---------------------------------------------------------------------------
# Kernels and integral solves
# ---------------------------------------------------------------------------

def kernel_basis(M: ZMatrix) -> ZMatrix:
    """Saturated Z-basis of {x : Mx = 0} as columns, in column HNF."""
    snf = smith_normal_form(M)
    r = snf.rank
    raw = snf.V.select_columns(range(r, M.cols))
    if raw.cols == 0:
        return ZMatrix.zeros(M.cols, 0)
    return row_lattice(raw.transpose()).transpose()


def solve_integral(B: ZMatrix, y: tuple[int, ...] | list[int]) -> tuple[int, ...] | None:
    """An integer x with B·x = y, or None when no integral solution exists."""
    if len(y) != B.rows:
        raise DimensionMismatch("right-hand side length does not match", rows=B.rows, length=len(y))
    snf = smith_normal_form(B)
    z = snf.U.apply(tuple(y))
    factors = snf.invariant_factors
    x_prime = [0] * B.cols
    for i, d in enumerate(factors):
        if z[i] % d:
            return None
        x_prime[i] = z[i] // d
    if any(z[i] != 0 for i in range(len(factors), B.rows)):
        return None
    return snf.V.apply(tuple(x_prime))


def in_column_lattice(B: ZMatrix, y) -> bool:
    return solve_integral(B, y) is not None


# ---------------------------------------------------------------------------
# Exact sequences and Gale duality
# ---------------------------------------------------------------------------

def verify_short_exact(K: ZMatrix, L: ZMatrix) -> ExactnessReport:
    """Check 0 -> Z^k --K--> Z^n --L--> Z^m -> 0 is exact.

    Every check is evaluated; failures are listed rather than raised.
    """
    if K.rows != L.cols:
        raise DimensionMismatch(
            "K and L are not composable", K=K.shape, L=L.shape,
        )
    failures = []

    composite_zero = (L @ K).is_zero()
    if not composite_zero:
        failures.append("L·K is not zero")

    injective = rank(K) == K.cols
    if not injective:
        failures.append("K is not injective")

    saturated = same_column_lattice(K, kernel_basis(L)) if injective else False
    if injective and not saturated:
        failures.append("image of K is not the saturated kernel of L")

    free = is_surjective(L)
    if not free:
        failures.append("L is not surjective (non-unit invariant factors)")

    if failures:
        logger.debug("Exactness check failed: %s", "; ".join(failures))
    return ExactnessReport(composite_zero, injective, saturated, free, tuple(failures))


def gale_dual(L: ZMatrix) -> ZMatrix:
    """K^t for K = kernel_basis(L). L must be surjective."""
    if not is_surjective(L):
        raise NotSurjective(
            "matrix does not present a free quotient",
            invariant_factors=list(invariant_factors(L)),
            rows=L.rows,
        )
    return kernel_basis(L).transpose()
