"""Signature-aware dense linear algebra.

Symmetric eigendecomposition, inertia counting, Schur complements, and Gram
factorization into Minkowski signature (n, 1). Everything operates on plain
numpy arrays; inputs are validated and exactly symmetrized on entry. All
functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

# Absolute floor for eigenvalue thresholds, so near-zero matrices still get a
# well-defined notion of "zero eigenvalue".
ZERO_FLOOR = 1e-14


class NonConvergenceError(RuntimeError):
    """The symmetric eigensolver failed or violated its residual contract."""


class SingularPivotError(ValueError):
    """Schur pivot block is singular to tolerance; callers should re-pivot."""


class GramInfeasibleError(ValueError):
    """Inertia incompatible with a signature-(n, 1) Gram factorization."""

    def __init__(self, inertia: "Inertia", reason: str):
        super().__init__(reason)
        self.inertia = inertia
        self.reason = reason


@dataclass(frozen=True)
class Tolerance:
    """Numerical policy shared across the library.

    eig_zero is the relative cutoff below which an eigenvalue counts as zero
    (scaled by the largest absolute eigenvalue); residual bounds acceptable
    factorization and reconstruction residuals.
    """

    eig_zero: float = 1e-9
    residual: float = 1e-8

    def __post_init__(self) -> None:
        if not (self.eig_zero > 0.0 and self.residual > 0.0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


class Inertia(NamedTuple):
    positive: int
    negative: int
    zero: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative

    @property
    def order(self) -> int:
        return self.positive + self.negative + self.zero


def as_symmetric(matrix, rtol: float = 1e-8) -> np.ndarray:
    """Validate a square symmetric matrix; return an exactly symmetric copy."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a square matrix of order >= 1, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    scale = max(1.0, float(np.abs(a).max()))
    if float(np.abs(a - a.T).max()) > rtol * scale:
        raise ValueError("matrix is not symmetric")
    return (a + a.T) / 2.0


def signature_form(dim: int) -> np.ndarray:
    """Diagonal form of signature (dim - 1, 1): +1 spatial entries, -1 time last."""
    if dim < 2:
        raise ValueError("signature (n, 1) needs dimension >= 2")
    eta = np.eye(dim)
    eta[-1, -1] = -1.0
    return eta


def sym_eigen(matrix, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order with matching orthonormal eigenvector columns."""
    a = as_symmetric(matrix)
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    scale = max(float(np.abs(a).max()), ZERO_FLOOR)
    residual = float(np.abs(a - (vectors * values) @ vectors.T).max())
    if residual > tol.residual * scale:
        raise NonConvergenceError(
            f"reconstruction residual {residual:.3g} exceeds {tol.residual * scale:.3g}"
        )
    return values, vectors


def eigen_cutoff(values, tol: Tolerance = DEFAULT_TOL) -> float:
    arr = np.asarray(values, dtype=float)
    top = float(np.abs(arr).max()) if arr.size else 0.0
    return max(tol.eig_zero * top, ZERO_FLOOR)


def inertia_of_values(values, tol: Tolerance = DEFAULT_TOL) -> Inertia:
    arr = np.asarray(values, dtype=float)
    cutoff = eigen_cutoff(arr, tol)
    positive = int(np.sum(arr > cutoff))
    negative = int(np.sum(arr < -cutoff))
    return Inertia(positive, negative, int(arr.size) - positive - negative)


def inertia(matrix, tol: Tolerance = DEFAULT_TOL) -> Inertia:
    """Counts of positive, negative, and zero eigenvalues under the relative cutoff."""
    values, _ = sym_eigen(matrix, tol)
    return inertia_of_values(values, tol)


def symmetric_rank(matrix, tol: Tolerance = DEFAULT_TOL) -> int:
    return inertia(matrix, tol).rank


def schur_complement(matrix, pivot_indices: Iterable[int], tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Eliminate the pivot block: A - B D^{-1} B^T over the remaining indices.

    The remaining indices keep their original relative order. A pivot block
    that is singular to tolerance raises SingularPivotError; it is never
    silently regularized.
    """
    a = as_symmetric(matrix)
    m = a.shape[0]
    pivots = sorted({int(i) for i in pivot_indices})
    if pivots and (pivots[0] < 0 or pivots[-1] >= m):
        raise ValueError("pivot index out of range")
    rest = [i for i in range(m) if i not in set(pivots)]
    if not pivots:
        return a.copy()
    if not rest:
        return np.zeros((0, 0))
    block = a[np.ix_(pivots, pivots)]
    singular_values = np.linalg.svd(block, compute_uv=False)
    if singular_values[-1] <= tol.residual * max(float(singular_values[0]), ZERO_FLOOR):
        raise SingularPivotError(f"pivot block {tuple(pivots)} is singular to tolerance")
    cross = a[np.ix_(pivots, rest)]
    solved = np.linalg.solve(block, cross)
    comp = a[np.ix_(rest, rest)] - cross.T @ solved
    return (comp + comp.T) / 2.0


def principal_minor_sums(matrix) -> np.ndarray:
    """Sums of k-by-k principal minors for k = 1..m.

    These are the elementary symmetric functions of the eigenvalues, i.e. the
    unsigned characteristic polynomial coefficients, computed by determinant
    enumeration only.
    """
    a = as_symmetric(matrix)
    m = a.shape[0]
    sums = np.zeros(m)
    for k in range(1, m + 1):
        total = 0.0
        for subset in combinations(range(m), k):
            idx = np.asarray(subset)
            total += float(np.linalg.det(a[np.ix_(idx, idx)]))
        sums[k - 1] = total
    return sums


@dataclass(frozen=True)
class GramFactor:
    """Factorization result: row i is the Minkowski vector of index i
    (spatial coordinates first, time last). Rows whose input row was
    numerically zero are listed as degenerate."""

    vectors: np.ndarray
    degenerate_rows: tuple[int, ...]


def gram_factor_lorentz(matrix, n: int, tol: Tolerance = DEFAULT_TOL) -> GramFactor:
    """Vectors x_i in signature (n, 1) with -<x_i, x_j> equal to the input.

    Requires exactly one positive eigenvalue and at most n negative ones,
    except that an identically zero matrix factors as zero vectors (all rows
    flagged degenerate). The single positive eigendirection is placed in the
    time coordinate; negative directions fill spatial slots in order of
    magnitude. Column signs are left to callers.
    """
    a = as_symmetric(matrix)
    if n < 1:
        raise ValueError("spatial dimension n must be >= 1")
    m = a.shape[0]
    scale = float(np.abs(a).max())
    if scale <= ZERO_FLOOR:
        return GramFactor(np.zeros((m, n + 1)), tuple(range(m)))
    values, vectors = sym_eigen(a, tol)
    found = inertia_of_values(values, tol)
    if found.positive != 1:
        raise GramInfeasibleError(
            found, f"exactly one positive eigenvalue required, found {found.positive}"
        )
    if found.negative > n:
        raise GramInfeasibleError(
            found, f"{found.negative} negative eigenvalues exceed the spatial dimension {n}"
        )
    cutoff = eigen_cutoff(values, tol)
    x = np.zeros((m, n + 1))
    x[:, n] = math.sqrt(values[0]) * vectors[:, 0]
    negatives = [j for j in range(m) if values[j] < -cutoff]
    for slot, j in enumerate(sorted(negatives, key=lambda j: values[j])):
        x[:, slot] = math.sqrt(-values[j]) * vectors[:, j]
    eta = signature_form(n + 1)
    residual = float(np.abs(-(x @ eta @ x.T) - a).max())
    if residual > tol.residual * max(1.0, scale):
        raise NonConvergenceError(f"factorization residual {residual:.3g} out of tolerance")
    row_cut = tol.eig_zero * scale
    degenerate = tuple(i for i in range(m) if float(np.abs(a[i]).max()) <= row_cut)
    return GramFactor(x, degenerate)
