"""Certificates and constructions for squared-distance matrices.

A matrix of pairwise squared distances is realizable by kissing spheres in
ambient dimension n exactly when it has one positive eigenvalue and at most n
negative ones; equivalently, all signed principal minors (-1)^{|J|} det D_J
are nonpositive and the rank is at most n + 1. The Euclidean counterpart runs
the classical tests on the bordered (Cayley-Menger) matrix. Constructions go
through the null-vector factorization or through Schur elimination of a pivot
pair, and always re-validate themselves by a round trip because the algebraic
conditions admit false positives on degenerate zero-distance patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import numkernel
from .kissing import KissingSphere, Plane, Sphere, distance_matrix
from .lightcone import from_lightcone
from .numkernel import DEFAULT_TOL, Inertia, Tolerance

EMBEDDABLE = "Embeddable"
NOT_EMBEDDABLE = "NotEmbeddable"

MINORS_MAX_ORDER = 12
ROUND_TRIP_RTOL = 1e-7


class RealizationError(RuntimeError):
    """Algebraic certificates passed but no sphere realization exists."""


class InadmissiblePivotError(ValueError):
    """Pivot pair unusable: the hyperplane column must be strictly positive."""


@dataclass(frozen=True)
class MinorWitness:
    subset: tuple[int, ...]
    signed_minor: float


@dataclass(frozen=True)
class RankWitness:
    rank: int
    bound: int


@dataclass(frozen=True)
class InertiaWitness:
    inertia: Inertia
    requirement: str


@dataclass(frozen=True)
class Certificate:
    verdict: str
    method: str
    witness: object = None

    @property
    def embeddable(self) -> bool:
        return self.verdict == EMBEDDABLE


def validate_squared_distances(matrix) -> np.ndarray:
    """Check symmetry, zero diagonal, and nonnegative entries; return a clean copy."""
    a = numkernel.as_symmetric(matrix)
    scale = max(1.0, float(np.abs(a).max()))
    if float(np.abs(np.diag(a)).max()) > 1e-12 * scale:
        raise ValueError("squared-distance matrix must have a zero diagonal")
    if float(a.min()) < -1e-12 * scale:
        raise ValueError("squared-distance entries must be nonnegative")
    np.fill_diagonal(a, 0.0)
    return np.maximum(a, 0.0)


def is_degenerate_zero(matrix) -> bool:
    """Identically zero distance data.

    Such data is realizable by spheres sharing one tangent point even though
    the one-positive-eigenvalue test fails on it, so the inertia-style checks
    special-case it.
    """
    return float(np.abs(np.asarray(matrix, dtype=float)).max()) <= numkernel.ZERO_FLOOR


def cayley_menger(matrix) -> np.ndarray:
    """Border the squared-distance matrix with an all-ones row/column, zero corner."""
    d = validate_squared_distances(matrix)
    m = d.shape[0]
    out = np.ones((m + 1, m + 1))
    out[:m, :m] = d
    out[m, m] = 0.0
    return out


def _subsets_lex(order: int, min_size: int) -> list[tuple[int, ...]]:
    subsets = [
        combo
        for size in range(min_size, order + 1)
        for combo in combinations(range(order), size)
    ]
    subsets.sort()
    return subsets


def _minor_cutoff(size: int, scale: float, tol: Tolerance) -> float:
    return tol.eig_zero * scale**size


def check_kissing(matrix, n: int, method: str = "inertia",
                  tol: Tolerance = DEFAULT_TOL) -> Certificate:
    """Certify embeddability into kissing spheres of ambient dimension n.

    The inertia route demands exactly one positive eigenvalue and at most n
    negative ones (the identically zero matrix is the degenerate shared-point
    family and passes). The minors route checks (-1)^{|J|} det D_J <= 0 over
    every principal subset of size >= 2 plus rank <= n + 1, and reports the
    lexicographically first violation; it is capped at order 12.
    """
    d = validate_squared_distances(matrix)
    if n < 1:
        raise ValueError("ambient dimension n must be >= 1")
    method = method.lower()
    if method == "inertia":
        if is_degenerate_zero(d):
            return Certificate(EMBEDDABLE, "inertia")
        found = numkernel.inertia(d, tol)
        if found.positive != 1:
            return Certificate(
                NOT_EMBEDDABLE, "inertia",
                InertiaWitness(found, "exactly one positive eigenvalue"),
            )
        if found.negative > n:
            return Certificate(
                NOT_EMBEDDABLE, "inertia",
                InertiaWitness(found, f"at most {n} negative eigenvalues"),
            )
        return Certificate(EMBEDDABLE, "inertia")
    if method != "minors":
        raise ValueError(f"unknown method {method!r}")
    m = d.shape[0]
    if m > MINORS_MAX_ORDER:
        raise ValueError(
            f"order {m} exceeds the minors-mode cap {MINORS_MAX_ORDER}; use the inertia method"
        )
    scale = max(1.0, float(d.max()))
    for subset in _subsets_lex(m, 2):
        idx = np.asarray(subset)
        minor = float(np.linalg.det(d[np.ix_(idx, idx)]))
        signed = minor if len(subset) % 2 == 0 else -minor
        if signed > _minor_cutoff(len(subset), scale, tol):
            return Certificate(NOT_EMBEDDABLE, "minors", MinorWitness(subset, signed))
    rank = numkernel.inertia(d, tol).rank
    if rank > n + 1:
        return Certificate(NOT_EMBEDDABLE, "minors", RankWitness(rank, n + 1))
    return Certificate(EMBEDDABLE, "minors")


def _bordered(sub: np.ndarray) -> np.ndarray:
    k = sub.shape[0]
    out = np.ones((k + 1, k + 1))
    out[:k, :k] = sub
    out[k, k] = 0.0
    return out


def check_euclidean(matrix, n: int, method: str = "inertia",
                    tol: Tolerance = DEFAULT_TOL) -> Certificate:
    """Certify embeddability into Euclidean n-space.

    Minors and inertia both act on the bordered matrix: signed bordered minors
    (-1)^{|J|} det M_J >= 0 over point subsets with rank(M) <= n + 2, or
    exactly one positive and at most n + 1 negative eigenvalues of M. The
    distance_inertia method applies the eigenvalue counts to the plain
    distance matrix instead; it is a necessary condition only.
    """
    d = validate_squared_distances(matrix)
    if n < 1:
        raise ValueError("ambient dimension n must be >= 1")
    method = method.lower()
    if method == "distance_inertia":
        if is_degenerate_zero(d):
            return Certificate(EMBEDDABLE, "distance_inertia")
        found = numkernel.inertia(d, tol)
        if found.positive != 1:
            return Certificate(
                NOT_EMBEDDABLE, "distance_inertia",
                InertiaWitness(found, "exactly one positive eigenvalue"),
            )
        if found.negative > n + 1:
            return Certificate(
                NOT_EMBEDDABLE, "distance_inertia",
                InertiaWitness(found, f"at most {n + 1} negative eigenvalues"),
            )
        return Certificate(EMBEDDABLE, "distance_inertia")
    bordered = cayley_menger(d)
    if method == "inertia":
        found = numkernel.inertia(bordered, tol)
        if found.positive != 1:
            return Certificate(
                NOT_EMBEDDABLE, "inertia",
                InertiaWitness(found, "exactly one positive eigenvalue"),
            )
        if found.negative > n + 1:
            return Certificate(
                NOT_EMBEDDABLE, "inertia",
                InertiaWitness(found, f"at most {n + 1} negative eigenvalues"),
            )
        return Certificate(EMBEDDABLE, "inertia")
    if method != "minors":
        raise ValueError(f"unknown method {method!r}")
    m = d.shape[0]
    if m > MINORS_MAX_ORDER:
        raise ValueError(
            f"order {m} exceeds the minors-mode cap {MINORS_MAX_ORDER}; use the inertia method"
        )
    scale = max(1.0, float(d.max()))
    for subset in _subsets_lex(m, 1):
        idx = np.asarray(subset)
        minor = float(np.linalg.det(_bordered(d[np.ix_(idx, idx)])))
        signed = minor if len(subset) % 2 == 0 else -minor
        if signed < -_minor_cutoff(len(subset) + 1, scale, tol):
            return Certificate(NOT_EMBEDDABLE, "minors", MinorWitness(subset, signed))
    rank = numkernel.inertia(bordered, tol).rank
    if rank > n + 2:
        return Certificate(NOT_EMBEDDABLE, "minors", RankWitness(rank, n + 2))
    return Certificate(EMBEDDABLE, "minors")


def matrices_close(actual, expected, rtol: float = ROUND_TRIP_RTOL) -> bool:
    a = np.asarray(actual, dtype=float)
    b = np.asarray(expected, dtype=float)
    return float(np.max(np.abs(a - b) / (1.0 + np.abs(b)))) <= rtol


def construct_embedding(matrix, n: int, tol: Tolerance = DEFAULT_TOL) -> list[KissingSphere]:
    """Kissing spheres realizing the matrix, via null-vector factorization.

    The factor columns are oriented to the future (a global sign flip when
    every time coordinate is negative; mixed orientations fail), mapped back
    to spheres, and validated by a round trip at 1e-7 relative. Identically
    zero data is realized directly by spheres sharing one tangent point. A
    zero factor row, mixed orientations, or a failed round trip raise
    RealizationError: these are the degenerate patterns on which the algebraic
    certificates are not sufficient.
    """
    d = validate_squared_distances(matrix)
    if n < 1:
        raise ValueError("ambient dimension n must be >= 1")
    m = d.shape[0]
    if is_degenerate_zero(d):
        origin = (0.0,) * (n - 1)
        return [Sphere(tangent=origin, diameter=float(i + 1)) for i in range(m)]
    factor = numkernel.gram_factor_lorentz(d, n, tol)
    if factor.degenerate_rows:
        raise RealizationError(
            f"degenerate zero-distance pattern: zero factor rows {factor.degenerate_rows}"
        )
    vectors = factor.vectors
    times = vectors[:, -1]
    if np.all(times < 0.0):
        vectors = -vectors
    elif not np.all(times > 0.0):
        raise RealizationError("mixed time orientations in the factorization")
    spheres = [from_lightcone(row, tol) for row in vectors]
    if not matrices_close(distance_matrix(spheres), d):
        raise RealizationError("round trip failed: realized distances do not reproduce the input")
    return spheres


def schur_embedding(matrix, n: int, pivot: tuple[int, int],
                    tol: Tolerance = DEFAULT_TOL) -> list[KissingSphere]:
    """Realize the matrix by Schur elimination of a pivot pair (a, b).

    Index b becomes the hyperplane at height one and index a the sphere of
    diameter 1 / D[a, b] tangent at the boundary origin. The remaining
    diameters are 1 / D[i, b]; tangent points come from a Euclidean
    factorization of -P/2, where P is the Schur complement of the pivot pair,
    which must be positive semidefinite of rank at most n - 1. Requires
    D[i, b] > 0 for every i != b, and re-validates by a round trip.
    """
    d = validate_squared_distances(matrix)
    if n < 1:
        raise ValueError("ambient dimension n must be >= 1")
    m = d.shape[0]
    a, b = (int(pivot[0]), int(pivot[1]))
    if a == b or not (0 <= a < m and 0 <= b < m):
        raise ValueError("pivot must be two distinct indices in range")
    column = np.delete(d[:, b], b)
    if column.size and float(column.min()) <= 0.0:
        raise InadmissiblePivotError("every distance to the pivot hyperplane index must be positive")
    rest = [i for i in range(m) if i not in (a, b)]
    tangents: dict[int, tuple[float, ...]] = {}
    if rest:
        comp = numkernel.schur_complement(d, (a, b), tol)
        gram = -comp / 2.0
        values, vecs = numkernel.sym_eigen(gram, tol)
        cutoff = numkernel.eigen_cutoff(values, tol)
        if float(values.min()) < -cutoff:
            raise RealizationError("tangent Gram -P/2 is not positive semidefinite to tolerance")
        spatial_rank = int(np.sum(values > cutoff))
        if spatial_rank > n - 1:
            raise RealizationError(f"tangent rank {spatial_rank} exceeds n - 1 = {n - 1}")
        coords = vecs[:, :spatial_rank] * np.sqrt(values[:spatial_rank])
        for row, i in enumerate(rest):
            point = np.zeros(n - 1)
            point[:spatial_rank] = coords[row]
            tangents[i] = tuple(point)
    out: list[KissingSphere] = [None] * m  # type: ignore[list-item]
    out[b] = Plane(height=1.0)
    out[a] = Sphere(tangent=(0.0,) * (n - 1), diameter=1.0 / d[a, b])
    for i in rest:
        phi = 1.0 / d[i, b]
        out[i] = Sphere(tangent=tuple(phi * c for c in tangents[i]), diameter=phi)
    if not matrices_close(distance_matrix(out), d):
        raise RealizationError("round trip failed: Schur construction does not reproduce the input")
    return out


@dataclass(frozen=True)
class SchurReport:
    """Determinant, inertia, and rank identities tying a matrix to the Schur
    complement of a pivot pair. The empty complement has determinant one."""

    det_full: float
    det_expected: float
    det_ok: bool
    inertia_full: Inertia
    inertia_comp: Inertia
    inertia_ok: bool
    rank_full: int
    rank_comp: int
    rank_ok: bool

    @property
    def satisfied(self) -> bool:
        return self.det_ok and self.inertia_ok and self.rank_ok


def verify_schur_relations(matrix, pivot: tuple[int, int], tol: Tolerance = DEFAULT_TOL,
                           rtol: float = 1e-7) -> SchurReport:
    """Self-test of the three pivot identities.

    det D = -det P * D[a, b]^2, inertia D = (1, 1, 0) + inertia P, and
    rank D = rank P + 2, where P is the Schur complement of the pair {a, b}.
    The determinant residual is normalized by the matrix magnitude raised to
    the order, the natural scale of a determinant, so that rank-deficient
    instances compare their (near-zero) determinants at noise level.
    """
    d = validate_squared_distances(matrix)
    m = d.shape[0]
    a, b = (int(pivot[0]), int(pivot[1]))
    if a == b or not (0 <= a < m and 0 <= b < m):
        raise ValueError("pivot must be two distinct indices in range")
    comp = numkernel.schur_complement(d, (a, b), tol)
    det_full = float(np.linalg.det(d))
    det_comp = float(np.linalg.det(comp)) if comp.size else 1.0
    det_expected = -det_comp * float(d[a, b]) ** 2
    det_scale = max(1.0, abs(det_full), abs(det_expected), max(1.0, float(d.max())) ** m)
    det_ok = abs(det_full - det_expected) <= rtol * det_scale
    inertia_full = numkernel.inertia(d, tol)
    inertia_comp = numkernel.inertia(comp, tol) if comp.size else Inertia(0, 0, 0)
    inertia_ok = inertia_full == Inertia(
        inertia_comp.positive + 1, inertia_comp.negative + 1, inertia_comp.zero
    )
    rank_ok = inertia_full.rank == inertia_comp.rank + 2
    return SchurReport(
        det_full=det_full,
        det_expected=det_expected,
        det_ok=det_ok,
        inertia_full=inertia_full,
        inertia_comp=inertia_comp,
        inertia_ok=inertia_ok,
        rank_full=inertia_full.rank,
        rank_comp=inertia_comp.rank,
        rank_ok=rank_ok,
    )
