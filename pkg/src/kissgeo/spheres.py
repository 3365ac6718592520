"""Separation geometry for Euclidean spheres.

The separation of two spheres, (|c_p - c_q|^2 - r_p^2 - r_q^2) / (2 r_p r_q),
is the signed analogue of a squared distance: 1 at external tangency, -1 at
internal tangency, 0 at orthogonal intersection, above 1 for externally
disjoint pairs, below -1 for nested ones, and -cos(angle) in between. A
sphere embeds onto the unit pseudosphere of signature (n+1, 1) where minus
the inner product of two images recovers the separation; spheres tangent to a
fixed one land on a lightcone through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import numkernel
from .embed import EMBEDDABLE, MINORS_MAX_ORDER, NOT_EMBEDDABLE, Certificate, InertiaWitness
from .lightcone import SQRT2, minkowski_inner
from .numkernel import DEFAULT_TOL, Inertia, Tolerance


@dataclass(frozen=True)
class EuclideanSphere:
    center: tuple[float, ...]
    radius: float

    def __post_init__(self) -> None:
        center = tuple(float(c) for c in self.center)
        if not all(math.isfinite(c) for c in center):
            raise ValueError("center coordinates must be finite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError("radius must be a positive finite real")

    @property
    def dim(self) -> int:
        return len(self.center)


def separation(p: EuclideanSphere, q: EuclideanSphere) -> float:
    """Signed separation; never square-rooted (it may be negative)."""
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    gap_sq = math.fsum((a - b) ** 2 for a, b in zip(p.center, q.center))
    return (gap_sq - p.radius**2 - q.radius**2) / (2.0 * p.radius * q.radius)


def separation_matrix(spheres: Sequence[EuclideanSphere]) -> np.ndarray:
    """Pairwise separations with the self-separation -1 on the diagonal."""
    items = list(spheres)
    if not items:
        raise ValueError("need at least one sphere")
    if len({s.dim for s in items}) > 1:
        raise ValueError("mixed dimensions")
    m = len(items)
    out = -np.eye(m)
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = out[j, i] = separation(items[i], items[j])
    return out


def validate_separation_matrix(matrix) -> np.ndarray:
    a = numkernel.as_symmetric(matrix)
    scale = max(1.0, float(np.abs(a).max()))
    if float(np.abs(np.diag(a) + 1.0).max()) > 1e-12 * scale:
        raise ValueError("separation matrix must have diagonal -1")
    np.fill_diagonal(a, -1.0)
    return a


def hyperboloid_embed(sphere: EuclideanSphere) -> np.ndarray:
    """Unit-pseudonorm vector of signature (n+1, 1) representing the sphere.

    Minus the inner product of two images equals their separation; the
    self-product is one.
    """
    c = np.asarray(sphere.center, dtype=float)
    r = sphere.radius
    norm_sq = float(c @ c)
    out = np.empty(c.size + 2)
    out[0] = 1.0 - norm_sq + r * r
    out[1:-1] = 2.0 * c
    out[-1] = 1.0 + norm_sq - r * r
    return out / (2.0 * r)


def _descartes_inertia(minor_sums: np.ndarray, order: int, scale: float,
                       tol: Tolerance) -> Inertia:
    """Eigenvalue sign counts from sums of principal minors.

    The characteristic polynomial of a symmetric matrix has only real roots,
    so Descartes' rule counts its positive roots exactly, and the trailing
    nonzero coefficient pins the rank.
    """
    coeffs = [1.0]
    for k in range(1, order + 1):
        value = float(minor_sums[k - 1])
        cutoff = tol.eig_zero * math.comb(order, k) * scale**k
        if abs(value) <= cutoff:
            value = 0.0
        coeffs.append(value if k % 2 == 0 else -value)
    rank = 0
    for k in range(order, 0, -1):
        if coeffs[k] != 0.0:
            rank = k
            break
    positive = 0
    last_sign = 1.0
    for k in range(1, rank + 1):
        if coeffs[k] == 0.0:
            continue
        if coeffs[k] * last_sign < 0.0:
            positive += 1
        last_sign = coeffs[k]
    return Inertia(positive, rank - positive, order - rank)


def check_spheres(matrix, n: int, method: str = "inertia",
                  tol: Tolerance = DEFAULT_TOL) -> Certificate:
    """Certify that a separation matrix is realizable by spheres in n-space.

    The matrix must have at most one positive eigenvalue and at most n + 1
    negative ones (so rank at most n + 2). The minors route recovers the same
    counts purely from determinant sums via Descartes' rule and is capped at
    order 12.
    """
    s = validate_separation_matrix(matrix)
    if n < 1:
        raise ValueError("ambient dimension n must be >= 1")
    method = method.lower()
    m = s.shape[0]
    if method == "inertia":
        counts = numkernel.inertia(s, tol)
    elif method == "minors":
        if m > MINORS_MAX_ORDER:
            raise ValueError(
                f"order {m} exceeds the minors-mode cap {MINORS_MAX_ORDER}; use the inertia method"
            )
        sums = numkernel.principal_minor_sums(s)
        counts = _descartes_inertia(sums, m, max(1.0, float(np.abs(s).max())), tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    if counts.positive > 1:
        return Certificate(
            NOT_EMBEDDABLE, method, InertiaWitness(counts, "at most one positive eigenvalue")
        )
    if counts.negative > n + 1:
        return Certificate(
            NOT_EMBEDDABLE, method,
            InertiaWitness(counts, f"at most {n + 1} negative eigenvalues (rank at most {n + 2})"),
        )
    return Certificate(EMBEDDABLE, method)


def kissing_cone_embed(anchor, vector, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Null image of a sphere tangent to the anchor sphere.

    Both arguments are pseudosphere vectors with self-product one and mutual
    product -1 (tangency); sqrt(2)/2 times their sum is then null, which
    places all spheres tangent to the anchor on a lightcone.
    """
    a = np.asarray(anchor, dtype=float)
    v = np.asarray(vector, dtype=float)
    if a.shape != v.shape or a.ndim != 1:
        raise ValueError("dimension mismatch")
    scale = max(1.0, float(a @ a), float(v @ v))
    if abs(minkowski_inner(a, a) - 1.0) > tol.residual * scale:
        raise ValueError("anchor is not on the unit pseudosphere")
    if abs(minkowski_inner(v, v) - 1.0) > tol.residual * scale:
        raise ValueError("vector is not on the unit pseudosphere")
    if abs(minkowski_inner(v, a) + 1.0) > tol.residual * scale:
        raise ValueError("vectors are not tangent: mutual product must be -1")
    return (SQRT2 / 2.0) * (a + v)
