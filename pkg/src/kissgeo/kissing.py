"""Kissing spheres in the upper half-space.

A sphere tangent to the boundary hyperplane of the half-space x_0 >= 0 is
coordinatized by its tangent point t in R^{n-1} and its diameter phi > 0; the
tangent point at infinity gives a horizontal hyperplane at height h > 0. The
distance between two finite spheres is |t_p - t_q| / sqrt(phi_p * phi_q),
against a hyperplane it is sqrt(h / phi), and two spheres sharing a tangent
point (or two hyperplanes) are at distance zero. This distance is a
pre-metric: symmetric, nonnegative, zero on the diagonal, no triangle
inequality. It is invariant under the boundary-preserving conformal maps
generated by translations, dilations, reflections, and sphere inversions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np


def _as_point(coords) -> tuple[float, ...]:
    point = tuple(float(c) for c in coords)
    if not all(math.isfinite(c) for c in point):
        raise ValueError("coordinates must be finite")
    return point


@dataclass(frozen=True)
class Sphere:
    """Finite kissing sphere: boundary tangent point and diameter > 0."""

    tangent: tuple[float, ...]
    diameter: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "tangent", _as_point(self.tangent))
        object.__setattr__(self, "diameter", float(self.diameter))
        if not (self.diameter > 0.0 and math.isfinite(self.diameter)):
            raise ValueError("diameter must be a positive finite real")

    @property
    def ambient_dim(self) -> int:
        return len(self.tangent) + 1


@dataclass(frozen=True)
class Plane:
    """Kissing sphere whose tangent point is at infinity: a hyperplane at height > 0."""

    height: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "height", float(self.height))
        if not (self.height > 0.0 and math.isfinite(self.height)):
            raise ValueError("height must be a positive finite real")


KissingSphere = Union[Sphere, Plane]


class PairClass(Enum):
    TANGENT = "Tangent"
    DISJOINT = "Disjoint"
    INTERSECTING = "Intersecting"
    SHARED_TANGENT_POINT = "SharedTangentPoint"


@dataclass(frozen=True)
class InversionSphere:
    """Inversion sphere centered on the boundary hyperplane."""

    center: tuple[float, ...]
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError("radius must be a positive finite real")


def _gap_sq(p: Sphere, q: Sphere) -> float:
    if len(p.tangent) != len(q.tangent):
        raise ValueError("ambient dimensions differ")
    return math.fsum((a - b) ** 2 for a, b in zip(p.tangent, q.tangent))


def _gap(p: Sphere, q: Sphere) -> float:
    return math.sqrt(_gap_sq(p, q))


def distance_sq(p: KissingSphere, q: KissingSphere) -> float:
    """Squared distance; exact in the shared-tangent and hyperplane cases."""
    if isinstance(p, Plane) and isinstance(q, Plane):
        return 0.0
    if isinstance(p, Plane):
        return p.height / q.diameter
    if isinstance(q, Plane):
        return q.height / p.diameter
    if p.tangent == q.tangent:
        return 0.0
    return _gap_sq(p, q) / (p.diameter * q.diameter)


def distance(p: KissingSphere, q: KissingSphere) -> float:
    return math.sqrt(distance_sq(p, q))


def classify_pair(p: KissingSphere, q: KissingSphere, rel_tol: float = 1e-9) -> PairClass:
    """Combinatorial relation read off the distance.

    The distance is 1 exactly at tangency, above 1 for disjoint pairs, below 1
    for intersecting ones, and 0 when the tangent points coincide; comparisons
    use the given relative tolerance.
    """
    d = distance(p, q)
    if d <= rel_tol:
        return PairClass.SHARED_TANGENT_POINT
    if abs(d - 1.0) <= rel_tol * max(1.0, d):
        return PairClass.TANGENT
    return PairClass.DISJOINT if d > 1.0 else PairClass.INTERSECTING


def invert(p: KissingSphere, s: InversionSphere) -> KissingSphere:
    """Image of a kissing sphere under inversion in s.

    The diameter rescales by r^2 / |o - t|^2 and the tangent point moves to
    distance r^2 / |o - t| along the ray from the center o through t. A sphere
    tangent exactly at o maps to the hyperplane at height r^2 / phi, and a
    hyperplane at height h maps to the sphere of diameter r^2 / h tangent at o.
    """
    r_sq = s.radius * s.radius
    if isinstance(p, Plane):
        return Sphere(tangent=s.center, diameter=r_sq / p.height)
    if len(p.tangent) != len(s.center):
        raise ValueError("ambient dimensions differ")
    offset = tuple(t - o for t, o in zip(p.tangent, s.center))
    gap_sq = math.fsum(c * c for c in offset)
    if gap_sq == 0.0:
        return Plane(height=r_sq / p.diameter)
    factor = r_sq / gap_sq
    image = tuple(o + factor * c for o, c in zip(s.center, offset))
    return Sphere(tangent=image, diameter=factor * p.diameter)


@dataclass(frozen=True)
class Translation:
    """Shift of the boundary hyperplane."""

    offset: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", _as_point(self.offset))


@dataclass(frozen=True)
class Dilation:
    """Scaling from the boundary origin by a strictly positive factor."""

    factor: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "factor", float(self.factor))
        if not (self.factor > 0.0 and math.isfinite(self.factor)):
            raise ValueError("dilation factor must be positive")


@dataclass(frozen=True)
class Reflection:
    """Reflection in the vertical hyperplane {x : normal . x = offset}."""

    normal: tuple[float, ...]
    offset: float = 0.0

    def __post_init__(self) -> None:
        normal = _as_point(self.normal)
        norm = math.sqrt(math.fsum(c * c for c in normal))
        if norm == 0.0:
            raise ValueError("reflection normal must be nonzero")
        object.__setattr__(self, "normal", tuple(c / norm for c in normal))
        object.__setattr__(self, "offset", float(self.offset) / norm)


Generator = Union[Translation, Dilation, Reflection, InversionSphere]


def apply_generator(p: KissingSphere, g: Generator) -> KissingSphere:
    """Act on a kissing sphere by one boundary-preserving generator.

    Translations and reflections move tangent points and preserve diameters
    and heights; dilations scale tangent point, diameter, and height alike;
    inversions delegate to invert.
    """
    if isinstance(g, Translation):
        if isinstance(p, Plane):
            return p
        if len(g.offset) != len(p.tangent):
            raise ValueError("ambient dimensions differ")
        return Sphere(
            tangent=tuple(t + d for t, d in zip(p.tangent, g.offset)),
            diameter=p.diameter,
        )
    if isinstance(g, Dilation):
        if isinstance(p, Plane):
            return Plane(height=p.height * g.factor)
        return Sphere(
            tangent=tuple(g.factor * t for t in p.tangent),
            diameter=p.diameter * g.factor,
        )
    if isinstance(g, Reflection):
        if isinstance(p, Plane):
            return p
        if len(g.normal) != len(p.tangent):
            raise ValueError("ambient dimensions differ")
        shift = 2.0 * (math.fsum(u * t for u, t in zip(g.normal, p.tangent)) - g.offset)
        return Sphere(
            tangent=tuple(t - shift * u for t, u in zip(p.tangent, g.normal)),
            diameter=p.diameter,
        )
    if isinstance(g, InversionSphere):
        return invert(p, g)
    raise TypeError(f"unsupported generator {type(g).__name__}")


def normalize_pair(p: KissingSphere, q: KissingSphere) -> InversionSphere | None:
    """Inversion sphere whose action gives both spheres diameter one.

    For two finite spheres with distinct tangent points the center sits on the
    segment between the tangent points, at distance gap * sqrt(phi_p) /
    (sqrt(phi_p) + sqrt(phi_q)) from t(p), with radius gap / (sqrt(phi_p) +
    sqrt(phi_q)). For a hyperplane at height h against a finite sphere, any
    center at distance sqrt(h * phi_q) from t(q) with radius sqrt(h) works;
    the center is placed along the first boundary coordinate. Returns None
    when no normalizing map exists: a shared tangent point, two hyperplanes,
    or a hyperplane pair in ambient dimension one (the boundary then has no
    room to offset the center).
    """
    if isinstance(p, Plane) and isinstance(q, Plane):
        return None
    if isinstance(p, Plane) or isinstance(q, Plane):
        plane, ball = (p, q) if isinstance(p, Plane) else (q, p)
        if len(ball.tangent) == 0:
            return None
        reach = math.sqrt(plane.height * ball.diameter)
        center = (ball.tangent[0] + reach,) + ball.tangent[1:]
        return InversionSphere(center=center, radius=math.sqrt(plane.height))
    if p.tangent == q.tangent:
        return None
    gap = _gap(p, q)
    root_p = math.sqrt(p.diameter)
    root_q = math.sqrt(q.diameter)
    weight = root_p / (root_p + root_q)
    center = tuple(a + weight * (b - a) for a, b in zip(p.tangent, q.tangent))
    return InversionSphere(center=center, radius=gap / (root_p + root_q))


def distance_matrix(spheres: Sequence[KissingSphere]) -> np.ndarray:
    """Symmetric matrix of squared pairwise distances with zero diagonal."""
    items = list(spheres)
    if not items:
        raise ValueError("need at least one sphere")
    dims = {s.ambient_dim for s in items if isinstance(s, Sphere)}
    if len(dims) > 1:
        raise ValueError("mixed ambient dimensions")
    m = len(items)
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = out[j, i] = distance_sq(items[i], items[j])
    return out
