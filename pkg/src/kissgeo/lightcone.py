"""Null-vector model of kissing spheres.

A finite sphere (t, phi) maps to the future-directed null vector

    sqrt(2) / (2 phi) * (1 - |t|^2, 2 t, 1 + |t|^2)

in R^{n,1} (coordinate layout: n spatial coordinates, time last); a hyperplane
at height h maps to sqrt(2)/2 * (-h, 0, ..., 0, h). Minus the Minkowski inner
product of two images equals the squared sphere distance, so the map is an
isometry onto the future lightcone, and orthochronous Lorentz maps play the
role of the boundary-preserving conformal maps.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .kissing import KissingSphere, Plane, Sphere
from .numkernel import DEFAULT_TOL, ZERO_FLOOR, Tolerance, signature_form

SQRT2 = math.sqrt(2.0)

# A null vector is read as a hyperplane image only when x_0 + t cancels at
# rounding level. Anything larger is a genuine (possibly enormous) diameter:
# snapping it would silently discard its middle coordinates and perturb
# distances far beyond the round-trip contracts.
PLANE_SNAP_RTOL = 1e-12


class AlignmentError(ValueError):
    """No orthochronous Lorentz map reconciles the two vector systems."""


def _as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise ValueError("expected a Minkowski vector with at least 2 coordinates")
    return v


def minkowski_inner(x, y) -> float:
    vx, vy = _as_vector(x), _as_vector(y)
    if vx.size != vy.size:
        raise ValueError("dimension mismatch")
    return float(vx[:-1] @ vy[:-1] - vx[-1] * vy[-1])


def distance_sq(x, y) -> float:
    """Squared pre-metric on the future lightcone: minus the inner product."""
    return -minkowski_inner(x, y)


def is_null(x, tol: Tolerance = DEFAULT_TOL) -> bool:
    v = _as_vector(x)
    scale = max(1.0, float(v @ v))
    return abs(minkowski_inner(v, v)) <= tol.residual * scale


def is_future(x) -> bool:
    return float(_as_vector(x)[-1]) > 0.0


def to_lightcone(p: KissingSphere, n: int | None = None) -> np.ndarray:
    """Null image of a kissing sphere; n is required for hyperplanes."""
    if isinstance(p, Sphere):
        if n is not None and n != p.ambient_dim:
            raise ValueError(f"sphere has ambient dimension {p.ambient_dim}, not {n}")
        n = p.ambient_dim
        t = np.asarray(p.tangent, dtype=float)
        norm_sq = float(t @ t)
        c = SQRT2 / (2.0 * p.diameter)
        out = np.empty(n + 1)
        out[0] = c * (1.0 - norm_sq)
        out[1:n] = 2.0 * c * t
        out[n] = c * (1.0 + norm_sq)
        return out
    if n is None:
        raise ValueError("ambient dimension is required for a hyperplane")
    out = np.zeros(n + 1)
    out[0] = -p.height * SQRT2 / 2.0
    out[-1] = p.height * SQRT2 / 2.0
    return out


def from_lightcone(x, tol: Tolerance = DEFAULT_TOL) -> KissingSphere:
    """Kissing sphere whose null image is x; requires a future null vector.

    With w = x_0 + t: positive w gives diameter sqrt(2)/w and tangent point
    (middle spatial coordinates)/w, while w cancelling at rounding level gives
    the hyperplane at height sqrt(2) * t. Near the hyperplane locus the direct
    sum x_0 + t is dominated by cancellation noise, so w is recovered from the
    null relation instead: w = |mid|^2 / (t - x_0), whose denominator never
    cancels there.
    """
    v = _as_vector(x)
    top = float(np.abs(v).max())
    if top <= ZERO_FLOOR:
        raise ValueError("the zero vector is not on the future lightcone")
    if abs(minkowski_inner(v, v)) > tol.residual * max(1.0, top * top):
        raise ValueError("vector is not null to tolerance")
    if v[-1] <= 0.0:
        raise ValueError("vector is not future-directed")
    w = float(v[0] + v[-1])
    if w <= 1e-6 * top:
        spread = float(v[-1] - v[0])
        w = float(v[1:-1] @ v[1:-1]) / spread if spread > 0.0 else 0.0
    if w <= PLANE_SNAP_RTOL * top:
        return Plane(height=SQRT2 * float(v[-1]))
    return Sphere(tangent=tuple(v[1:-1] / w), diameter=SQRT2 / w)


def to_lightcone_curved(direction, diameter: float, kappa: float,
                        tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Null image of a sphere kissing a reference ball of curvature kappa.

    The diameter is signed (negative when the sphere surrounds the reference
    ball) and may be infinite, in which case the coefficient reduces to
    sqrt(2)/2. The locus kappa * diameter == -2 collapses to the zero vector;
    it is flagged with a warning rather than assigned a meaning.
    """
    if kappa == 0.0:
        raise ValueError("zero curvature: use to_lightcone")
    u = np.asarray(direction, dtype=float)
    if u.ndim != 1 or u.size == 0:
        raise ValueError("direction must be a nonempty vector")
    if abs(float(u @ u) - 1.0) > max(tol.residual, 1e-9):
        raise ValueError("direction must be a unit vector")
    if diameter == 0.0:
        raise ValueError("diameter must be nonzero")
    if math.isinf(diameter):
        coeff = SQRT2 / 2.0
    else:
        coeff = SQRT2 / 2.0 + SQRT2 / (kappa * diameter)
    if abs(coeff) <= 1e-12:
        warnings.warn(
            "degenerate curved image: curvature * diameter == -2 collapses to zero",
            RuntimeWarning,
            stacklevel=2,
        )
    return coeff * np.append(u, 1.0)


def apply_lorentz(transform, x) -> np.ndarray:
    mat = np.asarray(transform, dtype=float)
    v = _as_vector(x)
    if mat.shape != (v.size, v.size):
        raise ValueError("dimension mismatch")
    return mat @ v


def compose(first, second) -> np.ndarray:
    """Map applying `second` first, then `first`."""
    a = np.asarray(first, dtype=float)
    b = np.asarray(second, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError("dimension mismatch")
    return a @ b


def lorentz_inverse(transform) -> np.ndarray:
    mat = np.asarray(transform, dtype=float)
    eta = signature_form(mat.shape[0])
    return eta @ mat.T @ eta


def is_lorentz(transform, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the map preserves the signature form and the direction of time."""
    mat = np.asarray(transform, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 2:
        return False
    eta = signature_form(mat.shape[0])
    scale = max(1.0, float(np.abs(mat).max()) ** 2)
    if float(np.abs(mat.T @ eta @ mat - eta).max()) > tol.residual * scale:
        return False
    return bool(mat[-1, -1] > 0.0)


def _null_partner(v: np.ndarray) -> np.ndarray:
    """Future null partner w of a future null v with <v, w> = -1."""
    t = float(v[-1])
    return np.append(-v[:-1], t) / (2.0 * t * t)


def _complement_frame(frame: np.ndarray, eta: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Orthonormal basis (w.r.t. the form) of the orthogonal complement of the
    frame's column span, columns ordered positive-norm first. Requires the
    span to be nondegenerate."""
    dim, k = frame.shape
    if k >= dim:
        return np.zeros((dim, 0)), ()
    _, _, vt = np.linalg.svd(frame.T @ eta)
    null_basis = vt[k:].T
    restricted = null_basis.T @ eta @ null_basis
    restricted = (restricted + restricted.T) / 2.0
    values, vecs = np.linalg.eigh(restricted)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vecs = vecs[:, order]
    if float(np.abs(values).min()) <= 1e-12 * max(1.0, float(np.abs(values).max())):
        raise AlignmentError("degenerate complement form")
    cols = null_basis @ vecs / np.sqrt(np.abs(values))
    signs = tuple(1 if v > 0 else -1 for v in values)
    return cols, signs


def lorentz_align(source, target, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthochronous Lorentz map sending each source vector to its target.

    Inputs must be equally long lists of zero or future-directed null vectors
    with matching pairwise Gram matrices; zero vectors may only correspond to
    zero vectors. The map is assembled frame-wise: a linearly independent
    subset of the sources, a hyperbolic partner when the span is a single null
    line, and matched orthonormal completions of the two orthogonal
    complements. The result is polished against form drift and verified
    against every input pair before being returned.
    """
    x = np.array(source, dtype=float, ndmin=2)
    y = np.array(target, dtype=float, ndmin=2)
    if x.shape != y.shape or x.ndim != 2 or x.shape[0] == 0:
        raise AlignmentError("need equally many source and target vectors")
    count, dim = x.shape
    if dim < 2:
        raise ValueError("vectors must have at least 2 coordinates")
    eta = signature_form(dim)

    gram_x = x @ eta @ x.T
    gram_y = y @ eta @ y.T
    gram_scale = max(1.0, float(np.abs(gram_x).max()), float(np.abs(gram_y).max()))
    if float(np.abs(gram_x - gram_y).max()) > tol.residual * gram_scale:
        raise AlignmentError("Gram mismatch between the vector systems")

    norms_x = np.linalg.norm(x, axis=1)
    norms_y = np.linalg.norm(y, axis=1)
    vec_scale = max(1.0, float(norms_x.max()), float(norms_y.max()))
    zero_cut = tol.eig_zero * vec_scale
    zero_x = norms_x <= zero_cut
    zero_y = norms_y <= zero_cut
    if np.any(zero_x != zero_y):
        raise AlignmentError("zero vectors must correspond to zero vectors")
    for rows, zeros, label in ((x, zero_x, "source"), (y, zero_y, "target")):
        for i in range(count):
            if zeros[i]:
                continue
            if abs(minkowski_inner(rows[i], rows[i])) > tol.residual * max(1.0, norms_x[i] ** 2, norms_y[i] ** 2):
                raise AlignmentError(f"{label} vector {i} is not null")
            if rows[i][-1] <= 0.0:
                raise AlignmentError(f"irreconcilable time orientation: {label} vector {i} is not future-directed")

    live = [i for i in range(count) if not zero_x[i]]
    if not live:
        return np.eye(dim)

    basis: list[int] = []
    ortho: list[np.ndarray] = []
    for i in live:
        r = x[i].copy()
        for u in ortho:
            r -= (u @ r) * u
        if np.linalg.norm(r) > 1e-9 * norms_x[i]:
            basis.append(i)
            ortho.append(r / np.linalg.norm(r))

    b = x[basis].T
    c = y[basis].T
    for i in live:
        coeff, *_ = np.linalg.lstsq(b, x[i], rcond=None)
        if np.linalg.norm(c @ coeff - y[i]) > tol.residual * vec_scale:
            raise AlignmentError(
                "dependent vectors map inconsistently (degenerate configuration)"
            )

    if len(basis) == 1:
        b = np.column_stack([b, _null_partner(b[:, 0])])
        c = np.column_stack([c, _null_partner(c[:, 0])])

    comp_x, signs_x = _complement_frame(b, eta)
    comp_y, signs_y = _complement_frame(c, eta)
    if signs_x != signs_y:
        raise AlignmentError("complement signatures differ")

    frame_x = np.column_stack([b, comp_x])
    frame_y = np.column_stack([c, comp_y])
    transform = frame_y @ np.linalg.inv(frame_x)

    identity = np.eye(dim)
    for _ in range(3):
        drift = transform.T @ eta @ transform - eta
        if float(np.abs(drift).max()) <= tol.residual * 1e-3:
            break
        transform = transform @ (1.5 * identity - 0.5 * (eta @ transform.T @ eta @ transform))

    if not is_lorentz(transform, tol):
        raise AlignmentError("alignment failed the Lorentz checks")
    residual = max(float(np.linalg.norm(transform @ x[i] - y[i])) for i in range(count))
    if residual > tol.residual * vec_scale:
        raise AlignmentError(f"alignment residual {residual:.3g} out of tolerance")
    return transform
