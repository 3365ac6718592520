"""JSON schemas for sphere sets, matrices, graphs, and vector lists.

All numeric output is rendered with 17 significant digits so that round trips
are lossless at double precision, and serialization is deterministic.
"""

from __future__ import annotations

import json
import math
from typing import Sequence

import numpy as np

from .completion import LengthGraph
from .kissing import KissingSphere, Plane, Sphere
from .spheres import EuclideanSphere


class SchemaError(ValueError):
    """Input does not conform to the expected JSON schema."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _number(value, message: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool), message)
    out = float(value)
    _require(math.isfinite(out), message)
    return out


def load_sphere_set(obj) -> tuple[int, list[KissingSphere]]:
    """{"n": int >= 2, "spheres": [{"t": [...], "phi": real} | {"h": real}, ...]}"""
    _require(isinstance(obj, dict), "sphere set must be a JSON object")
    n = obj.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 2, '"n" must be an integer >= 2')
    raw = obj.get("spheres")
    _require(isinstance(raw, list) and raw, '"spheres" must be a nonempty list')
    spheres: list[KissingSphere] = []
    for i, item in enumerate(raw):
        _require(isinstance(item, dict), f"sphere {i} must be an object")
        if "h" in item:
            _require(set(item) == {"h"}, f"sphere {i}: a hyperplane has only the key 'h'")
            height = _number(item["h"], f"sphere {i}: 'h' must be a finite number")
            _require(height > 0.0, f"sphere {i}: 'h' must be positive")
            spheres.append(Plane(height=height))
            continue
        _require(set(item) == {"t", "phi"}, f"sphere {i}: expected keys 't' and 'phi'")
        tangent = item["t"]
        _require(isinstance(tangent, list) and len(tangent) == n - 1,
                 f"sphere {i}: 't' must list {n - 1} coordinates")
        coords = tuple(_number(c, f"sphere {i}: tangent coordinates must be numbers") for c in tangent)
        phi = _number(item["phi"], f"sphere {i}: 'phi' must be a finite number")
        _require(phi > 0.0, f"sphere {i}: 'phi' must be positive")
        spheres.append(Sphere(tangent=coords, diameter=phi))
    return n, spheres


def dump_sphere_set(n: int, spheres: Sequence[KissingSphere]) -> dict:
    items = []
    for s in spheres:
        if isinstance(s, Plane):
            items.append({"h": s.height})
        else:
            items.append({"t": list(s.tangent), "phi": s.diameter})
    return {"n": n, "spheres": items}


def _load_square(rows, what: str) -> np.ndarray:
    _require(isinstance(rows, list) and rows, f'"{what}" must be a nonempty list of rows')
    m = len(rows)
    out = np.zeros((m, m))
    for i, row in enumerate(rows):
        _require(isinstance(row, list) and len(row) == m, f'"{what}" must be square')
        for j, value in enumerate(row):
            out[i, j] = _number(value, f'"{what}"[{i}][{j}] must be a finite number')
    return out


def load_matrix(obj, diagonal: float = 0.0) -> tuple[list[str] | None, np.ndarray]:
    """{"labels": [...] optional, "d2": [[...]], "diag": -1 marker for separations}.

    Validates symmetry to 1e-12 absolute and the expected diagonal; asymmetric
    input is rejected, never silently symmetrized.
    """
    _require(isinstance(obj, dict), "matrix input must be a JSON object")
    matrix = _load_square(obj.get("d2"), "d2")
    labels = obj.get("labels")
    if labels is not None:
        _require(isinstance(labels, list) and all(isinstance(x, str) for x in labels),
                 '"labels" must be a list of strings')
        _require(len(labels) == matrix.shape[0], '"labels" length must match the matrix order')
    if diagonal == -1.0:
        marker = obj.get("diag")
        _require(marker == -1, 'separation input must carry the marker "diag": -1')
    _require(float(np.abs(matrix - matrix.T).max()) <= 1e-12, "matrix must be symmetric (1e-12 absolute)")
    _require(float(np.abs(np.diag(matrix) - diagonal).max()) <= 1e-12,
             f"matrix diagonal must be {diagonal:g}")
    return labels, matrix


def dump_matrix(matrix, labels: Sequence[str] | None = None, diagonal: float = 0.0) -> dict:
    out: dict = {}
    if labels is not None:
        out["labels"] = list(labels)
    out["d2"] = [[float(x) for x in row] for row in np.asarray(matrix, dtype=float)]
    if diagonal == -1.0:
        out["diag"] = -1
    return out


def load_graph(obj) -> LengthGraph:
    """{"vertices": int, "edges": [{"u": int, "v": int, "len": real}, ...]}"""
    _require(isinstance(obj, dict), "graph input must be a JSON object")
    vertices = obj.get("vertices")
    _require(isinstance(vertices, int) and not isinstance(vertices, bool) and vertices >= 1,
             '"vertices" must be a positive integer')
    raw = obj.get("edges")
    _require(isinstance(raw, list), '"edges" must be a list')
    edges = []
    for i, item in enumerate(raw):
        _require(isinstance(item, dict) and {"u", "v", "len"} <= set(item),
                 f"edge {i} must carry 'u', 'v', 'len'")
        u, v = item["u"], item["v"]
        _require(isinstance(u, int) and isinstance(v, int), f"edge {i}: endpoints must be integers")
        length = _number(item["len"], f"edge {i}: 'len' must be a finite number")
        _require(length >= 0.0, f"edge {i}: 'len' must be nonnegative")
        edges.append((u, v, length))
    try:
        return LengthGraph(vertices, tuple(edges))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def dump_graph(graph: LengthGraph) -> dict:
    return {
        "vertices": graph.vertex_count,
        "edges": [{"u": u, "v": v, "len": length} for u, v, length in graph.edges],
    }


def load_vectors(obj) -> tuple[int, np.ndarray]:
    """{"n": int, "vectors": [[n+1 coordinates], ...]}"""
    _require(isinstance(obj, dict), "vector input must be a JSON object")
    n = obj.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1, '"n" must be a positive integer')
    raw = obj.get("vectors")
    _require(isinstance(raw, list) and raw, '"vectors" must be a nonempty list')
    out = np.zeros((len(raw), n + 1))
    for i, row in enumerate(raw):
        _require(isinstance(row, list) and len(row) == n + 1,
                 f"vector {i} must list {n + 1} coordinates")
        for j, value in enumerate(row):
            out[i, j] = _number(value, f"vector coordinate [{i}][{j}] must be a finite number")
    return n, out


def dump_vectors(n: int, vectors) -> dict:
    return {"n": n, "vectors": [[float(x) for x in row] for row in np.asarray(vectors, dtype=float)]}


def load_euclidean_spheres(obj) -> tuple[int, list[EuclideanSphere]]:
    """{"n": int, "spheres": [{"c": [...], "r": real}, ...]}"""
    _require(isinstance(obj, dict), "sphere input must be a JSON object")
    n = obj.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1, '"n" must be a positive integer')
    raw = obj.get("spheres")
    _require(isinstance(raw, list) and raw, '"spheres" must be a nonempty list')
    spheres = []
    for i, item in enumerate(raw):
        _require(isinstance(item, dict) and {"c", "r"} <= set(item),
                 f"sphere {i} must carry 'c' and 'r'")
        center = item["c"]
        _require(isinstance(center, list) and len(center) == n,
                 f"sphere {i}: 'c' must list {n} coordinates")
        coords = tuple(_number(c, f"sphere {i}: center coordinates must be numbers") for c in center)
        radius = _number(item["r"], f"sphere {i}: 'r' must be a finite number")
        _require(radius > 0.0, f"sphere {i}: 'r' must be positive")
        spheres.append(EuclideanSphere(center=coords, radius=radius))
    return n, spheres


def _format_value(value) -> str:
    if value is None or isinstance(value, (bool, str, int)):
        return json.dumps(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("cannot serialize a non-finite number")
        return "%.17g" % value
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    if isinstance(value, dict):
        parts = (f"{json.dumps(str(k))}: {_format_value(v)}" for k, v in value.items())
        return "{" + ", ".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def format_json(value) -> str:
    """Deterministic single-document rendering with %.17g floats."""
    return _format_value(value)
