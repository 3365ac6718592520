"""Shared random-instance samplers for the test suite."""

import numpy as np

from kissgeo import LengthGraph, Plane, Sphere, distance
from kissgeo.kissing import InversionSphere


def random_sphere(rng, n, spread=2.0):
    tangent = tuple(float(c) for c in spread * rng.normal(size=n - 1))
    return Sphere(tangent=tangent, diameter=float(np.exp(rng.uniform(-1.0, 1.0))))


def random_plane(rng):
    return Plane(height=float(np.exp(rng.uniform(-1.0, 1.0))))


def random_sphere_set(rng, size, n, plane_chance=0.0):
    out = []
    for _ in range(size):
        if plane_chance and rng.uniform() < plane_chance and not any(
            isinstance(s, Plane) for s in out
        ):
            out.append(random_plane(rng))
        else:
            out.append(random_sphere(rng, n))
    return out


def random_inversion(rng, n, avoid=(), min_gap=0.3):
    """Inversion sphere whose center keeps a safe distance from given tangent points."""
    for _ in range(100):
        center = tuple(float(c) for c in 3.0 * rng.normal(size=n - 1))
        if all(
            np.linalg.norm(np.array(center) - np.array(t)) > min_gap for t in avoid
        ):
            return InversionSphere(center=center, radius=float(np.exp(rng.uniform(-0.5, 0.5))))
    raise RuntimeError("could not sample an inversion center away from the tangent points")


def random_chordal_graph(rng, vertices, clique_size=3):
    """Connected chordal graph built by attaching each new vertex to a clique
    subset of an existing maximal clique."""
    assert vertices >= 2
    edges = set()
    cliques = [[0]]
    for v in range(1, vertices):
        base = cliques[rng.integers(len(cliques))]
        take = int(rng.integers(1, min(len(base), clique_size) + 1))
        picked = sorted(rng.choice(base, size=take, replace=False).tolist())
        for u in picked:
            edges.add((min(u, v), max(u, v)))
        cliques.append(picked + [v])
    return sorted(edges)


def graph_from_configuration(rng, vertices, n, clique_size=3):
    """Chordal graph whose edge lengths come from an actual sphere configuration,
    so every clique (and the whole instance) is realizable."""
    spheres = [random_sphere(rng, n) for _ in range(vertices)]
    edges = random_chordal_graph(rng, vertices, clique_size)
    lengths = tuple(
        (u, v, distance(spheres[u], spheres[v])) for u, v in edges
    )
    return LengthGraph(vertices, lengths), spheres


def cycle_graph(length, edge_len=1.0):
    edges = tuple(
        (i, (i + 1) % length, edge_len) for i in range(length)
    )
    return LengthGraph(length, edges)
