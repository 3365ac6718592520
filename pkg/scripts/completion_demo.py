#!/usr/bin/env python3
"""End-to-end completion demo.

Samples a chordal graph whose edge lengths come from an actual sphere
configuration, completes the missing distances through the clique tree, and
verifies the target conditions. Then shows the failure mode: a chordless
cycle with the adversarial length assignment, where every clique is feasible
but the graph is refused.
"""

import argparse

import numpy as np

from kissgeo.completion import (
    LengthGraph,
    clique_feasible,
    complete_chordal,
    is_chordal,
    maximal_cliques,
    non_chordal_witness,
    verify_target_matrix,
)
from kissgeo.kissing import Sphere, distance


def sample_instance(rng, vertices, n):
    spheres = [
        Sphere(tuple(2.0 * rng.normal(size=n - 1)), float(np.exp(rng.uniform(-1, 1))))
        for _ in range(vertices)
    ]
    edges = set()
    cliques = [[0]]
    for v in range(1, vertices):
        base = cliques[rng.integers(len(cliques))]
        take = int(rng.integers(1, min(len(base), 3) + 1))
        picked = sorted(rng.choice(base, size=take, replace=False).tolist())
        for u in picked:
            edges.add((u, v))
        cliques.append(picked + [v])
    lengths = tuple((u, v, distance(spheres[u], spheres[v])) for u, v in sorted(edges))
    return LengthGraph(vertices, lengths)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--vertices", type=int, default=8)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)

    graph = sample_instance(rng, args.vertices, args.n)
    print(f"chordal instance on {graph.vertex_count} vertices, {len(graph.edges)} edges")
    tree = maximal_cliques(graph, is_chordal(graph).peo)
    print(f"maximal cliques: {tree.cliques}")

    result = complete_chordal(graph, args.n)
    print(f"verdict: {result.verdict}")
    if result.completed:
        known = len(graph.edges)
        total = graph.vertex_count * (graph.vertex_count - 1) // 2
        print(f"filled in {total - known} of {total} off-diagonal entries")
        report = verify_target_matrix(result.full_matrix, graph, args.n)
        print(f"target conditions satisfied: {report.satisfied}")
        with np.printoptions(precision=4, suppress=True):
            print(result.full_matrix)

    print("\nnon-chordal refusal:")
    cycle = LengthGraph(5, tuple((i, (i + 1) % 5, 1.0) for i in range(5)))
    witness = non_chordal_witness(cycle)
    feasible, _ = clique_feasible(witness, args.n)
    print(f"adversarial lengths on a 5-cycle: {[(u, v, l) for u, v, l in witness.edges]}")
    print(f"every clique feasible: {feasible}")
    print(f"completion verdict: {complete_chordal(witness, args.n).verdict}")


if __name__ == "__main__":
    main()
