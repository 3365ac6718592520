"""Distance completion on chordal graphs.

Given edge lengths on a chordal graph, each maximal clique is realized by
kissing spheres, mapped to future null vectors, and the cliques are glued
along the clique tree by orthochronous alignments of their shared separator
vectors. The resulting vector system fills in every missing entry; the
completed matrix is verified against the four target conditions (zero
diagonal, edge agreement, rank at most n + 1, one positive eigenvalue) before
being returned. Non-chordal graphs are refused with a chordless-cycle
witness, and a length assignment built from such a cycle shows why: every
clique stays feasible while the cycle itself cannot close up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import numkernel
from .embed import (
    Certificate,
    RealizationError,
    check_kissing,
    construct_embedding,
    is_degenerate_zero,
)
from .lightcone import AlignmentError, lorentz_align, to_lightcone
from .numkernel import DEFAULT_TOL, GramInfeasibleError, Tolerance, signature_form

COMPLETED = "Completed"
INFEASIBLE = "Infeasible"
NOT_CHORDAL = "NotChordal"


@dataclass(frozen=True)
class LengthGraph:
    """Undirected graph with nonnegative edge lengths; edges are normalized to
    (u, v, length) with u < v and sorted."""

    vertex_count: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValueError("vertex count must be positive")
        seen: set[tuple[int, int]] = set()
        normalized = []
        for u, v, length in self.edges:
            u, v, length = int(u), int(v), float(length)
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError("self-loops are not allowed")
            if not (length >= 0.0 and math.isfinite(length)):
                raise ValueError("edge lengths must be finite and nonnegative")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append((key[0], key[1], length))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        sets: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v, _ in self.edges:
            sets[u].add(v)
            sets[v].add(u)
        return tuple(frozenset(s) for s in sets)

    @cached_property
    def _lengths(self) -> dict[tuple[int, int], float]:
        return {(u, v): length for u, v, length in self.edges}

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._lengths

    def length(self, u: int, v: int) -> float:
        return self._lengths[(min(u, v), max(u, v))]


@dataclass(frozen=True)
class Chordality:
    chordal: bool
    peo: tuple[int, ...] | None
    cycle: tuple[int, ...] | None


@dataclass(frozen=True)
class CliqueTree:
    """Maximal cliques (sorted tuples) and tree edges labeled by separators."""

    cliques: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, tuple[int, ...]], ...]


@dataclass(frozen=True)
class CliqueCheck:
    clique: tuple[int, ...]
    certificate: Certificate
    realized: bool
    diagnostic: str | None


@dataclass(frozen=True)
class CompletionResult:
    verdict: str
    full_matrix: np.ndarray | None = None
    embedding: np.ndarray | None = None
    witness: object = None

    @property
    def completed(self) -> bool:
        return self.verdict == COMPLETED


def mcs_order(graph: LengthGraph) -> tuple[int, ...]:
    """Maximum-cardinality search order; ties go to the lowest vertex index."""
    adjacency = graph.adjacency
    m = graph.vertex_count
    weight = [0] * m
    remaining = set(range(m))
    order = []
    while remaining:
        best = max(weight[v] for v in remaining)
        v = min(u for u in remaining if weight[u] == best)
        order.append(v)
        remaining.remove(v)
        for w in adjacency[v]:
            if w in remaining:
                weight[w] += 1
    return tuple(order)


def _peo_violation(graph: LengthGraph, peo) -> tuple[int, int, int] | None:
    pos = {v: i for i, v in enumerate(peo)}
    adjacency = graph.adjacency
    for v in peo:
        later = [w for w in adjacency[v] if pos[w] > pos[v]]
        if not later:
            continue
        first = min(later, key=pos.__getitem__)
        for w in later:
            if w != first and w not in adjacency[first]:
                return (v, first, w)
    return None


def _shortest_path(adjacency, start: int, goal: int, blocked: set[int]) -> list[int] | None:
    if start == goal:
        return [start]
    parents = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(adjacency[v]):
                if w in blocked or w in parents:
                    continue
                parents[w] = v
                if w == goal:
                    path = [w]
                    while parents[path[-1]] is not None:
                        path.append(parents[path[-1]])
                    return path[::-1]
                nxt.append(w)
        frontier = nxt
    return None


def _chordless_cycle(graph: LengthGraph) -> tuple[int, ...] | None:
    """First chordless cycle of length >= 4 in a deterministic scan.

    For a vertex v with non-adjacent neighbors u, w, a shortest u-w path
    avoiding the rest of v's closed neighborhood closes a cycle with no
    chords.
    """
    adjacency = graph.adjacency
    for v in range(graph.vertex_count):
        for u, w in combinations(sorted(adjacency[v]), 2):
            if w in adjacency[u]:
                continue
            blocked = ({v} | set(adjacency[v])) - {u, w}
            path = _shortest_path(adjacency, u, w, blocked)
            if path is not None:
                return (v, *path)
    return None


def is_chordal(graph: LengthGraph) -> Chordality:
    """Chordality via maximum-cardinality search with elimination verification.

    On success carries the perfect elimination ordering; on failure carries a
    chordless cycle of length at least four.
    """
    peo = tuple(reversed(mcs_order(graph)))
    if _peo_violation(graph, peo) is None:
        return Chordality(True, peo, None)
    cycle = _chordless_cycle(graph)
    if cycle is None:
        raise RuntimeError("elimination check failed but no chordless cycle was found")
    return Chordality(False, None, cycle)


def maximal_cliques(graph: LengthGraph, peo) -> CliqueTree:
    """Clique tree of a chordal graph along an elimination ordering.

    The tree is the maximum-weight spanning tree of the clique-intersection
    graph with separator sizes as weights, ties broken lexicographically, so
    the running-intersection property holds.
    """
    if sorted(peo) != list(range(graph.vertex_count)):
        raise ValueError("elimination ordering must be a permutation of the vertices")
    if _peo_violation(graph, peo) is not None:
        raise ValueError("ordering is not a perfect elimination ordering (graph not chordal?)")
    pos = {v: i for i, v in enumerate(peo)}
    adjacency = graph.adjacency
    candidates = [
        frozenset({v} | {w for w in adjacency[v] if pos[w] > pos[v]}) for v in peo
    ]
    maximal = {
        tuple(sorted(c))
        for c in candidates
        if not any(c < other for other in candidates)
    }
    cliques = tuple(sorted(maximal))
    k = len(cliques)
    pairs = sorted(
        ((i, j) for i in range(k) for j in range(i + 1, k)),
        key=lambda ij: (-len(set(cliques[ij[0]]) & set(cliques[ij[1]])), ij),
    )
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edges = []
    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        parent[ri] = rj
        separator = tuple(sorted(set(cliques[i]) & set(cliques[j])))
        edges.append((i, j, separator))
    return CliqueTree(cliques, tuple(edges))


def _all_maximal_cliques(graph: LengthGraph) -> tuple[tuple[int, ...], ...]:
    """Maximal cliques of an arbitrary graph (deterministic Bron-Kerbosch)."""
    adjacency = [set(s) for s in graph.adjacency]
    out: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda v: len(adjacency[v] & p))
        for v in sorted(p - adjacency[pivot]):
            expand(r | {v}, p & adjacency[v], x & adjacency[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(graph.vertex_count)), set())
    return tuple(sorted(out))


def _clique_matrix(graph: LengthGraph, clique) -> np.ndarray:
    k = len(clique)
    d = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            length = graph.length(clique[i], clique[j])
            d[i, j] = d[j, i] = length * length
    return d


def clique_feasible(graph: LengthGraph, n: int, tol: Tolerance = DEFAULT_TOL,
                    ) -> tuple[bool, tuple[CliqueCheck, ...]]:
    """Per-clique realizability at dimension n, with certificates.

    Each maximal clique is fully specified, so its squared-length matrix is
    checked and then actually realized; a clique whose certificate passes but
    whose construction fails (a degenerate zero-distance pattern) is demoted
    to infeasible. Non-chordal graphs are handled through full maximal-clique
    enumeration, capped at clique size 12.
    """
    chordality = is_chordal(graph)
    if chordality.chordal:
        cliques = maximal_cliques(graph, chordality.peo).cliques
    else:
        cliques = _all_maximal_cliques(graph)
        if any(len(c) > 12 for c in cliques):
            raise ValueError("clique size cap exceeded on a non-chordal input")
    checks = []
    for clique in cliques:
        d = _clique_matrix(graph, clique)
        certificate = check_kissing(d, n, "inertia", tol)
        realized = False
        diagnostic = None
        if certificate.embeddable:
            try:
                construct_embedding(d, n, tol)
                realized = True
            except RealizationError as exc:
                diagnostic = str(exc)
        else:
            diagnostic = "certificate: not embeddable"
        checks.append(CliqueCheck(clique, certificate, realized, diagnostic))
    return all(c.realized for c in checks), tuple(checks)


def _anchored_null_vector(anchors: np.ndarray, targets: np.ndarray, eta: np.ndarray,
                          tol: Tolerance) -> np.ndarray:
    """Future null vector z with <z, anchor_i> = -targets_i for every anchor.

    Least-squares on the linear product constraints, then a null-space
    correction chosen along an eigendirection of the residual form to land on
    the cone exactly.
    """
    system = anchors @ eta
    rhs = -targets
    particular, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    scale = max(1.0, float(np.abs(targets).max()), float(np.abs(anchors).max()) ** 2)
    if float(np.linalg.norm(system @ particular - rhs)) > tol.residual * scale:
        raise AlignmentError("anchored gluing: product constraints are inconsistent")
    _, singular, vt = np.linalg.svd(system)
    rank = int(np.sum(singular > max(singular[0], 1.0) * 1e-12)) if singular.size else 0
    null_basis = vt[rank:].T
    base_norm = float(particular @ eta @ particular)
    if null_basis.shape[1] == 0:
        if abs(base_norm) > tol.residual * scale:
            raise AlignmentError("anchored gluing: constrained vector is not null")
        candidate = particular
    else:
        form = null_basis.T @ eta @ null_basis
        form = (form + form.T) / 2.0
        cross = null_basis.T @ eta @ particular
        values, vecs = np.linalg.eigh(form)
        order = np.argsort(-np.abs(values), kind="stable")
        candidate = None
        for idx in order:
            quad = float(values[idx])
            lin = 2.0 * float(cross @ vecs[:, idx])
            if abs(quad) <= 1e-14:
                if abs(lin) <= 1e-14:
                    continue
                alpha = -base_norm / lin
            else:
                disc = lin * lin - 4.0 * quad * base_norm
                if disc < 0.0:
                    continue
                root = math.sqrt(disc)
                options = [(-lin - root) / (2.0 * quad), (-lin + root) / (2.0 * quad)]
                alpha = min(options, key=abs)
            candidate = particular + alpha * (null_basis @ vecs[:, idx])
            break
        if candidate is None:
            raise AlignmentError("anchored gluing: no null solution along the residual form")
    if candidate[-1] <= 0.0:
        raise AlignmentError("anchored gluing: solution is not future-directed")
    return candidate


@dataclass(frozen=True)
class TargetReport:
    """The four target-matrix conditions, reported independently.

    Edge agreement is enforced in the forward direction only: entries on
    edges must match the squared lengths; non-edge entries are free.
    """

    diagonal_ok: bool
    edges_ok: bool
    rank_ok: bool
    signature_ok: bool
    failures: tuple[str, ...]

    @property
    def satisfied(self) -> bool:
        return self.diagonal_ok and self.edges_ok and self.rank_ok and self.signature_ok


def verify_target_matrix(matrix, graph: LengthGraph, n: int, tol: Tolerance = DEFAULT_TOL,
                         edge_rtol: float = 1e-7) -> TargetReport:
    d = numkernel.as_symmetric(matrix)
    if d.shape[0] != graph.vertex_count:
        raise ValueError("matrix order must equal the vertex count")
    failures = []
    scale = max(1.0, float(np.abs(d).max()))
    diagonal_ok = float(np.abs(np.diag(d)).max()) <= 1e-12 * scale
    if not diagonal_ok:
        failures.append("diagonal is not zero")
    edges_ok = True
    for u, v, length in graph.edges:
        expected = length * length
        if abs(d[u, v] - expected) > edge_rtol * (1.0 + expected):
            edges_ok = False
            failures.append(f"edge ({u}, {v}) entry {d[u, v]!r} != squared length {expected!r}")
    if is_degenerate_zero(d):
        rank_ok = True
        signature_ok = True
    else:
        counts = numkernel.inertia(d, tol)
        rank_ok = counts.rank <= n + 1
        if not rank_ok:
            failures.append(f"rank {counts.rank} exceeds n + 1 = {n + 1}")
        signature_ok = counts.positive == 1
        if not signature_ok:
            failures.append(f"{counts.positive} positive eigenvalues instead of one")
    return TargetReport(diagonal_ok, edges_ok, rank_ok, signature_ok, tuple(failures))


def complete_chordal(graph: LengthGraph, n: int, tol: Tolerance = DEFAULT_TOL, *,
                     root_index: int | None = None) -> CompletionResult:
    """Complete the missing distances of a chordal length graph at dimension n.

    Each maximal clique is realized and mapped to future null vectors; the
    clique tree is traversed from the root, composing per-edge separator
    alignments so that every clique's vectors land in the root frame (which
    makes the completed matrix independent of the root choice). When a
    separator is too degenerate to align, the child's private vertices are
    re-solved directly against the already-placed anchors. The completed
    matrix is verified against the target conditions before being returned.
    """
    chordality = is_chordal(graph)
    if not chordality.chordal:
        return CompletionResult(NOT_CHORDAL, witness=chordality.cycle)
    tree = maximal_cliques(graph, chordality.peo)
    cliques = tree.cliques
    count = len(cliques)
    if root_index is None:
        root_index = 0
    if not (0 <= root_index < count):
        raise ValueError("root index out of range")

    embeddings = []
    for clique in cliques:
        d = _clique_matrix(graph, clique)
        try:
            spheres = construct_embedding(d, n, tol)
        except (GramInfeasibleError, RealizationError) as exc:
            certificate = check_kissing(d, n, "inertia", tol)
            return CompletionResult(
                INFEASIBLE,
                witness=CliqueCheck(clique, certificate, False, str(exc)),
            )
        embeddings.append(np.stack([to_lightcone(s, n) for s in spheres]))

    neighbors: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(count)]
    for i, j, separator in tree.edges:
        neighbors[i].append((j, separator))
        neighbors[j].append((i, separator))

    eta = signature_form(n + 1)
    placed: dict[int, np.ndarray] = {}
    transports: list[np.ndarray | None] = [None] * count
    transports[root_index] = np.eye(n + 1)
    for local, vertex in enumerate(cliques[root_index]):
        placed[vertex] = embeddings[root_index][local]

    frontier = [root_index]
    visited = {root_index}
    while frontier:
        next_frontier = []
        for parent in frontier:
            for child, separator in sorted(neighbors[parent]):
                if child in visited:
                    continue
                visited.add(child)
                child_vertices = cliques[child]
                child_vectors = embeddings[child]
                sep_local = [child_vertices.index(v) for v in separator]
                transport = None
                if not separator:
                    transport = (
                        transports[parent]
                        if transports[parent] is not None
                        else np.eye(n + 1)
                    )
                else:
                    x_sep = child_vectors[sep_local]
                    if transports[parent] is not None:
                        parent_local = [cliques[parent].index(v) for v in separator]
                        y_sep = embeddings[parent][parent_local]
                        try:
                            edge_map = lorentz_align(x_sep, y_sep, tol)
                            transport = transports[parent] @ edge_map
                        except AlignmentError:
                            transport = None
                    if transport is None:
                        y_placed = np.stack([placed[v] for v in separator])
                        try:
                            transport = lorentz_align(x_sep, y_placed, tol)
                        except AlignmentError:
                            transport = None
                if transport is not None:
                    transports[child] = transport
                    for local, vertex in enumerate(child_vertices):
                        if vertex not in placed:
                            placed[vertex] = transport @ child_vectors[local]
                else:
                    # Degenerate separator: solve the child's private vertices
                    # against the placed anchors, sequentially.
                    try:
                        anchor_vertices = list(separator)
                        for local, vertex in enumerate(child_vertices):
                            if vertex in placed:
                                continue
                            anchors = np.stack([placed[v] for v in anchor_vertices])
                            targets = np.array(
                                [graph.length(vertex, v) ** 2 for v in anchor_vertices]
                            )
                            placed[vertex] = _anchored_null_vector(anchors, targets, eta, tol)
                            anchor_vertices.append(vertex)
                    except AlignmentError as exc:
                        return CompletionResult(
                            INFEASIBLE,
                            witness=(
                                f"gluing of clique {child_vertices} onto separator "
                                f"{separator} failed: {exc}"
                            ),
                        )
                next_frontier.append(child)
        frontier = next_frontier

    vectors = np.stack([placed[v] for v in range(graph.vertex_count)])
    gram = vectors @ eta @ vectors.T
    full = -(gram + gram.T) / 2.0
    lowest = float(full.min())
    if lowest < -tol.residual * max(1.0, float(np.abs(full).max())):
        return CompletionResult(
            INFEASIBLE, witness=f"completed matrix has a negative entry {lowest!r}"
        )
    full = np.maximum(full, 0.0)
    np.fill_diagonal(full, 0.0)
    report = verify_target_matrix(full, graph, n, tol)
    if not report.satisfied:
        return CompletionResult(
            INFEASIBLE, witness="target verification failed: " + "; ".join(report.failures)
        )
    return CompletionResult(COMPLETED, full_matrix=full, embedding=vectors)


def non_chordal_witness(graph: LengthGraph) -> LengthGraph:
    """Length assignment certifying that clique feasibility is not enough on a
    non-chordal graph.

    From a chordless cycle, the first cycle edge gets length one, as does
    every edge with exactly one end on the cycle; all other edges get zero.
    Every clique stays realizable, but the zero-length chain around the cycle
    forces its endpoints together, contradicting the unit edge.
    """
    chordality = is_chordal(graph)
    if chordality.chordal:
        raise ValueError("graph is chordal; no witness exists")
    cycle = chordality.cycle
    on_cycle = set(cycle)
    first_edge = (min(cycle[0], cycle[1]), max(cycle[0], cycle[1]))
    edges = []
    for u, v, _ in graph.edges:
        if (u, v) == first_edge:
            value = 1.0
        elif (u in on_cycle) != (v in on_cycle):
            value = 1.0
        else:
            value = 0.0
        edges.append((u, v, value))
    return LengthGraph(graph.vertex_count, tuple(edges))
