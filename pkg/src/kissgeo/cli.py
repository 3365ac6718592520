"""File-driven command line over the library.

Subcommands: dist, classify, check, embed, lightcone, spheres, complete,
witness. Inputs are JSON files ("-" reads stdin); every output is a single
JSON document on stdout, diagnostics go to stderr. Exit codes: 0 success or
feasible, 1 certified infeasible / not embeddable / not chordal (witness on
stdout), 2 malformed input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import completion, embed, io, kissing, lightcone, spheres
from .lightcone import AlignmentError
from .numkernel import (
    GramInfeasibleError,
    NonConvergenceError,
    SingularPivotError,
    Tolerance,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_BAD_INPUT = 2
EXIT_NUMERICAL = 3


def _read_json(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return json.loads(text)


def _emit(payload, output: str | None) -> None:
    text = io.format_json(payload)
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _witness_payload(witness) -> object:
    if witness is None:
        return None
    if isinstance(witness, embed.MinorWitness):
        return {"type": "minor", "subset": list(witness.subset), "signed_minor": witness.signed_minor}
    if isinstance(witness, embed.RankWitness):
        return {"type": "rank", "rank": witness.rank, "bound": witness.bound}
    if isinstance(witness, embed.InertiaWitness):
        return {
            "type": "inertia",
            "inertia": list(witness.inertia),
            "requirement": witness.requirement,
        }
    return {"type": "diagnostic", "detail": str(witness)}


def _certificate_payload(certificate: embed.Certificate, n: int) -> dict:
    return {
        "verdict": certificate.verdict,
        "method": certificate.method,
        "n": n,
        "witness": _witness_payload(certificate.witness),
    }


def _tolerance(args) -> Tolerance:
    return Tolerance(eig_zero=args.eig_zero, residual=args.residual)


def _cmd_dist(args) -> int:
    n, sphere_set = io.load_sphere_set(_read_json(args.input))
    m = len(sphere_set)
    rows = [[kissing.distance(sphere_set[i], sphere_set[j]) for j in range(m)] for i in range(m)]
    _emit({"n": n, "d": rows}, args.output)
    return EXIT_OK


def _cmd_classify(args) -> int:
    n, sphere_set = io.load_sphere_set(_read_json(args.input))
    pairs = []
    for i in range(len(sphere_set)):
        for j in range(i + 1, len(sphere_set)):
            relation = kissing.classify_pair(sphere_set[i], sphere_set[j])
            pairs.append({"i": i, "j": j, "class": relation.value})
    _emit({"n": n, "pairs": pairs}, args.output)
    return EXIT_OK


def _cmd_check(args) -> int:
    tol = _tolerance(args)
    diagonal = -1.0 if args.mode == "spheres" else 0.0
    _, matrix = io.load_matrix(_read_json(args.input), diagonal=diagonal)
    if args.mode == "kissing":
        certificate = embed.check_kissing(matrix, args.n, args.method, tol)
    elif args.mode == "euclidean":
        certificate = embed.check_euclidean(matrix, args.n, args.method, tol)
    else:
        certificate = spheres.check_spheres(matrix, args.n, args.method, tol)
    _emit(_certificate_payload(certificate, args.n), args.output)
    return EXIT_OK if certificate.embeddable else EXIT_INFEASIBLE


def _cmd_embed(args) -> int:
    tol = _tolerance(args)
    _, matrix = io.load_matrix(_read_json(args.input))
    certificate = embed.check_kissing(matrix, args.n, "inertia", tol)
    if not certificate.embeddable:
        _emit(_certificate_payload(certificate, args.n), args.output)
        return EXIT_INFEASIBLE
    realized = embed.construct_embedding(matrix, args.n, tol)
    _emit(io.dump_sphere_set(args.n, realized), args.output)
    return EXIT_OK


def _cmd_lightcone(args) -> int:
    tol = _tolerance(args)
    payload = _read_json(args.input)
    if args.inverse:
        n, vectors = io.load_vectors(payload)
        recovered = [lightcone.from_lightcone(row, tol) for row in vectors]
        _emit(io.dump_sphere_set(n, recovered), args.output)
        return EXIT_OK
    n, sphere_set = io.load_sphere_set(payload)
    vectors = [lightcone.to_lightcone(s, n) for s in sphere_set]
    _emit(io.dump_vectors(n, np.stack(vectors)), args.output)
    return EXIT_OK


def _cmd_spheres(args) -> int:
    n, sphere_set = io.load_euclidean_spheres(_read_json(args.input))
    matrix = spheres.separation_matrix(sphere_set)
    payload = io.dump_matrix(matrix, diagonal=-1.0)
    payload["n"] = n
    payload["hyperboloid"] = [
        [float(x) for x in spheres.hyperboloid_embed(s)] for s in sphere_set
    ]
    _emit(payload, args.output)
    return EXIT_OK


def _cmd_complete(args) -> int:
    tol = _tolerance(args)
    graph = io.load_graph(_read_json(args.input))
    result = completion.complete_chordal(graph, args.n, tol)
    if result.verdict == completion.COMPLETED:
        payload = {
            "verdict": result.verdict,
            "d2": [[float(x) for x in row] for row in result.full_matrix],
            "embedding": [[float(x) for x in row] for row in result.embedding],
        }
        _emit(payload, args.output)
        return EXIT_OK
    if result.verdict == completion.NOT_CHORDAL:
        _emit({"verdict": result.verdict, "witness_cycle": list(result.witness)}, args.output)
        return EXIT_INFEASIBLE
    witness = result.witness
    if isinstance(witness, completion.CliqueCheck):
        payload = {
            "verdict": result.verdict,
            "clique": list(witness.clique),
            "certificate": _certificate_payload(witness.certificate, args.n),
            "diagnostic": witness.diagnostic,
        }
    else:
        payload = {"verdict": result.verdict, "diagnostic": str(witness)}
    _emit(payload, args.output)
    return EXIT_INFEASIBLE


def _cmd_witness(args) -> int:
    graph = io.load_graph(_read_json(args.input))
    chordality = completion.is_chordal(graph)
    if chordality.chordal:
        _emit({"error": "graph is chordal; no witness exists"}, args.output)
        return EXIT_INFEASIBLE
    lengths = completion.non_chordal_witness(graph)
    payload = io.dump_graph(lengths)
    payload["cycle"] = list(chordality.cycle)
    _emit(payload, args.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kissgeo",
        description="Distance geometry for kissing spheres: distances, certificates, "
        "embeddings, lightcone maps, and chordal completion.",
    )
    parser.add_argument("--eig-zero", type=float, default=1e-9,
                        help="relative eigenvalue cutoff (default 1e-9)")
    parser.add_argument("--residual", type=float, default=1e-8,
                        help="max factorization residual (default 1e-8)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str, needs_n: bool = False):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("input", help="input JSON path, or - for stdin")
        cmd.add_argument("-o", "--output", default=None, help="output path (default stdout)")
        if needs_n:
            cmd.add_argument("--n", type=int, required=True, help="ambient dimension")
        cmd.set_defaults(handler=handler)
        return cmd

    add("dist", _cmd_dist, "pairwise distance matrix of a kissing-sphere set")
    add("classify", _cmd_classify, "pair classification of a kissing-sphere set")
    check = add("check", _cmd_check, "embeddability certificate for a matrix file", needs_n=True)
    check.add_argument("--mode", choices=["kissing", "euclidean", "spheres"], required=True)
    check.add_argument("--method", choices=["minors", "inertia"], default="inertia")
    add("embed", _cmd_embed, "recover a kissing-sphere set from a distance matrix", needs_n=True)
    cone = add("lightcone", _cmd_lightcone, "map sphere sets to null vectors and back")
    cone.add_argument("--inverse", action="store_true", help="map vectors back to spheres")
    add("spheres", _cmd_spheres, "separation matrix and pseudosphere vectors of Euclidean spheres")
    add("complete", _cmd_complete, "complete a chordal length graph", needs_n=True)
    add("witness", _cmd_witness, "counterexample lengths for a non-chordal graph")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (io.SchemaError, json.JSONDecodeError, OSError) as exc:
        print(f"kissgeo: input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (
        embed.RealizationError,
        AlignmentError,
        GramInfeasibleError,
        NonConvergenceError,
        SingularPivotError,
    ) as exc:
        sys.stdout.write(io.format_json({"error": str(exc)}) + "\n")
        print(f"kissgeo: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError) as exc:
        print(f"kissgeo: invalid request: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
