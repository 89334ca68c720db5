"""Command line entry point: ``berge {extract,verify,oracle,gen,experiment}``.

Exit codes:
    0  success
    1  I/O or parse error
    2  precondition failed / certificate rejected
    3  internal defect or experiment counterexample
    4  oracle budget exhausted
"""

from __future__ import annotations

import argparse
import json
import sys

from berge import experiments
from berge.certificates import BergePath, verify
from berge.extractor import DefectError, extract, extract_theorem2
from berge.generators import GenerationError, GeneratorSpec
from berge.hypergraph import PreconditionError
from berge.io import (
    FormatError,
    dump_certificate,
    load_certificate,
    read_hypergraph,
    serialize_hypergraph,
    write_atomic,
)
from berge.oracle import DEFAULT_BUDGET, BudgetExceeded, exists_cycle_through, exists_path_from, longest_berge_path

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_DEFECT, EXIT_BUDGET = 0, 1, 2, 3, 4


def _fail(code: int, reason: str) -> int:
    print(json.dumps({"error": reason, "exit": code}), file=sys.stderr)
    return code


def cmd_extract(args) -> int:
    h = read_hypergraph(args.input)
    if args.mode == "theorem2":
        res = extract_theorem2(h)
    else:
        if args.vertex is None:
            raise PreconditionError("missing --vertex")
        res = extract(h, args.vertex)
    text = dump_certificate(h, res)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    h = read_hypergraph(args.hypergraph)
    with open(args.certificate) as fh:
        cert, claims, _ = load_certificate(fh.read())
    verdict = verify(h, cert)
    if not verdict:
        print(f"rejected: {verdict}")
        return EXIT_PRECONDITION
    if claims["length"] is not None and claims["length"] != cert.length:
        print(f"rejected: claimed length {claims['length']}, actual {cert.length}")
        return EXIT_PRECONDITION
    if isinstance(cert, BergePath) and claims["start_vertex"] not in (None, cert.start):
        print(f"rejected: claimed start {claims['start_vertex']}, actual {cert.start}")
        return EXIT_PRECONDITION
    if claims["edges"] is not None:
        actual = [sorted(h.edges[i]) for i in cert.edge_ids]
        if claims["edges"] != actual:
            print("rejected: listed edges do not match the hypergraph")
            return EXIT_PRECONDITION
    print(f"ok: {'cycle' if not isinstance(cert, BergePath) else 'path'} of length {cert.length}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    h = read_hypergraph(args.input)
    if args.longest:
        rep = longest_berge_path(h, args.budget)
        out = {
            "longest_path_length": rep.longest_path_length,
            "witness": None
            if rep.witness is None
            else {"vertices": list(rep.witness.vertices), "edge_ids": list(rep.witness.edge_ids)},
        }
    else:
        if args.k is None:
            raise PreconditionError("missing --k")
        if args.source is not None:
            found, wit = exists_path_from(h, args.source, args.k, args.budget)
            out = {"query": "path_from", "vertex": args.source, "k": args.k, "exists": found}
        elif args.cycle_through is not None:
            found, wit = exists_cycle_through(h, args.cycle_through, args.k, args.budget)
            out = {"query": "cycle_through", "vertex": args.cycle_through, "k": args.k, "exists": found}
        else:
            raise PreconditionError("one of --longest, --from, --cycle-through is required")
        out["witness"] = None if wit is None else {"vertices": list(wit.vertices), "edge_ids": list(wit.edge_ids)}
    print(json.dumps(out))
    return EXIT_OK


def cmd_gen(args) -> int:
    params = {}
    if args.family in ("complete_blocks", "glued_blocks"):
        params = {"block_size": args.block_size or args.r + 1, "blocks": args.blocks}
    else:
        if args.n is None or args.m is None:
            raise PreconditionError("--n and --m are required")
        params = {"n": args.n, "m": args.m, "seed": args.seed}
    h = GeneratorSpec(args.family, args.r, params).build()
    text = serialize_hypergraph(h)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_experiment(args) -> int:
    rep = experiments.run_suite(
        args.suite, seed=args.seed, count=args.count, max_n=args.max_n, workers=args.workers
    )
    if args.json:
        print(json.dumps(rep.to_dict(), indent=1))
    else:
        print(rep.summary())
    return EXIT_OK if rep.ok else EXIT_DEFECT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="berge", description="Berge path extraction for r-uniform hypergraphs")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("extract", help="extract a certificate of length r+1")
    q.add_argument("input")
    q.add_argument("--vertex", "-v", type=int)
    q.add_argument("--mode", choices=("theorem3", "theorem2"), default="theorem3")
    q.add_argument("--output", "-o")
    q.set_defaults(func=cmd_extract)

    q = sub.add_parser("verify", help="check a certificate against a hypergraph")
    q.add_argument("hypergraph")
    q.add_argument("certificate")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("oracle", help="exhaustive Berge path/cycle search")
    q.add_argument("input")
    q.add_argument("--longest", action="store_true")
    q.add_argument("--from", dest="source", type=int)
    q.add_argument("--cycle-through", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    q.set_defaults(func=cmd_oracle)

    q = sub.add_parser("gen", help="generate an instance")
    q.add_argument("family", choices=("complete_blocks", "glued_blocks", "random_connected", "random_surplus"))
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--block-size", type=int)
    q.add_argument("--blocks", type=int, default=1)
    q.add_argument("--n", type=int)
    q.add_argument("--m", type=int)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--output", "-o")
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("experiment", help="run an acceptance sweep")
    q.add_argument("suite", choices=experiments.SUITES)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=10_000, help="instances per (r, n, m) in the random suite")
    q.add_argument("--max-n", type=int, default=7)
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, FormatError) as exc:
        return _fail(EXIT_IO, str(exc))
    except (PreconditionError, GenerationError) as exc:
        return _fail(EXIT_PRECONDITION, getattr(exc, "clause", None) or str(exc))
    except DefectError as exc:
        return _fail(EXIT_DEFECT, f"defect: {exc}")
    except BudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc))


if __name__ == "__main__":
    sys.exit(main())
