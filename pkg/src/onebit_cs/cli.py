"""Command-line toolkit.

Subcommands: gen-matrix, gen-signal, measure, reconstruct, bounds,
experiment.  Exit codes: 0 success, 1 parameter error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fileio, harness, theory
from .errors import ParameterError
from .measurement import noisy_sign_map, sign_map
from .numerics import gaussian_matrix, random_sparse_unit_signal
from .recon import BihtConfig, biht, variant_from_name
from .rng import prng_new

EXIT_OK = 0
EXIT_PARAM = 1
EXIT_IO = 2


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ParameterError (exit 1)."""

    def error(self, message):
        raise ParameterError(message)


def _cmd_gen_matrix(args) -> int:
    phi = gaussian_matrix(args.rows, args.cols, prng_new(args.seed))
    fileio.write_matrix(args.out, phi)
    return EXIT_OK


def _cmd_gen_signal(args) -> int:
    x = random_sparse_unit_signal(args.dim, args.sparsity, prng_new(args.seed))
    fileio.write_vector(args.out, x.to_dense())
    return EXIT_OK


def _cmd_measure(args) -> int:
    phi = fileio.read_matrix(args.matrix)
    x = fileio.read_vector(args.signal)
    if args.sigma > 0:
        if args.seed is None:
            raise ParameterError("--seed is required when --sigma > 0")
        y = noisy_sign_map(phi, x, args.sigma, prng_new(args.seed))
    else:
        y = sign_map(phi, x)
    fileio.write_signs(args.out, y)
    return EXIT_OK


def _cmd_reconstruct(args) -> int:
    y = fileio.read_signs(args.measurements)
    phi = fileio.read_matrix(args.matrix)
    variant = variant_from_name(args.variant, kappa=args.kappa)
    config = BihtConfig(variant=variant, tau=args.tau, max_iter=args.max_iter,
                        sphere_projection=args.sphere_projection)
    result = biht(y, phi, args.sparsity, config)
    fileio.write_vector(args.out, result.estimate.to_dense())
    print(json.dumps({
        "variant": variant.name,
        "iterations": result.iterations_run,
        "consistent": result.consistent,
        "final_hamming": result.final_hamming,
    }))
    return EXIT_OK


def _parse_params(text: str) -> dict:
    params = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise ParameterError(f"--params entries must be k=v, got {item!r}")
        key, _, value = item.partition("=")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ParameterError(f"non-numeric parameter value in {item!r}")
    return params


def _cmd_bounds(args) -> int:
    report = theory.evaluate_bound(args.name, _parse_params(args.params))
    print(json.dumps({
        "name": report.name,
        "inputs": report.inputs,
        "value": report.value,
        "formula_citation": report.formula_citation,
    }))
    return EXIT_OK


def _cmd_experiment(args) -> int:
    config = harness.ExperimentConfig.from_json(args.config)
    records = harness.run_experiment(config)
    harness.emit_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="onebit-cs",
                     description="1-bit compressive sensing toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-matrix", help="write an i.i.d. N(0,1) matrix")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_matrix)

    p = sub.add_parser("gen-signal", help="write a random sparse unit signal")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--sparsity", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_signal)

    p = sub.add_parser("measure", help="take 1-bit sign measurements")
    p.add_argument("--matrix", required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--sigma", type=float, default=0.0,
                   help="pre-quantization Gaussian noise level")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("reconstruct", help="BIHT reconstruction from signs")
    p.add_argument("--measurements", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--sparsity", type=int, required=True)
    p.add_argument("--variant", choices=("l1", "l2", "hinge", "hybrid"),
                   default="l1")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--sphere-projection", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("--name", required=True, choices=sorted(theory.BOUND_REGISTRY))
    p.add_argument("--params", required=True, help="comma-separated k=v pairs")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("experiment", help="run a Monte-Carlo experiment to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse --help
        return EXIT_OK if exc.code in (0, None) else EXIT_PARAM
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
