#!/usr/bin/env python

"""
Exact multidimensional wildcard pattern matching over n-dimensional integer grids with nengths.

Usage:
    nength_search.py index  --text <.ngt|.ngb> --alphabet <.alpha> --out <.nng> [--mode shifted|paper]
    nength_search.py search --index <.nng> --pattern <.npt> --query <string> [--alphabet <.alpha>] [--no-wrap] [--json]
    nength_search.py verify --trials N --seed S [--lab] [--max-dim D]
    nength_search.py bench  --sizes 256,1024 --engines naive,fft --out <csv> --seed S

Exit codes:
    0 match found / ok, 1 no match, 2 malformed input or shape mismatch, 3 alphabet / code out of range,
    4 precision failure, 5 verification mismatch.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import yaml

from alphabet import Alphabet, AlphabetMode
from bench_runner import BenchRunner
from circulant_lab import CirculantLab
from grid_files import GridFiles
from naive_oracle import NaiveOracle
from nength_errors import AlphabetError, NengthError
from nength_index import NengthIndex
from nength_transform import NengthTransform
from pattern_codec import PatternCodec
from pattern_support import PatternSupport
from query import Query
from search_engine import SearchEngine
from verification_runner import VerificationRunner

DEFAULT_CONFIG_FILE = Path(__file__).with_name("config.yml")

EXIT_OK = 0
EXIT_NO_MATCH = 1
EXIT_INPUT = 2
EXIT_VERIFICATION = 5

DEFAULT_CONFIG = {
    "logging": {"level": "INFO", "file": "nength_search.log"},
    "precision": {"mantissa_bits": 52, "margin_bits": 10, "residual_gate": 0.25},
    "transform": {"workers": 1},
    "lab": {"max_size": 64},
    "verify": {"max_dim": 8, "max_sigma": 4, "max_r": 4, "lab_max_size": 16},
    "bench": {"naive_cap": 4096, "repeats": 3, "support_size": 4, "sigma": 4},
}


# Load config from config.yml file, falling back to the defaults above section by section
def load_conf_file(config_file):
    config = {}
    if Path(config_file).exists():
        with open(config_file, "r") as f:
            config = yaml.safe_load(f) or {}
    return {section: {**defaults, **(config.get(section) or {})} for section, defaults in DEFAULT_CONFIG.items()}


def configure_logging(logging_config):
    logging.basicConfig(
        level=getattr(logging, str(logging_config["level"]).upper(), logging.INFO),
        filename=logging_config["file"],
        format="{asctime} [{levelname}] {threadName} | {module}.{funcName}:{lineno} :: {message}",
        style="{",
    )


def build_engine(config) -> SearchEngine:
    codec = PatternCodec(config["precision"]["mantissa_bits"], config["precision"]["margin_bits"])
    transform = NengthTransform(config["precision"]["residual_gate"], config["transform"]["workers"])
    return SearchEngine(codec, transform)


# ---------------------------------------------------------------------------- #
#                                   Commands                                   #
# ---------------------------------------------------------------------------- #


def cmd_index(args, config) -> int:
    alphabet = Alphabet.read_alphabet(args.alphabet, AlphabetMode(args.mode))
    text = GridFiles().read_grid(args.text)
    index = build_engine(config).build_index(text, alphabet)
    index.write(args.out)
    print(f"shape: {text.shape}")
    print(f"s: {text.shape.s}")
    print(f"sigma: {alphabet.size}")
    print(f"base: {alphabet.base}")
    return EXIT_OK


def cmd_search(args, config) -> int:
    engine = build_engine(config)
    index = NengthIndex.read(args.index)
    support = PatternSupport.read_support(args.pattern, index.shape)
    query = Query(parse_query_digits(args, index))
    engine.codec.query_value(query, support, index.base, index.mode)

    table = engine.search_nowrap(index, support) if args.no_wrap else engine.find_all(index, support)
    matches = sorted(engine.lookup(table, query))
    if args.json:
        print(
            json.dumps(
                {
                    "shape": list(index.shape.dims),
                    "query": args.query,
                    "wrap": not args.no_wrap,
                    "matches": [list(match) for match in matches],
                }
            )
        )
    else:
        for match in matches:
            print(" ".join(str(v) for v in match))
    logging.info(f"Query {args.query!r} matched {len(matches)} offsets")
    return EXIT_OK if matches else EXIT_NO_MATCH


def parse_query_digits(args, index: NengthIndex):
    """With an alphabet the query is symbols; without one it is whitespace-separated integer codes."""
    if args.alphabet:
        alphabet = Alphabet.read_alphabet(args.alphabet, index.mode)
        if alphabet.base != index.base:
            raise AlphabetError(f"Alphabet base {alphabet.base} does not match the index base {index.base}")
        return alphabet.parse_query(args.query)
    try:
        return [int(token) for token in args.query.split()]
    except ValueError:
        raise AlphabetError(f"Without --alphabet the query must be integer codes. Got {args.query!r}")


def cmd_verify(args, config) -> int:
    verify_config = config["verify"]
    engine = build_engine(config)
    oracle = NaiveOracle()
    runner = VerificationRunner(
        engine,
        oracle,
        CirculantLab(config["lab"]["max_size"], oracle, engine.transform),
        max_dim=args.max_dim or verify_config["max_dim"],
        max_sigma=verify_config["max_sigma"],
        max_r=verify_config["max_r"],
        lab_max_size=verify_config["lab_max_size"],
        sabotage=args.sabotage,
    )
    summary = runner.run(args.trials, args.seed, with_lab=args.lab)
    if summary.trials == 0:
        print("warning: no trials requested, nothing was verified")
    print(f"trials: {summary.trials}")
    print(f"passed: {summary.passed}")
    print(f"failed: {summary.failed}")
    print(f"worst pre-round residual: {summary.worst_residual:.3e}")
    print(f"worst imaginary part: {summary.worst_imaginary:.3e}")
    print(f"worst parseval residual: {summary.worst_parseval:.3e}")
    if args.lab:
        print(f"lab checks: {summary.lab_checks}")
        print(f"worst off-diagonal: {summary.worst_off_diagonal:.3e}")
        print(f"worst diagonal deviation: {summary.worst_diagonal_deviation:.3e}")
    for failure in summary.failures:
        print(f"FAIL {failure}")
    return EXIT_OK if summary.all_passed else EXIT_VERIFICATION


def cmd_bench(args, config) -> int:
    bench_config = config["bench"]
    try:
        sizes = [int(size) for size in args.sizes.split(",") if size.strip()]
    except ValueError:
        print(f"error: --sizes must be a comma separated list of integers. Got {args.sizes!r}", file=sys.stderr)
        return EXIT_INPUT
    engines = [engine.strip() for engine in args.engines.split(",") if engine.strip()]
    unknown = [engine for engine in engines if engine not in BenchRunner.ENGINES]
    if unknown or any(size < 1 for size in sizes):
        print(f"error: engines must be among {BenchRunner.ENGINES} and sizes positive", file=sys.stderr)
        return EXIT_INPUT

    engine = build_engine(config)
    runner = BenchRunner(
        NaiveOracle(),
        engine.transform,
        engine.codec,
        naive_cap=args.naive_cap if args.naive_cap is not None else bench_config["naive_cap"],
        repeats=args.repeats if args.repeats is not None else bench_config["repeats"],
        support_size=bench_config["support_size"],
        sigma=bench_config["sigma"],
    )
    records = runner.run(sizes, engines, args.seed, args.ndim)
    try:
        runner.write_csv(records, args.out)
    except OSError as err:
        logging.exception(f"Could not write bench output to {args.out}")
        print(f"error: could not write {args.out}: {err}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------- #
#                                    Parser                                    #
# ---------------------------------------------------------------------------- #


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Multidimensional wildcard pattern matching with nengths")
    parser.add_argument("--config", default=str(DEFAULT_CONFIG_FILE), help="YAML config file")
    commands = parser.add_subparsers(dest="command", required=True)

    index = commands.add_parser("index", help="Build and persist the nength index of a text grid")
    index.add_argument("--text", required=True, help="Text grid (.ngt or .ngb)")
    index.add_argument("--alphabet", required=True, help="Alphabet file (.alpha)")
    index.add_argument("--out", required=True, help="Index output (.nng)")
    index.add_argument("--mode", choices=[mode.value for mode in AlphabetMode], default=AlphabetMode.SHIFTED.value)
    index.set_defaults(handler=cmd_index)

    search = commands.add_parser("search", help="Find every offset where the query sits under the pattern support")
    search.add_argument("--index", required=True, help="Index file (.nng)")
    search.add_argument("--pattern", required=True, help="Pattern support file (.npt)")
    search.add_argument("--query", required=True, help="Symbols in support-cell order")
    search.add_argument("--alphabet", help="Alphabet file (.alpha). Without it the query is integer codes")
    search.add_argument("--no-wrap", action="store_true", help="Only report alignments that do not wrap around")
    search.add_argument("--json", action="store_true", help="Print a JSON document instead of one offset per line")
    search.set_defaults(handler=cmd_search)

    verify = commands.add_parser("verify", help="Randomized engine-versus-oracle verification")
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--lab", action="store_true", help="Also run the explicit circulant matrix checks")
    verify.add_argument("--max-dim", type=int, default=None, help="Largest size of any one dimension")
    verify.add_argument("--sabotage", action="store_true", help=argparse.SUPPRESS)
    verify.set_defaults(handler=cmd_verify)

    bench = commands.add_parser("bench", help="Time naive and fft search products across sizes")
    bench.add_argument("--sizes", required=True, help="Comma separated target sizes s")
    bench.add_argument("--engines", default="naive,fft", help="Comma separated engines among naive, fft")
    bench.add_argument("--out", required=True, help="CSV output")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--ndim", type=int, default=1, help="Dimensions of the benchmark grids")
    bench.add_argument("--naive-cap", type=int, default=None, help="Skip naive runs above this s")
    bench.add_argument("--repeats", type=int, default=None)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = load_conf_file(args.config)
    configure_logging(config["logging"])
    try:
        return args.handler(args, config)
    except NengthError as err:
        logging.exception(f"{args.command} failed: {err}")
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
