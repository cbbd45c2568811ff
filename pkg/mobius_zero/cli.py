"""
Command-line interface: argument parsing, run configuration, cache lifecycle
and the mapping of errors to exit codes.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field

from mobius_zero import report, zstats
from mobius_zero.cache_file import load_cache, save_cache
from mobius_zero.census import CensusRunner
from mobius_zero.errors import CacheCorruptError, CostGateError, MobiusError
from mobius_zero.inflation import decompose, inflate, parse_inflation
from mobius_zero.perm import format_perm, parse_perm
from mobius_zero.poset import ONE, MobiusCache, mobius
from mobius_zero.szdetect import (build_registry, build_sigma_registry, classify,
                                  export_registry)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFUSED = 3
EXIT_CACHE = 4

CACHE_ENV = "MOBIUS_CACHE"
TABLES = ("z", "nonopp", "szclass", "simples", "bound")


class RunConfig(BaseModel):
    command: str
    output_format: Literal["text", "csv", "json"] = "text"
    cache_path: Path | None = None
    threads: int = Field(default=0, ge=0)
    opt_in_large: bool = False
    verbose: bool = False


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=report.FORMATS, default="text")
    common.add_argument("--cache", dest="cache_path", default=None,
                        help=f"Möbius cache file (default: ${CACHE_ENV})")
    common.add_argument("--threads", type=int, default=0, help="Worker count, 0 for one per core")
    common.add_argument("--yes-large", dest="opt_in_large", action="store_true",
                        help="Allow censuses of length 10 or more")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="mobius_zero",
                                     description="Zeros of the Möbius function of permutations")
    commands = parser.add_subparsers(dest="command", required=True)

    mu = commands.add_parser("mu", parents=[common], help="Print mu(sigma, pi)")
    mu.add_argument("perm")
    mu.add_argument("--from", dest="sigma", default=None, help="Lower bound, default 1")

    cls = commands.add_parser("classify", parents=[common], help="Classify a permutation")
    cls.add_argument("perm")

    census = commands.add_parser("census", parents=[common], help="Print a census table")
    census.add_argument("table", choices=TABLES)
    census.add_argument("--max-n", type=int, default=None)
    census.add_argument("--terms", type=int, default=None, help="Number of terms for the bound series")
    census.add_argument("--check", action="store_true", help="Compare with the published tables")

    dec = commands.add_parser("decompose", parents=[common], help="Substitution decomposition")
    dec.add_argument("perm")

    inf = commands.add_parser("inflate", parents=[common], help="Inflate SKELETON[PART,...]")
    inf.add_argument("spec")

    reg = commands.add_parser("registry", parents=[common], help="List registered nice permutations")
    reg.add_argument("--max-n", type=int, required=True)
    reg.add_argument("--sigma", default=None, help="Lower bound for the sigma registry")
    return parser


def _configure_logging(verbose: bool):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s", force=True)


def _render(table: report.Table, config: RunConfig) -> str:
    if config.output_format != "text":
        for note in table.notes:
            print(note, file=sys.stderr)
    return report.render(table, config.output_format)


def cmd_mu(args, config: RunConfig, cache: MobiusCache) -> str:
    pi = parse_perm(args.perm)
    sigma = parse_perm(args.sigma) if args.sigma is not None else ONE
    return f"{mobius(sigma, pi, cache)}\n"


def cmd_classify(args, config: RunConfig, cache: MobiusCache) -> str:
    pi = parse_perm(args.perm)
    registry = build_registry(len(pi) - 1, cache)
    return f"{format_perm(pi)}: {classify(pi, registry, cache)}\n"


def cmd_census(args, config: RunConfig, cache: MobiusCache) -> str:
    runner = CensusRunner(threads=config.threads, status=None)
    if args.table == "bound":
        terms = 9 if args.terms is None else args.terms
        series = zstats.bound_series(terms, args.max_n)
        return _render(report.bound_report(series), config)

    if args.max_n is None:
        raise MobiusError(f"census {args.table} needs --max-n")
    if args.table != "simples":
        zstats.check_cost(args.max_n, config.opt_in_large, runner.workers)

    registry = None
    if args.table == "simples":
        counts = zstats.simple_census(args.max_n, runner)
        table, rows = report.simples_report(counts), counts
    elif args.table == "z":
        rows = zstats.z_table(args.max_n, cache, runner)
        table = report.z_report(rows)
        for row in rows:
            if not zstats.conjecture_status(row):
                logger.warning("Z(%d) exceeds the conjectured ceiling", row.n)
    elif args.table == "nonopp":
        rows = zstats.nonopp_table(args.max_n, cache, runner)
        table = report.nonopp_report(rows)
    else:
        registry = build_registry(args.max_n, cache)
        rows = zstats.sz_class_table(args.max_n, registry)
        table = report.szclass_report(rows)

    if args.check:
        for mismatch in zstats.compare_with_reference(rows, args.table, registry):
            table.notes.append(f"mismatch: {mismatch}")
    return _render(table, config)


def cmd_decompose(args, config: RunConfig, cache: MobiusCache) -> str:
    return f"{decompose(parse_perm(args.perm))}\n"


def cmd_inflate(args, config: RunConfig, cache: MobiusCache) -> str:
    return f"{format_perm(inflate(parse_inflation(args.spec)))}\n"


def cmd_registry(args, config: RunConfig, cache: MobiusCache) -> str:
    if args.sigma is None:
        registry = build_registry(args.max_n, cache)
    else:
        registry = build_sigma_registry(parse_perm(args.sigma), args.max_n, cache)
    lines = export_registry(registry)
    return "".join(f"{line}\n" for line in lines)


COMMANDS = {
    "mu": cmd_mu,
    "classify": cmd_classify,
    "census": cmd_census,
    "decompose": cmd_decompose,
    "inflate": cmd_inflate,
    "registry": cmd_registry,
}


def main(argv=None) -> int:
    """
    Run one command and return its exit code: 0 on success, 2 on usage or
    parse errors, 3 when a large census is refused, 4 on a corrupt cache.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.threads < 0:
        print("error: --threads must be at least 0", file=sys.stderr)
        return EXIT_USAGE
    cache_path = args.cache_path or os.environ.get(CACHE_ENV) or None
    config = RunConfig(command=args.command, output_format=args.output_format,
                       cache_path=cache_path, threads=args.threads,
                       opt_in_large=args.opt_in_large, verbose=args.verbose)
    _configure_logging(config.verbose)

    try:
        cache = load_cache(config.cache_path) if config.cache_path else MobiusCache()
        output = COMMANDS[config.command](args, config, cache)
    except CacheCorruptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except CostGateError as exc:
        print(f"error: {exc}\n{exc.estimate}", file=sys.stderr)
        return EXIT_REFUSED
    except MobiusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    sys.stdout.write(output)
    if config.cache_path:
        save_cache(cache, config.cache_path)
    return EXIT_OK
