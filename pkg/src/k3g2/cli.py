"""Command-line entry point ``k3g2``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .catalog import DataError, load_literature, load_nikulin
from .emit import FORMATS, render, render_many
from .tables import (
    betti_table,
    fixed_sets_table,
    literature_diff,
    pairs_table,
    prime_pairs_table,
    simple_triples_table,
    tuples_table,
)
from .torus import ConstructionCase

EXIT_OK, EXIT_VERIFY, EXIT_INVARIANT, EXIT_DATA = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--out", type=Path, default=argparse.SUPPRESS, help="write output here instead of stdout")
    common.add_argument("--nikulin-data", type=Path, default=argparse.SUPPRESS, metavar="PATH")
    common.add_argument("--simple-only", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, metavar="N")

    p = argparse.ArgumentParser(prog="k3g2", description="Involution pairs on the K3 lattice and Betti numbers of the resulting G2 orbifold resolutions.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify-pairs", parents=[common], help="pair classes and tuple census")
    c.add_argument("--prime-only", action="store_true", help="only the pairs on 3H")
    sub.add_parser("tuples", parents=[common], help="distinct invariant tuples")
    sub.add_parser("simple-triples", parents=[common], help="invariants of simple involutions")
    for name, choices in (("betti", ["1", "2", "3", "d4"]), ("fixed-sets", ["1", "2", "3", "d4"]), ("diff-literature", ["2", "d4"])):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--case", required=True, type=str.lower, choices=choices)
    v = sub.add_parser("verify-paper", parents=[common], help="run every acceptance check")
    v.add_argument("--skip-external", action="store_true", help="skip checks that need the Nikulin data file")
    return p


def _settings(args) -> dict:
    return {
        "format": getattr(args, "format", "csv"),
        "out": getattr(args, "out", None),
        "nikulin": getattr(args, "nikulin_data", None),
        "simple_only": getattr(args, "simple_only", False),
        "threads": max(1, getattr(args, "threads", 1)),
    }


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _run(args, cfg) -> int:
    fmt, threads = cfg["format"], cfg["threads"]

    def nikulin():
        return None if cfg["simple_only"] else load_nikulin(cfg["nikulin"])

    cmd = args.command
    if cmd == "classify-pairs":
        if args.prime_only:
            t = prime_pairs_table()
            _write(render(t, fmt), cfg["out"])
            print(t.notes[0], file=sys.stderr)
            return EXIT_OK
        tables = [pairs_table(threads), tuples_table(threads)]
        _write(render_many(tables, fmt), cfg["out"])
        print(f"{len(tables[0].rows)} pairs, {len(tables[1].rows)} distinct tuples", file=sys.stderr)
        return EXIT_OK
    if cmd == "tuples":
        t = tuples_table(threads)
    elif cmd == "simple-triples":
        t = simple_triples_table()
    elif cmd == "fixed-sets":
        t = fixed_sets_table(ConstructionCase.parse(args.case))
    elif cmd == "betti":
        t = betti_table(args.case, nikulin(), threads)
    elif cmd == "diff-literature":
        table = betti_table(args.case, nikulin(), threads)
        t = literature_diff(table, load_literature(), args.case)
    else:
        return _verify(args, cfg)
    _write(render(t, fmt), cfg["out"])
    if t.notes:
        print("; ".join(t.notes), file=sys.stderr)
    return EXIT_OK


def _verify(args, cfg) -> int:
    from .verify import report_table, run_criteria

    skip = args.skip_external or cfg["simple_only"]
    nik = None if skip else load_nikulin(cfg["nikulin"])
    results = run_criteria(nik, load_literature(), cfg["threads"], skip_external=skip)
    _write(render(report_table(results), cfg["format"]), cfg["out"])
    failed = [r.number for r in results if r.status == "fail"]
    if failed:
        print("verification failed: criteria " + ", ".join(map(str, failed)), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    cfg = _settings(args)
    try:
        return _run(args, cfg)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except AssertionError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
