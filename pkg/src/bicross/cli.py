"""Command-line interface: ``bicross verify`` and ``bicross show``.

Exit codes: 0 every check passed, 1 some check failed, 2 input or
configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import BicrossError
from .report import FAIL
from .suites import RunOptions, catalog_help, run_suite, show

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _natural(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="bicross", description="Build and verify bicrossproduct Hopf algebras.")
    p.add_argument("-v", "--verbose", action="store_true", help="log construction progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run a verification suite", epilog=f"catalog names: {catalog_help()}")
    v.add_argument("target", help="catalog name or YAML spec file")
    v.add_argument("--order", type=_natural, default=None, help="truncation order in h (default 3)")
    v.add_argument("--suite", default=None, help="suite name (default: full)")
    v.add_argument("--max-degree", type=_natural, default=3, help="degree of random samples (default 3)")
    v.add_argument("--report", choices=("text", "lines"), default="text")
    v.add_argument("--seed", type=int, default=0)
    s = sub.add_parser("show", help="print the canonical presentation dump")
    s.add_argument("target", help="catalog name")
    s.add_argument("--order", type=_natural, default=3)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "show":
            print(show(args.target, args.order))
            return EXIT_OK
        opts = RunOptions(order=3 if args.order is None else args.order, max_degree=args.max_degree, seed=args.seed)
        rep = run_suite(args.target, args.suite, opts, file_order=args.order)
    except BicrossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(rep.render(args.report))
    return EXIT_FAIL if any(r.status == FAIL for r in rep.records) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
