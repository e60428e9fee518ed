"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input error, 3 config error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import load_config
from .errors import ConfigError, CorpusMapError
from .pipeline import run_pipeline
from .server import serve_bundle


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="corpusmap", description="Corpus-to-map pipeline")
    parser.add_argument("--version", action="version", version=f"corpusmap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute the pipeline from a config file")
    run.add_argument("--config", required=True, help="path to JSON config")

    serve = sub.add_parser("serve", help="serve an exported bundle over HTTP")
    serve.add_argument("--dir", required=True, help="bundle directory")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            cfg = load_config(args.config)
            report = run_pipeline(cfg)
            for key, value in sorted(report.counts.items()):
                print(f"{key}: {value}")
            for warning in report.warnings:
                print(f"warning: {warning}", file=sys.stderr)
            return 0
        if args.command == "serve":
            print(f"serving {args.dir} on http://127.0.0.1:{args.port}/")
            serve_bundle(args.dir, args.port)
            return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except CorpusMapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 0
    return 1


if __name__ == "__main__":
    sys.exit(main())
