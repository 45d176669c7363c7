"""Command line entrypoint: serve the API, export a diary, check a config."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import check_config, load_config


def _add_config_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", default=None, help="config file (key=value lines)")


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    config = load_config(args.config)
    problems = check_config(config)
    if problems:
        for problem in problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    app = create_app(config)
    uvicorn.run(app, host=config.listen_host, port=config.listen_port, log_level="info")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    from .api import build_services

    config = load_config(args.config)
    services = build_services(config)
    from .diary import UnknownPatient

    try:
        document = services.diary.export_csv(args.patient)
    except UnknownPatient:
        print(f"no such patient: {args.patient}", file=sys.stderr)
        return 1
    data = document.encode("utf-8")
    if args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
    return 0


def cmd_check_config(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    problems = check_config(config)
    for problem in problems:
        print(f"config error: {problem}", file=sys.stderr)
    if problems:
        return 2
    print("config ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nephrocare",
        description="Self-hostable nephrotic-syndrome care service",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    serve = subparsers.add_parser("serve", help="run the HTTP service")
    _add_config_argument(serve)
    serve.set_defaults(func=cmd_serve)

    export = subparsers.add_parser("export", help="write a patient's diary CSV")
    _add_config_argument(export)
    export.add_argument("--patient", required=True, help="patient id")
    export.add_argument("--out", required=True, help="output path, or - for stdout")
    export.set_defaults(func=cmd_export)

    check = subparsers.add_parser("check-config", help="validate a config file")
    _add_config_argument(check)
    check.set_defaults(func=cmd_check_config)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
