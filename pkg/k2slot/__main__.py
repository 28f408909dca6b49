# Purpose: Command-line entry point for k2slot.
#          Parses a session (field declaration plus commands), runs every
#          command, and prints one report per command.
#
# Usage:
#   k2slot [--json] [--seed N] [--degree-bound N] [--budget N] run FILE
#   k2slot eval "field GF(3) m=2; k2 zero {t, 1-t};"
#   k2slot fmt FILE
#   k2slot commands
#
# Exit codes: 0 success, 1 mathematical failure, 2 malformed input.

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .cli.commands import SessionReport, build_registry
from .cli.grammar import parse
from .cli.output import format_json, format_table, format_text
from .cli.render import render_session
from .cli.session import SessionAborted, SessionConfig, run_session, setup_logging
from .core.config import config
from .core.errors import K2SlotError


def _add_common(parser: argparse.ArgumentParser, default) -> None:
    """Global flags; subparsers pass SUPPRESS so flags work on either side of the command."""
    parser.add_argument("--json", action="store_true", default=False if default is None else default,
                        help="Emit the session report as JSON")
    parser.add_argument("--seed", type=int, default=default, metavar="N", help="Factorization seed")
    parser.add_argument("--degree-bound", dest="degree_bound", type=int, default=default, metavar="N",
                        help="Cofactor search degree bound")
    parser.add_argument("--budget", type=int, default=default, metavar="N",
                        help="Cap on candidates examined by any search")
    parser.add_argument("--config", default=default, metavar="PATH",
                        help="Config file (default: $K2SLOT_CONFIG, ~/.config/k2slot/config.yaml, bundled)")
    parser.add_argument("--log-level", dest="log_level", default=default, metavar="LEVEL",
                        help="Logging level for stderr (default from config)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k2slot",
        description="Exact computations in K2 mod m of F_q(t): residues, slots, symbol algebras.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
examples:
  k2slot --json run sessions/steinberg.k2
  k2slot run sessions/pair.k2 --seed 7
  k2slot eval "field GF(5) m=4; k2 residues {t, t+1};"
  k2slot fmt sessions/algebra.k2
  k2slot commands
""",
    )
    _add_common(parser, None)

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p_run = sub.add_parser("run", help="Run a session file")
    p_run.add_argument("file", metavar="FILE")
    _add_common(p_run, argparse.SUPPRESS)

    p_eval = sub.add_parser("eval", help="Run a session given inline")
    p_eval.add_argument("text", metavar="SESSION")
    _add_common(p_eval, argparse.SUPPRESS)

    p_fmt = sub.add_parser("fmt", help="Print a session file in canonical form")
    p_fmt.add_argument("file", metavar="FILE")
    _add_common(p_fmt, argparse.SUPPRESS)

    p_cmds = sub.add_parser("commands", help="List the session commands")
    _add_common(p_cmds, argparse.SUPPRESS)

    return parser


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _session_config(args: argparse.Namespace) -> SessionConfig:
    return SessionConfig.from_config(
        seed=args.seed,
        degree_bound=args.degree_bound,
        budget=args.budget,
        output="json" if args.json else None,
    )


def _cmd_run(args: argparse.Namespace) -> None:
    _execute(_read(args.file), args)


def _cmd_eval(args: argparse.Namespace) -> None:
    _execute(args.text, args)


def _execute(text: str, args: argparse.Namespace) -> None:
    cfg = _session_config(args)
    try:
        report = run_session(parse(text), cfg)
    except SessionAborted as exc:
        # Reports of the commands that completed still go to stdout.
        _write(exc.report, cfg)
        raise
    _write(report, cfg)


def _write(report: SessionReport, cfg: SessionConfig) -> None:
    sys.stdout.write(format_json(report) if cfg.output == "json" else format_text(report))


def _cmd_fmt(args: argparse.Namespace) -> None:
    sys.stdout.write(render_session(parse(_read(args.file))))


def _cmd_commands(args: argparse.Namespace) -> None:
    rows = build_registry().describe()
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    print("\n".join(format_table(rows, [("name", "COMMAND", 16), ("description", "DESCRIPTION", 72)])))


_COMMAND_MAP = {
    "run": _cmd_run,
    "eval": _cmd_eval,
    "fmt": _cmd_fmt,
    "commands": _cmd_commands,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.config:
            config.reload(args.config)
        setup_logging(args.log_level or config.get("logging.level", "WARNING"))
        _COMMAND_MAP[args.command](args)
    except SessionAborted as exc:
        print(f"error: {type(exc.cause).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except K2SlotError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: InvalidSettings: {exc.error_count()} invalid setting(s)", file=sys.stderr)
        for e in exc.errors(include_url=False):
            print(f"  {'.'.join(str(p) for p in e['loc'])}: {e['msg']}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
