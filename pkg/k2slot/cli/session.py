# Purpose: Session settings, problem dispatch, and logging setup for the CLI.
# Relationships: Called by k2slot/__main__.py; dispatches through the
#               registry built in cli/commands.py.

import logging
import sys
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import config
from ..core.errors import InputError, K2SlotError
from ..core.gf import FieldSpec
from .commands import SessionReport, build_registry
from .grammar import ParsedProblem, ParsedSession, SemanticError
from .registry import CommandRegistry

logger = logging.getLogger("cli")


class UnknownLogLevel(InputError):
    pass


class SessionAborted(K2SlotError):
    """A command failed. `report` holds the reports of the commands that ran before it."""

    def __init__(self, report: SessionReport, line: int, cause: K2SlotError) -> None:
        super().__init__(f"line {line}: {cause}")
        self.report = report
        self.line = line
        self.cause = cause
        self.exit_code = cause.exit_code


class SessionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=0, description="Seed for equal-degree splitting.")
    degree_bound: int = Field(default=6, ge=1, description="Cofactor search degree bound.")
    budget: int = Field(default=200000, ge=1, description="Cap on enumerated candidates.")
    output: Literal["text", "json"] = "text"
    p: int | None = Field(default=None, description="Expected characteristic, if pinned.")
    e: int | None = Field(default=None, ge=1)
    modulus: tuple[int, ...] | None = Field(default=None, description="Expected tower modulus, ascending.")
    m: int | None = Field(default=None, ge=1)

    @classmethod
    def from_config(cls, **overrides) -> "SessionConfig":
        """Defaults from the `session` config section; None overrides are ignored."""
        values = dict(config.get("session", {}) or {})
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(values)

    def check_field(self, fld: FieldSpec) -> None:
        """Reject a session whose field differs from the pinned parameters."""
        actual = {"p": fld.p, "e": fld.e, "modulus": tuple(fld.modulus) if fld.e > 1 else None, "m": fld.m}
        for name, value in actual.items():
            expected = getattr(self, name)
            if expected is not None and expected != value:
                raise SemanticError(f"session declares {name}={value}, configuration pins {expected}")


def setup_logging(level: str) -> None:
    if not isinstance(logging.getLevelName(level.upper()), int):
        raise UnknownLogLevel(f"unknown logging level {level!r}")
    # stderr only: stdout carries reports.
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        logging.Formatter(
            fmt="%(asctime)s.%(msecs)03d %(levelname)-7s [%(name)s] %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    logging.basicConfig(level=level.upper(), handlers=[handler], force=True)


def run_problem(
    problem: ParsedProblem, fld: FieldSpec, cfg: SessionConfig, registry: CommandRegistry | None = None
):
    """Dispatch one problem. Library errors propagate with their exit codes."""
    registry = registry or build_registry()
    command = registry.get(problem.kind)
    logger.debug(f"line {problem.line}: {problem.kind}")
    return command.execute({"field": fld, **problem.payload}, cfg)


def run_session(session: ParsedSession, cfg: SessionConfig) -> SessionReport:
    cfg.check_field(session.field)
    registry = build_registry()
    report = SessionReport(field=session.field.describe(), m=session.field.m, seed=cfg.seed)
    for problem in session.problems:
        try:
            report.reports.append(run_problem(problem, session.field, cfg, registry))
        except K2SlotError as exc:
            report.error = f"line {problem.line}: {type(exc).__name__}: {exc}"
            raise SessionAborted(report, problem.line, exc) from exc
    return report
