# Purpose: Canonical text for parsed sessions; parse(render(s)) == s.
# Relationships: Inverse of cli/grammar.py; used by `k2slot fmt` and the
#               round-trip tests.

from ..core.k2 import K2Element
from .grammar import ParsedProblem, ParsedSession


def _symbols(alpha: K2Element, sep: str) -> str:
    return sep.join(s.render() for s in alpha)


def render_problem(problem: ParsedProblem, session: ParsedSession) -> str:
    kind, pl = problem.kind, problem.payload
    F = session.field
    match kind:
        case "residues" | "zero" | "reciprocity":
            return f"k2 {kind} {_symbols(pl['alpha'], ', ')};"
        case "k2-symbol":
            return f"k2 symbol {_symbols(pl['alpha'], ', ')};"
        case "slot-find":
            classes = ", ".join(_symbols(c, " + ") for c in pl["classes"])
            return f"slot find {classes};"
        case "slot-verify":
            classes = ", ".join(_symbols(c, " + ") for c in pl["classes"])
            return f"slot verify {pl['f'].render()} {classes};"
        case "alg-build" | "alg-split":
            verb = kind.split("-")[1]
            return f"alg {verb} ({F.render(pl['a'])}, {F.render(pl['b'])});"
        case "r2d-mult":
            return f"r2d mult ({pl['prime'].render()}, {pl['u'].render()});"
        case "r2d-reciprocity":
            return f"r2d reciprocity {', '.join(s.render() for s in pl['symbols'])};"
    raise ValueError(f"unknown problem kind {kind!r}")


def render_session(session: ParsedSession) -> str:
    F = session.field
    lines = [f"field {F.describe()} m={F.m};"]
    lines.extend(render_problem(p, session) for p in session.problems)
    return "\n".join(lines) + "\n"
