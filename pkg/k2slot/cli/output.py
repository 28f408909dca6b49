# Purpose: Text tables and JSON for session reports.
# Relationships: Called by k2slot/__main__.py with reports from cli/session.py.
#
# Output is a pure function of the report, so identical runs produce
# identical bytes.

import json

from .commands import (
    AlgebraReport,
    MultReport,
    ProfileReport,
    Reciprocity2DReport,
    ReciprocityReport,
    ResidueRow,
    SessionReport,
    SlotReport,
    SplitReport,
    SymbolReport,
    ZeroReport,
)


def _trunc(value: object, width: int) -> str:
    s = "" if value is None else str(value)
    return s if len(s) <= width else s[: width - 1] + "…"


def format_table(rows: list[dict], columns: list[tuple[str, str, int]]) -> list[str]:
    """
    Rows as a fixed-width table.

    columns: list of (field_name, header_label, column_width)
    """
    if not rows:
        return ["(none)"]
    sep = "  "
    lines = [
        sep.join(h.ljust(w) for _, h, w in columns).rstrip(),
        sep.join("-" * w for _, _, w in columns),
    ]
    for row in rows:
        lines.append(sep.join(_trunc(row.get(f), w).ljust(w) for f, _, w in columns).rstrip())
    return lines


def format_detail(pairs: list[tuple[str, object]]) -> list[str]:
    width = max(len(k) for k, _ in pairs) + 1
    return [f"{(k + ':').ljust(width)}  {v}" for k, v in pairs]


_PROFILE_COLUMNS = [
    ("place", "PLACE", 24),
    ("degree", "DEG", 3),
    ("index", "INDEX", 5),
    ("representative", "RESIDUE", 32),
]


def _profile(rows: list[ResidueRow]) -> list[str]:
    return format_table([r.model_dump() for r in rows], _PROFILE_COLUMNS)


def _format_report(report) -> list[str]:
    match report:
        case ProfileReport():
            return format_detail([("class", report.alpha)]) + _profile(report.profile)
        case ZeroReport():
            return format_detail([("class", report.alpha), ("result", report.result)]) + _profile(report.profile)
        case ReciprocityReport():
            head = format_detail([("class", report.alpha), ("holds", report.holds), ("sum", report.total)])
            return head + _profile(report.profile)
        case SymbolReport():
            return format_detail([("class", report.alpha), ("symbol", report.symbol)])
        case SlotReport():
            head = format_detail(
                [
                    ("f", report.f),
                    ("splitting field", report.splitting_field),
                    ("support", ", ".join(report.support) or "(empty)"),
                ]
            )
            rows = [
                {
                    "class_index": c.class_index,
                    "status": c.status,
                    "cofactor": c.cofactor or "-",
                    "examined": c.candidates_examined,
                    "split": "-" if c.split_check is None else c.split_check,
                    "alpha": c.alpha,
                }
                for c in report.certificates
            ]
            cols = [
                ("class_index", "#", 3),
                ("status", "STATUS", 26),
                ("cofactor", "COFACTOR", 24),
                ("examined", "TRIED", 7),
                ("split", "SPLIT", 5),
                ("alpha", "CLASS", 40),
            ]
            return head + format_table(rows, cols)
        case AlgebraReport():
            head = format_detail(
                [
                    ("algebra", f"({report.a}, {report.b})"),
                    ("omega", report.omega),
                    ("dimension", report.dimension),
                    ("center dim", report.center_dimension),
                ]
            )
            width = max(len(s) for row in report.products for s in row + report.basis) + 2
            lines = ["".ljust(width) + "".join(b.ljust(width) for b in report.basis)]
            for label, row in zip(report.basis, report.products):
                lines.append(label.ljust(width) + "".join(s.ljust(width) for s in row))
            return head + [line.rstrip() for line in lines]
        case SplitReport():
            return format_detail(
                [("algebra", f"({report.a}, {report.b})"), ("split by", report.form), ("witness", report.rendered)]
            )
        case MultReport():
            return format_detail(
                [("prime", report.prime), ("u", report.u), ("v_p(u)", report.valuation), ("index", report.index)]
            )
        case Reciprocity2DReport():
            head = format_detail(
                [("symbols", ", ".join(report.symbols)), ("holds", report.holds), ("sum", report.total)]
            )
            rows = [r.model_dump() for r in report.breakdown]
            cols = [("prime", "PRIME", 20), ("index", "INDEX", 5), ("residue", "RESIDUE", 40)]
            return head + format_table(rows, cols)
    raise TypeError(f"no text layout for {type(report).__name__}")


def format_text(session: SessionReport) -> str:
    lines = [f"field {session.field} m={session.m} seed={session.seed}"]
    for i, report in enumerate(session.reports, start=1):
        lines.append("")
        lines.append(f"[{i}] {report.kind}")
        lines.extend(_format_report(report))
    if session.error:
        lines.append("")
        lines.append(f"aborted: {session.error}")
    return "\n".join(lines) + "\n"


def format_json(session: SessionReport) -> str:
    return json.dumps(session.model_dump(mode="json"), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
