# Purpose: Tests for cli/grammar.py and cli/render.py.
# Covers: field declarations (prime and tower), every command form,
#         syntax errors with positions, semantic errors, factored entries,
#         and the parse(render(s)) == s round trip over sessions/.

from pathlib import Path

import pytest

from k2slot.cli.grammar import SemanticError, SessionSyntaxError, parse
from k2slot.cli.render import render_session
from k2slot.core.bivariate import BivariatePoly
from k2slot.core.funcfield import RationalFunction
from k2slot.core.gf import Poly

SESSIONS = sorted((Path(__file__).resolve().parent.parent / "sessions").glob("*.k2"))


def test_parse_steinberg_session():
    session = parse("field GF(3) m=2;\nk2 zero {t, 1-t};\n")
    assert session.field.q == 3 and session.field.m == 2
    (problem,) = session.problems
    assert problem.kind == "zero"
    assert problem.payload["alpha"].render() == "{t, 1+2*t}"
    assert problem.line == 2


def test_comments_and_blank_lines_are_ignored():
    text = "# header\nfield GF(5) m=4;\n\n# residues of a sum\nk2 residues {t, t+1}, {t^2+2, 2};\n"
    session = parse(text)
    (problem,) = session.problems
    assert len(problem.payload["alpha"]) == 2


def test_coefficients_and_sums():
    session = parse("field GF(7) m=3; k2 reciprocity {t^2+1, t+4} + 2*{t/(t+1), 3};")
    alpha = session.problems[0].payload["alpha"]
    assert alpha.render() == "{1+t^2, 4+t} + 2*{t/(1+t), 3}"


def test_zero_coefficients_are_kept():
    session = parse("field GF(7) m=6; k2 zero 6*{t, t+1};")
    (sym,) = session.problems[0].payload["alpha"]
    assert sym.coefficient == 0


def test_tower_field_declaration():
    session = parse("field GF(9)=GF(3)[u]/(u^2+1) m=4; k2 zero {t+u, 1-t-u};")
    F = session.field
    assert (F.p, F.e, F.q, F.m) == (3, 2, 9, 4)
    assert F.describe() == "GF(9)=GF(3)[u]/(1+u^2)"
    assert session.problems[0].payload["alpha"].render() == "{u+t, 1+2*u+2*t}"


def test_slot_commands():
    session = parse("field GF(3) m=2;\nslot find {t, 2}, {t+2, 2};\nslot verify t^3-t {t, 2} + {t+2, 2};\n")
    find, verify = session.problems
    assert [c.render() for c in find.payload["classes"]] == ["{t, 2}", "{2+t, 2}"]
    assert verify.payload["f"] == RationalFunction.from_poly(Poly(session.field, (0, 2, 0, 1)))
    assert len(verify.payload["classes"]) == 1


def test_algebra_command_takes_constants():
    session = parse("field GF(7) m=3; alg build (3, -2); alg split (1, 3);")
    assert session.problems[0].payload == {"a": 3, "b": 5}
    assert session.problems[1].kind == "alg-split"


def test_factored_entries_are_made_monic():
    session = parse("field GF(5) m=4; r2d mult (y, 2*x*(3*y-3*x)^2);")
    payload = session.problems[0].payload
    F = session.field
    x, y = BivariatePoly.x(F), BivariatePoly.y(F)
    assert payload["prime"] == y
    u = payload["u"]
    assert u.unit == F.mul(2, F.mul(3, 3))
    assert u.factors == ((x, 1), (y - x, 2))


def test_local_symbols_with_negative_exponents():
    session = parse("field GF(3) m=2; r2d reciprocity {x, y}, 3*{x*y^-1, y+x^2};")
    first, second = session.problems[0].payload["symbols"]
    assert first.render() == "{x, y}"
    assert second.coefficient == 1
    assert second.a.factors[1][1] == -1


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


def test_syntax_error_reports_position():
    with pytest.raises(SessionSyntaxError) as info:
        parse("field GF(7) m=3;\nk2 zero {t, };\n")
    assert info.value.line == 2
    assert info.value.column > 1
    assert info.value.exit_code == 2


def test_missing_field_declaration():
    with pytest.raises(SessionSyntaxError) as info:
        parse("k2 zero {t, 2};")
    assert info.value.line == 1


@pytest.mark.parametrize(
    "text",
    [
        "field GF(4) m=3;",  # a prime power needs a tower
        "field GF(7) m=4;",  # 4 does not divide 6
        "field GF(9)=GF(3)[u]/(u^2+2) m=2;",  # reducible modulus
        "field GF(9)=GF(3)[t]/(t^2+1) m=2;",  # reserved name
        "field GF(8)=GF(3)[u]/(u^2+1) m=2;",  # 8 is not a power of 3
    ],
)
def test_bad_field_declarations(text):
    with pytest.raises(SemanticError):
        parse(text)


def test_prime_power_without_tower_names_the_tower():
    with pytest.raises(SemanticError) as info:
        parse("field GF(4) m=3;")
    assert "GF(4)=GF(2)[u]/(g)" in str(info.value)
    assert "degree 2" in str(info.value)
    with pytest.raises(SemanticError, match="not a prime power"):
        parse("field GF(6) m=5;")


@pytest.mark.parametrize(
    "command",
    [
        "k2 zero {s, 2};",
        "k2 zero {0, t};",
        "alg build (t, 2);",
        "r2d mult (y, x/y);",
        "r2d mult (y, t);",
        "k2 zero {t, 1/(t-t)};",
    ],
)
def test_semantic_errors_carry_the_line(command):
    with pytest.raises(SemanticError) as info:
        parse(f"field GF(5) m=2;\n{command}\n")
    assert info.value.line == 2
    assert info.value.exit_code == 2


# ---------------------------------------------------------------------------
# Canonical rendering
# ---------------------------------------------------------------------------


def test_render_session_is_canonical():
    session = parse("field GF(3) m=2;\nslot find {t,2},{t+2,2};")
    assert render_session(session) == "field GF(3) m=2;\nslot find {t, 2}, {2+t, 2};\n"


@pytest.mark.parametrize("path", SESSIONS, ids=lambda p: p.name)
def test_round_trip_over_sessions(path):
    session = parse(path.read_text())
    text = render_session(session)
    assert parse(text) == session
    assert render_session(parse(text)) == text
