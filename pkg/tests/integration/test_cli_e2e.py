# Purpose: End-to-end tests for the k2slot command line.
# Drives main() with real session files; nothing is mocked. Checks stdout
# payloads, stderr error lines, and exit codes.

import json
from pathlib import Path

import pytest

from k2slot.__main__ import main

SESSIONS = Path(__file__).resolve().parents[2] / "sessions"


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_json_run_of_steinberg(capsys):
    code, out, _ = _run(capsys, "--json", "run", str(SESSIONS / "steinberg.k2"))
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["field"] == "GF(3)"
    (report,) = data["reports"]
    assert report["result"] == "zero"
    assert report["profile"] == []


def test_text_run_of_pair(capsys):
    code, out, _ = _run(capsys, "run", str(SESSIONS / "pair.k2"))
    assert code == 0
    assert out.startswith("field GF(3) m=2 seed=0\n")
    assert "2*t+t^3" in out
    assert "certified" in out


def test_flags_work_after_the_subcommand(capsys):
    code, out, _ = _run(capsys, "run", str(SESSIONS / "verify.k2"), "--json", "--seed", "3")
    assert code == 0
    assert json.loads(out)["seed"] == 3


def test_runs_are_deterministic(capsys):
    argv = ["--json", "--seed", "7", "run", str(SESSIONS / "pair.k2")]
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second


def test_eval_inline_session(capsys):
    code, out, _ = _run(capsys, "--json", "eval", "field GF(5) m=4; k2 residues {t, t+1};")
    assert code == 0
    rows = json.loads(out)["reports"][0]["profile"]
    assert [r["place"] for r in rows] == ["1+t", "inf"]


def test_fmt_prints_canonical_text(capsys):
    code, out, _ = _run(capsys, "fmt", str(SESSIONS / "pair.k2"))
    assert code == 0
    assert out == "field GF(3) m=2;\nslot find {t, 2}, {2+t, 2};\n"


def test_commands_lists_every_command(capsys):
    code, out, _ = _run(capsys, "commands", "--json")
    assert code == 0
    names = {c["name"] for c in json.loads(out)}
    assert {"residues", "slot-find", "alg-split", "r2d-reciprocity"} <= names
    assert len(names) == 10


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------


def test_syntax_error_exits_2(capsys):
    code, out, err = _run(capsys, "eval", "field GF(7) m=3;\nk2 zero {t, };")
    assert code == 2
    assert out == ""
    assert err.startswith("error: SessionSyntaxError: line 2")


def test_semantic_error_exits_2(capsys):
    code, _, err = _run(capsys, "eval", "field GF(4) m=3;")
    assert code == 2
    assert "SemanticError" in err


def test_search_failure_exits_1(capsys):
    code, _, err = _run(capsys, "--budget", "1", "eval", "field GF(5) m=2; k2 symbol {t, t+2};")
    assert code == 1
    assert "CofactorNotFound" in err


def test_failing_command_still_prints_earlier_reports(capsys):
    session = "field GF(5) m=2;\nk2 residues {t, 2};\nk2 symbol {t, t+2};"
    code, out, err = _run(capsys, "--json", "--budget", "1", "eval", session)
    assert code == 1
    data = json.loads(out)
    assert [r["kind"] for r in data["reports"]] == ["residues"]
    assert data["error"].startswith("line 3: CofactorNotFound")
    assert err.startswith("error: CofactorNotFound: line 3:")


def test_invalid_settings_exit_2(capsys):
    code, _, err = _run(capsys, "--degree-bound", "0", "run", str(SESSIONS / "steinberg.k2"))
    assert code == 2
    assert "InvalidSettings" in err
    assert "degree_bound" in err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = _run(capsys, "run", str(tmp_path / "absent.k2"))
    assert code == 2
    assert "FileNotFoundError" in err


def test_unknown_log_level_exits_2(capsys):
    code, _, err = _run(capsys, "--log-level", "chatty", "run", str(SESSIONS / "steinberg.k2"))
    assert code == 2
    assert "UnknownLogLevel" in err


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
