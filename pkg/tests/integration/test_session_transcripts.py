# Purpose: Golden transcripts for the bundled sessions.
# Each sessions/NAME.k2 has a sessions/NAME.out holding the exact text report
# of a run with default settings. Any change in residues, search order,
# candidate counts or table layout shows up here as a byte difference.

from pathlib import Path

import pytest

from k2slot.cli.grammar import parse
from k2slot.cli.output import format_text
from k2slot.cli.session import SessionConfig, run_session

SESSIONS = Path(__file__).resolve().parents[2] / "sessions"
NAMES = sorted(p.stem for p in SESSIONS.glob("*.k2"))


def test_every_session_has_a_transcript():
    assert NAMES
    assert sorted(p.stem for p in SESSIONS.glob("*.out")) == NAMES


@pytest.mark.parametrize("name", NAMES)
def test_session_matches_transcript(name):
    """A default run must reproduce the stored transcript byte for byte."""
    session = parse((SESSIONS / f"{name}.k2").read_text(encoding="utf-8"))
    text = format_text(run_session(session, SessionConfig()))
    assert text == (SESSIONS / f"{name}.out").read_text(encoding="utf-8")
