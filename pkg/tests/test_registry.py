# Purpose: Tests for cli/registry.py.
# Covers: payload validation before execute, unknown command error,
#         describe() output format, the built-in command set.

import pytest
from pydantic import BaseModel, ConfigDict, Field

from k2slot.cli.commands import build_registry
from k2slot.cli.grammar import KINDS
from k2slot.cli.registry import Command, CommandRegistry, InvalidPayload, describe_params
from k2slot.cli.session import SessionConfig
from k2slot.core.gf import field_make

CFG = SessionConfig()


class _EchoParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    message: str = Field(description="Message to echo.")


class _EchoReport(BaseModel):
    echoed: str


def _make_command(name="echo") -> Command:
    """Return a minimal command backed by a Pydantic params model."""

    def _execute(params: _EchoParams, cfg: SessionConfig) -> _EchoReport:
        return _EchoReport(echoed=params.message)

    return Command(
        name=name,
        description="Echo a message.",
        _execute=_execute,
        params_model=_EchoParams,
    )


def test_execute_valid_payload():
    """Command.execute must call _execute with the validated model."""
    assert _make_command().execute({"message": "hello"}, CFG) == _EchoReport(echoed="hello")


def test_execute_invalid_payload_raises():
    """Command.execute must raise InvalidPayload naming the bad field."""
    with pytest.raises(InvalidPayload) as info:
        _make_command().execute({"message": 3}, CFG)
    assert info.value.command == "echo"
    assert info.value.errors[0]["loc"] == ("message",)
    assert info.value.exit_code == 2
    assert "message" in str(info.value)


def test_execute_extra_fields_rejected():
    """Extra payload fields must be rejected (extra='forbid')."""
    with pytest.raises(InvalidPayload):
        _make_command().execute({"message": "hi", "extra": "bad"}, CFG)


def test_registry_get_registered_command():
    reg = CommandRegistry()
    cmd = _make_command()
    reg.register(cmd)
    assert reg.get("echo") is cmd


def test_registry_get_unknown_raises_key_error():
    with pytest.raises(KeyError):
        CommandRegistry().get("nonexistent")


def test_registry_all_commands():
    reg = CommandRegistry()
    reg.register(_make_command("a"))
    reg.register(_make_command("b"))
    assert {c.name for c in reg.all_commands()} == {"a", "b"}


def test_describe_contains_expected_fields():
    """describe() must list name, description and parameter descriptions."""
    reg = CommandRegistry()
    reg.register(_make_command())
    (entry,) = reg.describe()
    assert entry == {
        "name": "echo",
        "description": "Echo a message.",
        "parameters": {"message": "Message to echo."},
    }


def test_describe_params_of_empty_model():
    class _Empty(BaseModel):
        pass

    assert describe_params(_Empty) == {}


def test_built_in_registry_covers_every_problem_kind():
    """Every kind the grammar can produce must have a command."""
    reg = build_registry()
    assert sorted(c.name for c in reg.all_commands()) == sorted(KINDS)
    for entry in reg.describe():
        assert entry["description"]
        assert "field" in entry["parameters"]


def test_built_in_command_rejects_wrong_types():
    """A k2 command must not accept a string where a class is expected."""
    cmd = build_registry().get("zero")
    with pytest.raises(InvalidPayload) as info:
        cmd.execute({"field": field_make(3, m=2), "alpha": "{t, 2}"}, CFG)
    assert info.value.errors[0]["loc"] == ("alpha",)
