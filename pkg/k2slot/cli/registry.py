# Purpose: Command dataclass, CommandRegistry, and payload validation.
# Relationships: cli/commands.py builds the commands; cli/session.py
#               dispatches every parsed problem through this.
#
# Payloads are validated before any command runs. Commands receive the
# validated model, never the raw dict.

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable

from pydantic import BaseModel, ValidationError

from ..core.errors import InputError

if TYPE_CHECKING:
    from .session import SessionConfig


class InvalidPayload(InputError):
    def __init__(self, command: str, exc: ValidationError) -> None:
        self.command = command
        self.errors = exc.errors(include_url=False)
        fields = ", ".join(".".join(str(p) for p in e["loc"]) or "<root>" for e in self.errors)
        super().__init__(f"{command}: invalid payload ({fields})")


def describe_params(model: type[BaseModel]) -> dict[str, str]:
    """Field name -> description. Payload fields hold library objects, so no JSON Schema."""
    return {
        name: info.description or ""
        for name, info in model.model_fields.items()
    }


@dataclass
class Command:
    name: str
    description: str
    _execute: Callable[[Any, "SessionConfig"], BaseModel] = field(repr=False)
    params_model: type[BaseModel] = field(repr=False)

    def execute(self, payload: dict, cfg: "SessionConfig") -> BaseModel:
        # Always through here; _execute assumes a validated model.
        try:
            params = self.params_model.model_validate(payload)
        except ValidationError as exc:
            raise InvalidPayload(self.name, exc) from None
        return self._execute(params, cfg)


class CommandRegistry:
    def __init__(self) -> None:
        self._commands: dict[str, Command] = {}

    def register(self, command: Command) -> None:
        self._commands[command.name] = command

    def get(self, name: str) -> Command:
        if name not in self._commands:
            raise KeyError(f"Unknown command: {name!r}")
        return self._commands[name]

    def all_commands(self) -> list[Command]:
        return list(self._commands.values())

    def describe(self) -> list[dict]:
        return [
            {
                "name": c.name,
                "description": c.description,
                "parameters": describe_params(c.params_model),
            }
            for c in self._commands.values()
        ]
