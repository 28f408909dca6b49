# Purpose: Root exception classes shared by the library and the CLI.
# Relationships: Every named library error subclasses one of the two roots
#               below; k2slot/__main__.py maps the root to a process exit code.


class K2SlotError(Exception):
    """Base class for every error raised on purpose by k2slot."""

    exit_code = 1


class InputError(K2SlotError):
    """Malformed or inconsistent input. The CLI exits with code 2."""

    exit_code = 2


class MathError(K2SlotError):
    """A mathematical precondition failed or a search ran out. Exit code 1."""

    exit_code = 1
