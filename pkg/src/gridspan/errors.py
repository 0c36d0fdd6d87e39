"""Exception types shared by the builders and the command line."""

import os


class ConstructionFailure(RuntimeError):
    """A generator could not certify its output within its iteration budget."""


class VerificationFailure(AssertionError):
    pass


def max_halvings() -> int:
    raw = os.environ.get("GRIDSPAN_MAX_HALVINGS", "64")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"GRIDSPAN_MAX_HALVINGS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError("GRIDSPAN_MAX_HALVINGS must be positive")
    return value
