"""Exception taxonomy shared across the toolkit."""

from __future__ import annotations

import os

from .graph import GraphInputError as InputError  # re-export

__all__ = ["InputError", "GuardExceeded", "ClassViolation", "effective_guard"]


class GuardExceeded(RuntimeError):
    """A search exceeded its configured size guard.

    Guards keep detector runtimes predictable; raise them explicitly via
    function arguments or the EHFTW_GUARD_OVERRIDE environment variable.
    """


class ClassViolation(RuntimeError):
    """An operation that assumes class membership found a forbidden pattern
    (or a consequence of one).  Carries the blocking witness when one was
    extracted."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def effective_guard(default: int, override: int | None = None) -> int:
    """Resolve a size guard: explicit override, else env raise, else default.

    EHFTW_GUARD_OVERRIDE can only raise guards, never lower them.
    """
    if override is not None:
        return override
    env = os.environ.get("EHFTW_GUARD_OVERRIDE")
    if env:
        try:
            return max(default, int(env))
        except ValueError:
            pass
    return default
