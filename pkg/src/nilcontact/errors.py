"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Raised for malformed or inconsistent user data (CLI exit code 2)."""


class InvariantViolation(RuntimeError):
    """An internal mathematical invariant failed; indicates an engine bug (exit code 3)."""
