"""Exception types shared by all solvers and the CLI.

The CLI maps these to exit codes: InputError -> 1, CapExceededError -> 2,
InvariantError -> 3.
"""


class InputError(ValueError):
    """Malformed instance, assignment, or argument."""


class CapExceededError(RuntimeError):
    """An enumeration was refused because the instance exceeds the safety cap."""


class InvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
