"""Exception types shared across the package.

The command-line layer maps these onto distinct exit codes, so raising the
right class matters: input problems, solver non-convergence and violated
mathematical invariants are reported differently.
"""

__all__ = ["InputError", "ConvergenceError", "InvariantError"]


class InputError(ValueError):
    """Malformed or inconsistent user input (files, flags, parameters)."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""


class InvariantError(AssertionError):
    """A mathematical invariant the library guarantees was violated."""
