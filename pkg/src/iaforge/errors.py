"""Exception hierarchy shared by every iaforge module."""


class IAForgeError(Exception):
    """Base class for all errors raised by iaforge."""


class InputError(IAForgeError, ValueError):
    """Malformed or inconsistent user input (unknown labels, bad files...)."""


class InvariantError(IAForgeError):
    """A value violates a structural invariant, e.g. weights not summing to 1."""


class PreconditionError(InputError):
    """An operation was called outside of its documented precondition."""
