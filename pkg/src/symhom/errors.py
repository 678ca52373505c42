"""Exception types shared across the package."""


class SymhomError(Exception):
    """Base class for errors raised by symhom."""


class InvalidInput(SymhomError, ValueError):
    """Input rejected before any computation (bad index, wrong ring, malformed file)."""


class ResourceCapError(SymhomError, RuntimeError):
    """A configured size cap would be exceeded."""


class ContractViolation(SymhomError, RuntimeError):
    """A mathematical invariant that must hold was found to fail."""
