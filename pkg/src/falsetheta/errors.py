"""Exceptions shared across the package."""


class DomainError(ValueError):
    """Parameters or evaluation points outside an operation's hypotheses."""
