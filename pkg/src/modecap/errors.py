"""Exception types shared across the package.

The CLI maps these onto its stable exit-code contract, so raising the right
class matters: configuration problems exit 2, domain violations 3, I/O 4,
and resolution/resource shortfalls 5.
"""
from __future__ import annotations


class ModecapError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(ModecapError):
    """Run configuration is malformed or inconsistent (CLI exit code 2)."""


class DomainError(ModecapError, ValueError):
    """An argument lies outside an operation's mathematical domain (exit 3)."""


class ResolutionError(ModecapError):
    """A grid, window, or quadrature rule is too coarse for the request (exit 5)."""
