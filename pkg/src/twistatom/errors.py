"""Typed errors shared by all modules, mapped to CLI exit codes."""


class TwistatomError(Exception):
    """Base class for all package errors."""
    exit_code = 1


class ConfigError(TwistatomError):
    """Invalid configuration value or inconsistent run parameters."""
    exit_code = 2


class DomainError(ConfigError):
    """Argument outside the mathematical domain of an operation."""


class KinematicsError(TwistatomError):
    """No physically admissible kinematic solution."""
    exit_code = 3


class NumericsError(TwistatomError):
    """A numerical procedure failed to converge or is ambiguous."""
    exit_code = 4


class SelectionError(TwistatomError):
    """Channel selection failed: unresolved or ambiguous sublevels."""
    exit_code = 5


class OutputError(TwistatomError):
    """I/O failure while writing results."""
    exit_code = 6
