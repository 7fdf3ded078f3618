#!/usr/bin/env python3
"""
Exception hierarchy for the q-Heisenberg toolkit

Numerical disagreements between engines are reported as data; the exceptions
below are reserved for invalid input and broken invariants.
"""

from typing import Optional


class QHeisenbergError(Exception):
    """Base class for every error raised by the toolkit"""
    pass


class DomainError(QHeisenbergError, ValueError):
    """Argument outside the mathematical domain (q <= 0, n < 0, q = 1 on the lattice...)"""
    pass


class DimensionMismatchError(QHeisenbergError, ValueError):
    """Operators or vectors of incompatible dimension"""
    pass


class ConfigError(QHeisenbergError, ValueError):
    """Invalid or unknown configuration values"""
    pass


class QParseError(QHeisenbergError, ValueError):
    """Syntax error in an operator expression"""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownSymbolError(QParseError):
    """Identifier that is neither a scalar symbol nor a generator"""
    pass


class RuleSetError(QHeisenbergError, ValueError):
    """Rewrite rules that are incomplete or lack a termination witness"""
    pass


class RewriteBudgetExceeded(QHeisenbergError, RuntimeError):
    """Normal ordering used more rule applications than allowed"""
    pass


class MixedRuleSetError(QHeisenbergError, ValueError):
    """Polynomials normal-ordered under different rule sets were compared"""
    pass


class RepresentationMismatchError(QHeisenbergError, ValueError):
    """Operators taken from different representations were combined"""
    pass


class ToleranceBreach(QHeisenbergError, RuntimeError):
    """Engine deviation above the configured tolerance"""

    def __init__(self, message: str, deviation: float, tolerance: float):
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(f"{message}: deviation {deviation:.3e} > tolerance {tolerance:.3e}")
