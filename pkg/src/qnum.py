#!/usr/bin/env python3
"""
q-Basic Numbers and q-Deformed Frequencies

Two basic-number conventions coexist:

- ``basic_number_paper``: (q^{2n} - 1) / (q^2 - 1), the q^2-base form used by
  the polynomial-dynamics solution and omega_q. ``basic_number_squared`` is
  the same function under the name of what it computes.
- ``basic_number_osc``: (q^n - 1) / (q - 1), forced by the Fock
  representation of a a^+ - q a^+ a = 1 through [n+1] = 1 + q [n].

Callers name the variant they use. Near q = 1 both switch to the analytic
limit n instead of dividing two vanishing floats. Exact ``Fraction`` input
is summed term by term and stays exact.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

Real = Union[int, float, Fraction]

# |q - 1| below which the q-singular closed forms use their q -> 1 limit
LIMIT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class QParams:
    """Deformation parameter with the action scale and limit-switch threshold"""
    q: float
    hbar: float = 1.0
    limit_tolerance: float = LIMIT_TOLERANCE

    def __post_init__(self):
        if not self.q > 0:
            raise DomainError(f"q must be positive, got {self.q}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if not self.limit_tolerance > 0:
            raise DomainError("limit_tolerance must be strictly positive")

    @property
    def is_classical(self) -> bool:
        """True when q is within the limit-switch threshold of 1"""
        return abs(self.q - 1.0) < self.limit_tolerance

    @property
    def sqrt_q(self) -> float:
        return math.sqrt(self.q)


def _check_arguments(n: int, q: Real):
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")


def basic_number_paper(n: int, q: Real, limit_tolerance: float = LIMIT_TOLERANCE) -> Real:
    """
    q^2-base basic number [n]_q = (q^{2n} - 1) / (q^2 - 1).

    Args:
        n: non-negative integer
        q: positive deformation parameter (float or Fraction)
        limit_tolerance: |q - 1| below which n is returned

    Returns:
        [n]_q; equals 1 + q^2 + ... + q^{2(n-1)}
    """
    _check_arguments(n, q)
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
        return sum((q ** (2 * k) for k in range(n)), Fraction(0))
    if abs(q - 1.0) < limit_tolerance:
        return float(n)
    return (q ** (2 * n) - 1.0) / (q ** 2 - 1.0)


basic_number_squared = basic_number_paper


def basic_number_osc(n: int, q: Real, limit_tolerance: float = LIMIT_TOLERANCE) -> Real:
    """
    q-base basic number [n] = (q^n - 1) / (q - 1) of the oscillator recursion.

    Satisfies [0] = 0 and [n+1] = 1 + q [n]; equals n at q = 1.
    """
    _check_arguments(n, q)
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
        return sum((q ** k for k in range(n)), Fraction(0))
    if abs(q - 1.0) < limit_tolerance:
        return float(n)
    return (q ** n - 1.0) / (q - 1.0)


def basic_factorial_osc(n: int, q: Real) -> Real:
    """[n]! = [1][2]...[n] with the oscillator basic numbers"""
    _check_arguments(n, q)
    result: Real = 1
    for k in range(1, n + 1):
        result *= basic_number_osc(k, q)
    return result


def q_frequency_osc(omega: float, q: float) -> float:
    """
    q-oscillator frequency omega_q = omega [2]_q / (2 q^2) = omega (q^2 + 1) / (2 q^2).

    [2]_q uses the q^2-base convention.
    """
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    return omega * basic_number_paper(2, q) / (2.0 * q ** 2)


def q_frequency_spin(field: float, q: float, lam: float = 1.0, electron_mass: float = 1.0,
                     light_speed: float = 1.0, charge: float = 1.0) -> float:
    """
    Precession frequency omega_q = e B q^2 lambda / (m_e c).

    Pass ``charge=1`` to reproduce the printed expression, which omits e.
    """
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    if not (electron_mass > 0 and light_speed > 0):
        raise DomainError("electron mass and light speed must be positive")
    return charge * field * q ** 2 * lam / (electron_mass * light_speed)
