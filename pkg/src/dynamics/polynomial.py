"""
Polynomial dynamical functions under H = b x + c y

Evaluates the stated solution for f = sum alpha_nm(u) x^n y^m:

    f(t) = sum alpha_nm(0) x^n y^m
           + i L sum I_nm [q^{3/2} c [n]_q x^{n-1} - q^{1/2} [m]_q b y^{m-1}]

with I_nm the integral of alpha_nm over [0, t] by composite Simpson and
[n]_q the q^2-base basic number. The result is a QPolynomial over the xy
alphabet with L as the central generator; q stays symbolic in the
coefficients and the numeric factors (alpha values, integrals, b, c) are
carried as exact rationals of their float values. The (1,0) and (0,1)
exponential forms are evaluated with L -> lambda, next to their
first-order expansions.

The exponential rates carry q^{1/2} on the (1,0) term and q^{3/2} on the
(0,1) term while the drift carries them the other way round. Both are
reported as stated; ``coefficient_mismatch`` measures the gap.
"""

import cmath
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import structlog
from numpy.polynomial import polynomial as npoly
from scipy.integrate import simpson

from ..errors import DomainError
from ..qnum import basic_number_paper
from ..qsymb.brackets import substitute_numeric
from ..qsymb.coefficients import ExactComplex, QCoefficient
from ..qsymb.generators import Generator, Word
from ..qsymb.polynomial import QPolynomial
from .scenario import PrintedForms

logger = structlog.get_logger(__name__)

AlphaFunction = Callable[[float], complex]
Index = Tuple[int, int]


@dataclass
class PolyEvolutionReport:
    """Evaluated solution at one time"""
    t: float
    q: float
    integrals: Dict[Index, complex]
    initial: QPolynomial
    drift: QPolynomial
    evaluated: QPolynomial
    rates: Dict[Index, complex] = field(default_factory=dict)
    exponential: Dict[Index, complex] = field(default_factory=dict)
    first_order: Dict[Index, complex] = field(default_factory=dict)
    difference: Dict[Index, float] = field(default_factory=dict)
    coefficient_mismatch: Dict[Index, float] = field(default_factory=dict)

    def values(self, part: str = "evaluated") -> Dict[Word, complex]:
        """Numeric coefficients of ``initial``, ``drift`` or ``evaluated`` at this report's q"""
        return substitute_numeric(getattr(self, part), self.q)


def polynomial_alpha(coefficients: Sequence[float]) -> AlphaFunction:
    """alpha(u) = c0 + c1 u + c2 u^2 + ..."""
    coefficients = tuple(float(value) for value in coefficients)
    return lambda u: complex(npoly.polyval(u, coefficients))


def simpson_integral(function: AlphaFunction, t: float, steps: int) -> complex:
    """Composite Simpson rule on ``steps`` uniform intervals of [0, t]"""
    if steps < 2:
        raise DomainError(f"quadrature needs at least 2 steps, got {steps}")
    if t == 0:
        return 0j
    nodes = np.linspace(0.0, t, steps + 1)
    values = np.array([function(u) for u in nodes], dtype=complex)
    dx = t / steps
    return complex(simpson(values.real, dx=dx), simpson(values.imag, dx=dx))


def _word(n: int, m: int) -> Word:
    return (Generator.X,) * n + (Generator.Y,) * m


def _drift_coefficient(half_power: int, count: int, value: complex) -> QCoefficient:
    """value * q^{half_power/2} * [count]_q with the q^2-base sum kept symbolic"""
    exact = ExactComplex.of(complex(value))
    return QCoefficient({(half_power + 4 * k, 0): exact for k in range(count)})


def poly_coeff_evolution(alpha: Mapping[Index, AlphaFunction], b: float, c: float, q: float, t: float,
                         quadrature_steps: int = 200, lam: float = 1.0,
                         printed: Optional[PrintedForms] = None) -> PolyEvolutionReport:
    """
    Evaluate the polynomial solution and the (1,0)/(0,1) exponential forms at time t.

    Args:
        alpha: (n, m) -> alpha_nm(u)
        b, c: Hamiltonian coefficients of H = b x + c y
        q: deformation parameter
        t: evaluation time
        quadrature_steps: Simpson intervals on [0, t]
        lam: scalar standing in for L inside the exponentials
        printed: ``alpha10_in_y_solution`` integrates alpha_10 in the (0,1) form

    Raises:
        DomainError: quadrature_steps < 2 or q <= 0
    """
    if quadrature_steps < 2:
        raise DomainError(f"quadrature needs at least 2 steps, got {quadrature_steps}")
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    printed = printed or PrintedForms()
    root_q = q ** 0.5

    integrals = {index: simpson_integral(function, t, quadrature_steps) for index, function in alpha.items()}
    initial_terms: Dict[Word, QCoefficient] = {}
    drift = QPolynomial.zero()
    for (n, m), function in alpha.items():
        initial_terms[_word(n, m)] = QCoefficient.constant(complex(function(0.0)))
        integral = integrals[(n, m)]
        if n >= 1:
            drift += QPolynomial.word(_word(n - 1, 0) + (Generator.Lambda,),
                                      _drift_coefficient(3, n, 1j * c * integral))
        if m >= 1:
            drift += QPolynomial.word(_word(0, m - 1) + (Generator.Lambda,),
                                      _drift_coefficient(1, m, -1j * b * integral))
    initial = QPolynomial(initial_terms)
    report = PolyEvolutionReport(t, q, integrals, initial, drift, initial + drift)

    # drift rate of the single (1,0) or (0,1) term with L -> lambda
    drift_rates: Dict[Index, complex] = {}
    if (1, 0) in alpha:
        omega = lam * root_q * c
        report.rates[(1, 0)] = 1j * omega
        report.exponential[(1, 0)] = cmath.exp(1j * omega * integrals[(1, 0)])
        report.first_order[(1, 0)] = 1.0 + 1j * omega * integrals[(1, 0)]
        drift_rates[(1, 0)] = 1j * lam * root_q ** 3 * c * basic_number_paper(1, q)
    if (0, 1) in alpha:
        source = (1, 0) if printed.alpha10_in_y_solution else (0, 1)
        integral = integrals.get(source, 0j)
        omega = -lam * root_q ** 3 * b
        report.rates[(0, 1)] = 1j * omega
        report.exponential[(0, 1)] = cmath.exp(1j * omega * integral)
        report.first_order[(0, 1)] = 1.0 + 1j * omega * integral
        drift_rates[(0, 1)] = -1j * lam * root_q * b * basic_number_paper(1, q)
    for index in report.exponential:
        report.difference[index] = abs(report.exponential[index] - report.first_order[index])
        report.coefficient_mismatch[index] = abs((drift_rates[index] - report.rates[index]) * integrals[index])

    logger.debug("poly_coeff_evolution", t=t, q=q, terms=len(alpha), difference=report.difference,
                 mismatch=report.coefficient_mismatch)
    return report
