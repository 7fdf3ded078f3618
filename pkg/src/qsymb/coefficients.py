"""
Exact coefficients for noncommutative q-polynomials

A coefficient is a finite sum of monomials c * q^{k/2} * hbar^j with c an
exact complex rational, k and j integers. Half-integer powers of q are needed
because the weighted brackets produce q^{1/2} and q^{3/2}.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Dict, Iterator, Tuple, Union

Scalar = Union[int, Fraction, complex, float]

# (power of q^{1/2}, power of hbar)
Exponent = Tuple[int, int]


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with Fraction parts"""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value: Scalar) -> "ExactComplex":
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, (int, Fraction, float)):
            return cls(Fraction(value), Fraction(0))
        raise TypeError(f"Cannot convert {value!r} to an exact complex number")

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def inverse(self) -> "ExactComplex":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of exact zero")
        return ExactComplex(self.re / norm, -self.im / norm)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return "i" if self.im == 1 else ("-i" if self.im == -1 else f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        magnitude = abs(self.im)
        imag = "i" if magnitude == 1 else f"{magnitude}i"
        return f"({self.re}{sign}{imag})"


_ONE = ExactComplex(Fraction(1))


class QCoefficient(Number):
    """
    Laurent polynomial in q^{1/2} and hbar with exact complex-rational coefficients.

    Instances are immutable; zero monomials are pruned on construction.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Dict[Exponent, ExactComplex] = None):
        pruned = {}
        for exponent, value in (terms or {}).items():
            value = ExactComplex.of(value)
            if value:
                pruned[(int(exponent[0]), int(exponent[1]))] = value
        self._terms = pruned
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "QCoefficient":
        return cls()

    @classmethod
    def one(cls) -> "QCoefficient":
        return cls({(0, 0): _ONE})

    @classmethod
    def constant(cls, value: Scalar) -> "QCoefficient":
        return cls({(0, 0): ExactComplex.of(value)})

    @classmethod
    def imaginary_unit(cls) -> "QCoefficient":
        return cls({(0, 0): ExactComplex(Fraction(0), Fraction(1))})

    @classmethod
    def q_power(cls, half_exponent: int) -> "QCoefficient":
        """q^{half_exponent / 2}"""
        return cls({(half_exponent, 0): _ONE})

    @classmethod
    def q(cls, exponent: int = 1) -> "QCoefficient":
        return cls.q_power(2 * exponent)

    @classmethod
    def hbar(cls, exponent: int = 1) -> "QCoefficient":
        return cls({(0, exponent): _ONE})

    @classmethod
    def coerce(cls, value: Union["QCoefficient", Scalar]) -> "QCoefficient":
        if isinstance(value, QCoefficient):
            return value
        return cls.constant(value)

    # -- inspection -----------------------------------------------------

    def items(self) -> Iterator[Tuple[Exponent, ExactComplex]]:
        return iter(sorted(self._terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(exponent == (0, 0) for exponent in self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, QCoefficient):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, complex, float)):
            return self._terms == QCoefficient.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other) -> "QCoefficient":
        try:
            other = QCoefficient.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for exponent, value in other._terms.items():
            terms[exponent] = terms.get(exponent, ExactComplex()) + value
        return QCoefficient(terms)

    __radd__ = __add__

    def __neg__(self) -> "QCoefficient":
        return QCoefficient({exponent: -value for exponent, value in self._terms.items()})

    def __sub__(self, other) -> "QCoefficient":
        try:
            other = QCoefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QCoefficient":
        return QCoefficient.coerce(other) - self

    def __mul__(self, other) -> "QCoefficient":
        try:
            other = QCoefficient.coerce(other)
        except TypeError:
            return NotImplemented
        terms: Dict[Exponent, ExactComplex] = {}
        for (k1, j1), v1 in self._terms.items():
            for (k2, j2), v2 in other._terms.items():
                key = (k1 + k2, j1 + j2)
                terms[key] = terms.get(key, ExactComplex()) + v1 * v2
        return QCoefficient(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QCoefficient":
        if not isinstance(exponent, int) or exponent < 0:
            if isinstance(exponent, int) and self.is_monomial:
                return self.inverse() ** (-exponent)
            raise ValueError("coefficient powers must be integers (negative only for monomials)")
        result = QCoefficient.one()
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> "QCoefficient":
        """Inverse of a monomial coefficient"""
        if not self.is_monomial:
            raise ZeroDivisionError(f"only monomial coefficients are invertible, got {self}")
        (k, j), value = next(iter(self._terms.items()))
        return QCoefficient({(-k, -j): value.inverse()})

    def __truediv__(self, other) -> "QCoefficient":
        return self * QCoefficient.coerce(other).inverse()

    # -- evaluation -----------------------------------------------------

    def evaluate(self, q: float, hbar: float = 1.0) -> complex:
        """Numeric value at the given q and hbar (exact -> float boundary)"""
        root = math.sqrt(q)
        total = 0j
        for (k, j), value in self._terms.items():
            total += value.to_complex() * root ** k * hbar ** j
        return total

    def specialize_q(self, q_value: int = 1) -> "QCoefficient":
        """Exact substitution q -> 1 (the only exact rational point with rational q^{1/2} used here)"""
        if q_value != 1:
            raise ValueError("exact specialization is only defined at q = 1")
        terms: Dict[Exponent, ExactComplex] = {}
        for (_, j), value in self._terms.items():
            terms[(0, j)] = terms.get((0, j), ExactComplex()) + value
        return QCoefficient(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (k, j), value in self.items():
            factors = []
            if k:
                factors.append("q" if k == 2 else (f"q^{k // 2}" if k % 2 == 0 else f"q^({k}/2)"))
            if j:
                factors.append("hbar" if j == 1 else f"hbar^{j}")
            scalar = str(value)
            if factors and scalar == "1":
                parts.append("*".join(factors))
            elif factors and scalar == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([scalar] + factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"QCoefficient({self})"
