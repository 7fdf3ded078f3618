"""
Noncommutative polynomials over exact q-coefficients

A QPolynomial maps words (tuples of generators) to QCoefficients. The product
concatenates words, so it is noncommutative. ``ordered_by`` records the rule
set that produced a normal form; it is None for raw (parsed or built)
polynomials.
"""

from typing import Dict, Iterable, Iterator, Mapping, Optional, Set, Tuple, Union

from .coefficients import QCoefficient, Scalar
from .generators import Generator, Word, format_word

CoefficientLike = Union[QCoefficient, Scalar]


class QPolynomial:
    """Immutable noncommutative polynomial"""

    __slots__ = ('_terms', 'ordered_by')

    def __init__(self, terms: Mapping[Word, CoefficientLike] = None, ordered_by: Optional[str] = None):
        pruned: Dict[Word, QCoefficient] = {}
        for word, coefficient in (terms or {}).items():
            coefficient = QCoefficient.coerce(coefficient)
            if coefficient:
                pruned[tuple(word)] = coefficient
        self._terms = pruned
        self.ordered_by = ordered_by

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls()

    @classmethod
    def scalar(cls, value: CoefficientLike) -> "QPolynomial":
        return cls({(): value})

    @classmethod
    def generator(cls, generator: Generator, coefficient: CoefficientLike = 1) -> "QPolynomial":
        return cls({(generator,): coefficient})

    @classmethod
    def word(cls, word: Iterable[Generator], coefficient: CoefficientLike = 1) -> "QPolynomial":
        return cls({tuple(word): coefficient})

    @classmethod
    def coerce(cls, value: Union["QPolynomial", CoefficientLike]) -> "QPolynomial":
        if isinstance(value, QPolynomial):
            return value
        return cls.scalar(value)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Word, QCoefficient]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Word, QCoefficient]]:
        return iter(sorted(self._terms.items(), key=lambda item: (len(item[0]), [g.rank for g in item[0]])))

    def coefficient(self, word: Iterable[Generator]) -> QCoefficient:
        return self._terms.get(tuple(word), QCoefficient.zero())

    def generators(self) -> Set[Generator]:
        return {generator for word in self._terms for generator in word}

    @property
    def degree(self) -> int:
        return max((len(word) for word in self._terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        """Structural equality of the term maps (the rule-set tag is ignored)"""
        if isinstance(other, QPolynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other) -> "QPolynomial":
        try:
            other = QPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for word, coefficient in other._terms.items():
            terms[word] = terms.get(word, QCoefficient.zero()) + coefficient
        return QPolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial({word: -coefficient for word, coefficient in self._terms.items()})

    def __sub__(self, other) -> "QPolynomial":
        try:
            other = QPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QPolynomial":
        return QPolynomial.coerce(other) - self

    def __mul__(self, other) -> "QPolynomial":
        try:
            other = QPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        terms: Dict[Word, QCoefficient] = {}
        for left_word, left_coeff in self._terms.items():
            for right_word, right_coeff in other._terms.items():
                word = left_word + right_word
                terms[word] = terms.get(word, QCoefficient.zero()) + left_coeff * right_coeff
        return QPolynomial(terms)

    def __rmul__(self, other) -> "QPolynomial":
        return QPolynomial.coerce(other) * self

    def __pow__(self, exponent: int) -> "QPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = QPolynomial.scalar(1)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: CoefficientLike) -> "QPolynomial":
        factor = QCoefficient.coerce(factor)
        return QPolynomial({word: factor * coeff for word, coeff in self._terms.items()}, self.ordered_by)

    def tagged(self, rule_set_name: Optional[str]) -> "QPolynomial":
        return QPolynomial(self._terms, rule_set_name)

    def map_words(self, transform) -> "QPolynomial":
        """Apply ``transform(word) -> word`` and recombine equal words"""
        terms: Dict[Word, QCoefficient] = {}
        for word, coefficient in self._terms.items():
            new_word = tuple(transform(word))
            terms[new_word] = terms.get(new_word, QCoefficient.zero()) + coefficient
        return QPolynomial(terms)

    def map_coefficients(self, transform) -> "QPolynomial":
        return QPolynomial({word: transform(coeff) for word, coeff in self._terms.items()})

    # -- printing -------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, coefficient in self.items():
            text = str(coefficient)
            if not word:
                parts.append(f"({text})" if " " in text else text)
            elif text == "1":
                parts.append(format_word(word))
            elif text == "-1":
                parts.append("-" + format_word(word))
            else:
                parts.append(f"({text})*{format_word(word)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        tag = f", ordered_by={self.ordered_by!r}" if self.ordered_by else ""
        return f"QPolynomial({self}{tag})"
