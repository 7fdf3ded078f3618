"""
Symbolic brackets and the exact-to-numeric boundary

[f, g]_{alpha,beta} = alpha f g - beta g f with alpha, beta exact
q-coefficients, normal-ordered under a rule set. The numeric helpers turn a
polynomial into word -> complex maps and into matrices for a concrete
representation.
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping

import numpy as np

from ..errors import DimensionMismatchError, RepresentationMismatchError
from ..opcore import BracketSpec
from .coefficients import QCoefficient
from .generators import Generator, Word
from .polynomial import QPolynomial
from .rules import DEFAULT_REWRITE_BUDGET, RuleSet, heisenberg_rules, normal_order

# Generators that become the identity in the undeformed limit
_DILATATIONS = (Generator.Lambda, Generator.LambdaInv, Generator.LambdaT)


@dataclass(frozen=True)
class SymbolicBracketSpec:
    """Exact bracket weights"""
    alpha: QCoefficient
    beta: QCoefficient
    name: str = field(default="custom", compare=False)

    @classmethod
    def plain(cls) -> "SymbolicBracketSpec":
        return cls(QCoefficient.one(), QCoefficient.one(), "plain")

    @classmethod
    def scaled_plain(cls) -> "SymbolicBracketSpec":
        """(q, q): q times the commutator"""
        return cls(QCoefficient.q(), QCoefficient.q(), "scaled_plain")

    @classmethod
    def q_commutator(cls) -> "SymbolicBracketSpec":
        return cls(QCoefficient.one(), QCoefficient.q(), "q_commutator")

    @classmethod
    def adjoint_q_commutator(cls) -> "SymbolicBracketSpec":
        return cls(QCoefficient.q(), QCoefficient.one(), "adjoint_q_commutator")

    @classmethod
    def symmetric(cls) -> "SymbolicBracketSpec":
        """(q^{1/2}, q^{-1/2})"""
        return cls(QCoefficient.q_power(1), QCoefficient.q_power(-1), "symmetric")

    def to_numeric(self, q: float, hbar: float = 1.0) -> BracketSpec:
        return BracketSpec(self.alpha.evaluate(q, hbar), self.beta.evaluate(q, hbar), self.name)

    def describe(self) -> str:
        return f"{self.name}(alpha={self.alpha}, beta={self.beta})"


def symb_bracket(f: QPolynomial, g: QPolynomial, spec: SymbolicBracketSpec, rules: RuleSet,
                 budget: int = DEFAULT_REWRITE_BUDGET) -> QPolynomial:
    """normal_order(alpha f g - beta g f)"""
    raw = (f * g).scale(spec.alpha) - (g * f).scale(spec.beta)
    return normal_order(raw, rules, budget=budget)


def substitute_numeric(poly: QPolynomial, q: float, hbar: float = 1.0) -> Dict[Word, complex]:
    """Evaluate every coefficient at (q, hbar); words with a zero value are dropped"""
    values = {}
    for word, coefficient in poly.items():
        value = coefficient.evaluate(q, hbar)
        if value != 0:
            values[word] = value
    return values


def evaluate_matrix(poly: QPolynomial, matrices: Mapping[Generator, np.ndarray], q: float,
                    hbar: float = 1.0) -> np.ndarray:
    """
    Matrix value of ``poly`` with each generator replaced by its matrix.

    Raises:
        RepresentationMismatchError: a generator has no matrix
        DimensionMismatchError: the matrices disagree in shape
    """
    missing = poly.generators() - set(matrices)
    if missing:
        names = ", ".join(sorted(g.symbol for g in missing))
        raise RepresentationMismatchError(f"no matrix for generators {names}")
    shapes = {np.shape(matrix) for matrix in matrices.values()}
    if len(shapes) != 1:
        raise DimensionMismatchError(f"generator matrices disagree in shape: {sorted(shapes)}")
    dim = shapes.pop()[0]

    total = np.zeros((dim, dim), dtype=complex)
    for word, value in substitute_numeric(poly, q, hbar).items():
        product = np.eye(dim, dtype=complex)
        for generator in word:
            product = product @ matrices[generator]
        total += value * product
    return total


def specialize_classical(poly: QPolynomial) -> QPolynomial:
    """
    Undeformed limit: q -> 1 exactly and every dilatation generator -> 1.

    The result is normal-ordered under the Heisenberg rules when it only
    involves x and p.
    """
    limit = poly.map_words(lambda word: tuple(g for g in word if g not in _DILATATIONS))
    limit = limit.map_coefficients(lambda coefficient: coefficient.specialize_q(1))
    if limit.generators() <= heisenberg_rules().alphabet:
        return normal_order(limit, heisenberg_rules())
    return limit
