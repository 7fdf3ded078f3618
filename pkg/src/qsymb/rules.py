"""
Rewrite rules and normal ordering

Each rule replaces an adjacent generator pair by a polynomial. A RuleSet is
accepted only if every rule carries a termination witness: each output word
is either shorter than the pair, or a permutation of the pair with strictly
fewer inversions. Under the measure (word length, inversion count) every
rewrite step strictly decreases, so normal ordering terminates.

Standard rule sets:

- ``pm_rules``: x p - p x = i hbar L, L p = q p L, L x = q^-1 x L, L Linv = 1
- ``osc_rules``: a adag = 1 + q adag a
- ``xy_rules``: q^{1/2} x y - q^{-1/2} y x = i L with L central, the tilde
  copy of the same relation, hatted and tilde generators commuting
- ``heisenberg_rules``: the q = 1, L = 1 specialization x p - p x = i hbar
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import structlog

from ..errors import MixedRuleSetError, RewriteBudgetExceeded, RuleSetError
from .coefficients import QCoefficient
from .generators import Generator, Word, inversions
from .polynomial import QPolynomial

logger = structlog.get_logger(__name__)

DEFAULT_REWRITE_BUDGET = 200_000

STRATEGIES = ("leftmost", "rightmost")

Pair = Tuple[Generator, Generator]


@dataclass(frozen=True)
class RewriteRule:
    """Adjacent pair -> polynomial"""
    lhs: Pair
    rhs: QPolynomial

    def __str__(self) -> str:
        return f"{self.lhs[0]}*{self.lhs[1]} -> {self.rhs}"


class RuleSet:
    """
    Named, validated collection of rewrite rules over a generator alphabet.

    Construction rejects rules without a termination witness, duplicate
    left-hand sides, spin generators, and alphabets with an out-of-order pair
    that no rule handles.
    """

    def __init__(self, name: str, rules: Iterable[RewriteRule], alphabet: Optional[Iterable[Generator]] = None):
        self.name = name
        self._rules: Dict[Pair, RewriteRule] = {}
        for rule in rules:
            self._validate_rule(rule)
            if rule.lhs in self._rules:
                raise RuleSetError(f"{name}: duplicate rule for {rule.lhs[0]}*{rule.lhs[1]}")
            self._rules[rule.lhs] = rule

        if alphabet is None:
            alphabet = {g for rule in self._rules.values() for g in rule.lhs}
        self.alphabet: FrozenSet[Generator] = frozenset(alphabet)
        self._validate_alphabet()

    def _validate_rule(self, rule: RewriteRule):
        if len(rule.lhs) != 2:
            raise RuleSetError(f"{self.name}: rules must rewrite generator pairs")
        lhs_inversions = inversions(rule.lhs)
        for word in rule.rhs.terms:
            if len(word) < 2:
                continue
            if len(word) == 2 and sorted(word) == sorted(rule.lhs) and inversions(word) < lhs_inversions:
                continue
            raise RuleSetError(
                f"{self.name}: rule {rule} has no termination witness for output word "
                f"{'*'.join(g.symbol for g in word)}")

    def _validate_alphabet(self):
        spin = [g for g in self.alphabet if g.family == "spin"]
        if spin:
            raise RuleSetError(f"{self.name}: spin generators are handled by structure constants, not rewriting")
        for left in self.alphabet:
            for right in self.alphabet:
                if left.rank > right.rank and (left, right) not in self._rules:
                    raise RuleSetError(f"{self.name}: no rule orders {left}*{right}")

    def __contains__(self, pair: Pair) -> bool:
        return pair in self._rules

    def __getitem__(self, pair: Pair) -> RewriteRule:
        return self._rules[pair]

    def __iter__(self):
        return iter(self._rules.values())

    def __len__(self) -> int:
        return len(self._rules)

    def find_redex(self, word: Word, strategy: str = "leftmost") -> Optional[int]:
        """Index of the pair to rewrite, or None if ``word`` is in normal form"""
        positions = range(len(word) - 1)
        if strategy == "rightmost":
            positions = reversed(positions)
        for i in positions:
            if (word[i], word[i + 1]) in self._rules:
                return i
        return None

    def __repr__(self) -> str:
        return f"RuleSet({self.name!r}, {len(self)} rules)"


def normal_order(poly: QPolynomial, rules: RuleSet, strategy: str = "leftmost",
                 budget: int = DEFAULT_REWRITE_BUDGET) -> QPolynomial:
    """
    Canonical normal-ordered form of ``poly`` under ``rules``.

    Args:
        poly: polynomial over the rule set's alphabet
        rules: validated rule set
        strategy: "leftmost" or "rightmost" redex selection
        budget: maximum number of rule applications

    Raises:
        RuleSetError: poly uses generators outside the alphabet
        RewriteBudgetExceeded: more than ``budget`` rule applications
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    foreign = poly.generators() - rules.alphabet
    if foreign:
        names = ", ".join(sorted(g.symbol for g in foreign))
        raise RuleSetError(f"{rules.name}: generators {names} are outside the rule set alphabet")

    result: Dict[Word, QCoefficient] = {}
    pending: List[Tuple[Word, QCoefficient]] = list(poly.terms.items())
    applications = 0
    while pending:
        word, coefficient = pending.pop()
        position = rules.find_redex(word, strategy)
        if position is None:
            result[word] = result.get(word, QCoefficient.zero()) + coefficient
            continue
        applications += 1
        if applications > budget:
            logger.warning("rewrite_budget_exceeded", rule_set=rules.name, budget=budget)
            raise RewriteBudgetExceeded(f"{rules.name}: more than {budget} rule applications")
        rule = rules[(word[position], word[position + 1])]
        prefix, suffix = word[:position], word[position + 2:]
        for out_word, out_coefficient in rule.rhs.terms.items():
            pending.append((prefix + out_word + suffix, coefficient * out_coefficient))

    return QPolynomial(result, ordered_by=rules.name)


def canonical_equal(f: QPolynomial, g: QPolynomial) -> bool:
    """Exact equality of two normal forms produced by the same rule set"""
    if f.ordered_by is None or g.ordered_by is None:
        raise MixedRuleSetError("canonical_equal needs normal-ordered operands")
    if f.ordered_by != g.ordered_by:
        raise MixedRuleSetError(f"operands ordered by {f.ordered_by!r} and {g.ordered_by!r}")
    return f == g


# -- standard rule sets --------------------------------------------------

def _poly(*terms: Tuple[Tuple[Generator, ...], QCoefficient]) -> QPolynomial:
    return QPolynomial({word: coeff for word, coeff in terms})


@lru_cache(maxsize=None)
def pm_rules() -> RuleSet:
    """Position-momentum algebra with invertible dilatation L"""
    X, P, L, Li = Generator.X, Generator.P, Generator.Lambda, Generator.LambdaInv
    one = QCoefficient.one()
    q = QCoefficient.q()
    i_hbar = QCoefficient.imaginary_unit() * QCoefficient.hbar()
    return RuleSet("pm", [
        RewriteRule((P, X), _poly(((X, P), one), ((L,), -i_hbar))),
        RewriteRule((L, X), _poly(((X, L), q ** -1))),
        RewriteRule((L, P), _poly(((P, L), q))),
        RewriteRule((Li, X), _poly(((X, Li), q))),
        RewriteRule((Li, P), _poly(((P, Li), q ** -1))),
        RewriteRule((L, Li), _poly(((), one))),
        RewriteRule((Li, L), _poly(((), one))),
    ])


@lru_cache(maxsize=None)
def heisenberg_rules() -> RuleSet:
    """Undeformed x p - p x = i hbar"""
    X, P = Generator.X, Generator.P
    i_hbar = QCoefficient.imaginary_unit() * QCoefficient.hbar()
    return RuleSet("heisenberg", [
        RewriteRule((P, X), _poly(((X, P), QCoefficient.one()), ((), -i_hbar))),
    ])


@lru_cache(maxsize=None)
def osc_rules() -> RuleSet:
    """q-oscillator a adag - q adag a = 1"""
    A, Ad = Generator.A, Generator.ADag
    return RuleSet("osc", [
        RewriteRule((A, Ad), _poly(((), QCoefficient.one()), ((Ad, A), QCoefficient.q()))),
    ])


def _xy_family(x: Generator, y: Generator, lam: Generator) -> List[RewriteRule]:
    # q^{1/2} x y - q^{-1/2} y x = i L  =>  y x = q x y - i q^{1/2} L
    i_root_q = QCoefficient.imaginary_unit() * QCoefficient.q_power(1)
    one = QCoefficient.one()
    return [
        RewriteRule((y, x), _poly(((x, y), QCoefficient.q()), ((lam,), -i_root_q))),
        RewriteRule((lam, x), _poly(((x, lam), one))),
        RewriteRule((lam, y), _poly(((y, lam), one))),
    ]


@lru_cache(maxsize=None)
def xy_rules() -> RuleSet:
    """Hatted and tilde (x, y, L) families; L central, families commuting"""
    hatted = (Generator.X, Generator.Y, Generator.Lambda)
    tilde = (Generator.Xt, Generator.Yt, Generator.LambdaT)
    rules = _xy_family(*hatted) + _xy_family(*tilde)
    one = QCoefficient.one()
    for t in tilde:
        for h in hatted:
            rules.append(RewriteRule((t, h), _poly(((h, t), one))))
    return RuleSet("xy", rules)


def standard_rule_sets() -> Dict[str, RuleSet]:
    return {rules.name: rules for rules in (pm_rules(), osc_rules(), xy_rules(), heisenberg_rules())}
