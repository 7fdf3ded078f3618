"""
Golden identity corpus and bracket-convention tables

Golden identities are exact: the engine's canonical form must equal the
expected polynomial structurally. Convention tables are audits: they print
what each bracket convention produces for the polynomial-dynamics
derivatives next to the printed closed forms and flag matches, without
asserting either.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional

import structlog

from .brackets import SymbolicBracketSpec, specialize_classical, symb_bracket
from .coefficients import QCoefficient
from .parser import parse
from .polynomial import QPolynomial
from .rules import DEFAULT_REWRITE_BUDGET, RuleSet, heisenberg_rules, normal_order, osc_rules, pm_rules, xy_rules

logger = structlog.get_logger(__name__)

AUDIT_CONVENTIONS = (
    SymbolicBracketSpec.plain,
    SymbolicBracketSpec.q_commutator,
    SymbolicBracketSpec.symmetric,
)


@dataclass(frozen=True)
class GoldenIdentity:
    name: str
    statement: str
    compute: Callable[[int], QPolynomial]
    expected: str
    rules: Callable[[], RuleSet]


@dataclass(frozen=True)
class IdentityResult:
    name: str
    statement: str
    computed: QPolynomial
    expected: QPolynomial
    passed: bool


@dataclass(frozen=True)
class ConventionRow:
    """One audited bracket under one convention"""
    identity: str
    convention: str
    part: str
    computed: QPolynomial
    printed: QPolynomial
    matches: bool


def _ordered(text: str, rules: Callable[[], RuleSet]) -> Callable[[int], QPolynomial]:
    return lambda budget: normal_order(parse(text), rules(), budget=budget)


def _bracket(left: str, right: str, spec: SymbolicBracketSpec,
             rules: Callable[[], RuleSet]) -> Callable[[int], QPolynomial]:
    return lambda budget: symb_bracket(parse(left), parse(right), spec, rules(), budget)


def _classical(text: str) -> Callable[[int], QPolynomial]:
    return lambda budget: specialize_classical(normal_order(parse(text), pm_rules(), budget=budget))


def golden_identities() -> List[GoldenIdentity]:
    """The exact identities every build must reproduce"""
    return [
        GoldenIdentity("x_p_squared", "[x, p^2] = i hbar (1+q) p L",
                       _ordered("x p^2 - p^2 x", pm_rules), "i*hbar*(1 + q)*p*L", pm_rules),
        GoldenIdentity("position_momentum", "p x - x p = -i hbar L",
                       _ordered("p x - x p", pm_rules), "-i*hbar*L", pm_rules),
        GoldenIdentity("dilatation_inverse", "L Linv = Linv L = 1",
                       _ordered("L Linv + Linv L", pm_rules), "2", pm_rules),
        GoldenIdentity("dilatation_momentum", "L p = q p L",
                       _ordered("L p", pm_rules), "q p L", pm_rules),
        GoldenIdentity("oscillator_relation", "a adag = 1 + q adag a",
                       _ordered("a adag", osc_rules), "1 + q adag a", osc_rules),
        GoldenIdentity("oscillator_hamiltonian",
                       "[a, q H]_(1,q) = q hbar omega a  (H = hbar omega/2 (a adag + adag a), omega = 3)",
                       _bracket("a", "q*hbar*3/2*(a adag + adag a)", SymbolicBracketSpec.q_commutator(), osc_rules),
                       "3*q*hbar*a", osc_rules),
        GoldenIdentity("oscillator_dagger_hamiltonian",
                       "[adag, q H]_(q,1) = -q hbar omega adag  (H = hbar omega/2 (a adag + adag a), omega = 3)",
                       _bracket("adag", "q*hbar*3/2*(a adag + adag a)",
                                SymbolicBracketSpec.adjoint_q_commutator(), osc_rules),
                       "-3*q*hbar*adag", osc_rules),
        GoldenIdentity("heisenberg_limit", "q = 1, L = 1: x p - p x = i hbar",
                       _classical("x p - p x"), "i*hbar", heisenberg_rules),
        GoldenIdentity("xy_relation", "q^{1/2} x y - q^{-1/2} y x = i L",
                       _ordered("sqrtq x y - y x / sqrtq", xy_rules), "i*L", xy_rules),
        GoldenIdentity("tilde_relation", "q^{1/2} xt yt - q^{-1/2} yt xt = i Lt",
                       _ordered("sqrtq xt yt - yt xt / sqrtq", xy_rules), "i*Lt", xy_rules),
        GoldenIdentity("tilde_commutes", "[xt yt, q(2x + 3y)] = 0",
                       _bracket("xt yt", "q*(2x + 3y)", SymbolicBracketSpec.plain(), xy_rules), "0", xy_rules),
    ]


def check_identity(identity: GoldenIdentity, budget: int = DEFAULT_REWRITE_BUDGET) -> IdentityResult:
    computed = identity.compute(budget)
    expected = normal_order(parse(identity.expected), identity.rules(), budget=budget)
    passed = computed == expected
    logger.debug("golden_identity", name=identity.name, passed=passed, computed=str(computed))
    return IdentityResult(identity.name, identity.statement, computed, expected, passed)


def verify_identities(budget: int = DEFAULT_REWRITE_BUDGET) -> List[IdentityResult]:
    return [check_identity(identity, budget) for identity in golden_identities()]


def _q_squared_basic_number(n: int) -> QCoefficient:
    total = QCoefficient.zero()
    for k in range(n):
        total = total + QCoefficient.q(2 * k)
    return total


def _audit_row(identity: str, part: str, left: str, right: str, printed: QPolynomial,
               spec: SymbolicBracketSpec, budget: int) -> ConventionRow:
    computed = symb_bracket(parse(left), parse(right), spec, xy_rules(), budget)
    printed = normal_order(printed, xy_rules(), budget=budget)
    return ConventionRow(identity, spec.name, part, computed, printed, computed == printed)


def convention_table(budget: int = DEFAULT_REWRITE_BUDGET,
                     conventions: Optional[List[SymbolicBracketSpec]] = None) -> List[ConventionRow]:
    """
    Bracket audits for H = b x + c y, split into b- and c-parts.

    Rows: d_x = [x, q(bx + cy)] against i q^{1/2} c L; d_y = [y, q(bx + cy)]
    against -i q^{3/2} b L; the power term [x^n, q c y] against
    i q^{3/2} c [n]_q x^{n-1} L for n = 1..3; and the tilde derivative
    [xt, q(bx + cy)] against 0.
    """
    conventions = conventions or [factory() for factory in AUDIT_CONVENTIONS]
    rows = []
    for spec in conventions:
        rows.append(_audit_row("d_x", "b", "x", "q x", QPolynomial.zero(), spec, budget))
        rows.append(_audit_row("d_x", "c", "x", "q y", parse("i*sqrtq*L"), spec, budget))
        rows.append(_audit_row("d_y", "b", "y", "q x", parse("-i*sqrtq^3*L"), spec, budget))
        rows.append(_audit_row("d_y", "c", "y", "q y", QPolynomial.zero(), spec, budget))
        for n in range(1, 4):
            printed = parse(f"i*sqrtq^3*x^{n - 1}*L").scale(_q_squared_basic_number(n))
            rows.append(_audit_row("d_x^n", f"c, n={n}", f"x^{n}", "q y", printed, spec, budget))
        rows.append(_audit_row("tilde", "b+c", "xt", "q (x + y)", QPolynomial.zero(), spec, budget))
    return rows


def format_convention_table(rows: List[ConventionRow]) -> List[str]:
    """Text lines for reports"""
    lines = []
    for row in rows:
        marker = "match" if row.matches else "MISMATCH"
        lines.append(f"{row.identity:<8} {row.part:<8} {row.convention:<14} {marker:<9} "
                     f"engine: {row.computed}   printed: {row.printed}")
    return lines
