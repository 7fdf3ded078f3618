"""
Exact symbolic engine for the q-deformed algebras

Parse operator expressions, normal-order noncommutative q-polynomials under
validated rewrite rules, and decide canonical equality.
"""

from .brackets import SymbolicBracketSpec, evaluate_matrix, specialize_classical, substitute_numeric, symb_bracket
from .coefficients import ExactComplex, QCoefficient
from .generators import Generator, Word, format_word
from .identities import convention_table, format_convention_table, golden_identities, verify_identities
from .parser import parse
from .polynomial import QPolynomial
from .rules import (
    DEFAULT_REWRITE_BUDGET,
    RewriteRule,
    RuleSet,
    canonical_equal,
    heisenberg_rules,
    normal_order,
    osc_rules,
    pm_rules,
    standard_rule_sets,
    xy_rules,
)

__all__ = [
    'DEFAULT_REWRITE_BUDGET',
    'ExactComplex',
    'Generator',
    'QCoefficient',
    'QPolynomial',
    'RewriteRule',
    'RuleSet',
    'SymbolicBracketSpec',
    'Word',
    'canonical_equal',
    'convention_table',
    'evaluate_matrix',
    'format_convention_table',
    'format_word',
    'golden_identities',
    'heisenberg_rules',
    'normal_order',
    'osc_rules',
    'parse',
    'pm_rules',
    'specialize_classical',
    'standard_rule_sets',
    'substitute_numeric',
    'symb_bracket',
    'verify_identities',
    'xy_rules',
]
