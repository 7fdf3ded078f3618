#!/usr/bin/env python3
"""
Invariant Suite

Runs every numerical and symbolic invariant of the toolkit, the golden
identity corpus and the bracket-convention audit, and collects a scan-style
results dictionary: each check ends up ``passed``, ``issues_found`` or
``failed`` (raised).
"""

import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import structlog
from colorama import Fore, Style
from colorama import init as colorama_init

from .config import NumericsConfig
from .dynamics import (
    PrintedForms,
    Scenario,
    TimeGrid,
    cross_validate,
    heisenberg_transform,
    poly_coeff_evolution,
    polynomial_alpha,
    propagator,
    schrodinger_expectation,
)
from .opcore import (
    BracketSpec,
    adjoint,
    as_matrix,
    bracket,
    build_liouvillian,
    expectation,
    matrix_exp,
    pauli_matrices,
    unvec,
    vec,
)
from .qnum import basic_number_osc, basic_number_paper, q_frequency_osc
from .qsymb import (
    Generator,
    QCoefficient,
    QPolynomial,
    RuleSet,
    convention_table,
    evaluate_matrix,
    format_convention_table,
    normal_order,
    osc_rules,
    pm_rules,
    verify_identities,
    xy_rules,
)
from .reps import SPIN_LABELS, FockRep, LatticeRep, SpinRep

logger = structlog.get_logger(__name__)

Issues = List[str]

SEED = 20240611


def _check(condition: bool, message: str, issues: Issues):
    if not condition:
        issues.append(message)


def _max_abs(matrix) -> float:
    return float(np.max(np.abs(as_matrix(matrix))))


# -- qnum -------------------------------------------------------------------

def check_qnum(numerics: NumericsConfig) -> Issues:
    issues: Issues = []
    _check(basic_number_paper(1, 2) == 1, "[1] (q^2 base) at q=2 is not 1", issues)
    _check(basic_number_paper(0, 3) == 0, "[0] (q^2 base) at q=3 is not 0", issues)
    _check(basic_number_paper(2, 2) == 5, "[2] (q^2 base) at q=2 is not 5", issues)
    _check(basic_number_osc(3, 2) == 7, "[3] (oscillator) at q=2 is not 7", issues)
    _check(basic_number_osc(4, 1) == 4, "[4] (oscillator) at q=1 is not 4", issues)
    _check(math.isclose(q_frequency_osc(2.0, 2.0), 1.25), "omega_q(2, 2) is not 1.25", issues)
    _check(q_frequency_osc(1.0, 1.0) == 1.0, "omega_q does not reduce to omega at q=1", issues)

    for q in (0.5, 1.3, 2.0):
        for n in range(10):
            squared_step = basic_number_paper(n + 1, q) - 1 - q ** 2 * basic_number_paper(n, q)
            osc_step = basic_number_osc(n + 1, q) - 1 - q * basic_number_osc(n, q)
            _check(abs(squared_step) < 1e-9 * max(1.0, basic_number_paper(n + 1, q)),
                   f"q^2-base recursion broken at n={n}, q={q}", issues)
            _check(abs(osc_step) < 1e-9 * max(1.0, basic_number_osc(n + 1, q)),
                   f"oscillator recursion broken at n={n}, q={q}", issues)

    for q in (1 - 1e-3, 1 + 1e-3, 1 - 1e-6, 1 + 1e-6):
        for n in range(1, 6):
            for name, value in (("q^2 base", basic_number_paper(n, q)), ("oscillator", basic_number_osc(n, q))):
                _check(abs(value - n) / n < 1e-2, f"{name} [{n}] at q={q} is far from {n}", issues)

    previous = math.inf
    for q in (1.1, 1.01, 1.001):
        distance = abs(q_frequency_osc(1.0, q) - 1.0)
        _check(distance < previous, f"omega_q does not approach omega monotonically at q={q}", issues)
        previous = distance
    return issues


# -- opcore -----------------------------------------------------------------

def _random_matrix(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))


def _random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = _random_matrix(rng, dim)
    return 0.5 * (m + m.conj().T)


def check_opcore(numerics: NumericsConfig) -> Issues:
    issues: Issues = []
    rng = np.random.default_rng(SEED)
    sigma = {axis: as_matrix(m) for axis, m in pauli_matrices().items()}

    _check(_max_abs(bracket(sigma['x'], sigma['y'], BracketSpec.commutator()) - 2j * sigma['z']) < 1e-15,
           "[sx, sy] != 2i sz", issues)
    _check(_max_abs(matrix_exp(-0.5j * math.pi * sigma['x'], numerics.expm_tolerance) + 1j * sigma['x']) < 1e-12,
           "exp(-i pi/2 sx) != -i sx", issues)
    plus = 0.5 * (sigma['x'] + 1j * sigma['y'])
    _check(_max_abs(as_matrix(adjoint(plus)) - 0.5 * (sigma['x'] - 1j * sigma['y'])) == 0.0,
           "adjoint(s+) != s-", issues)
    liouvillian = build_liouvillian(sigma['z'], BracketSpec.commutator(), 1.0)
    _check(np.max(np.abs(unvec(liouvillian.entries @ vec(plus), 2) - 2 * plus)) < 1e-15,
           "L(s+) != 2 s+ for H = sz", issues)
    state = np.array([1.0, 1.0]) / math.sqrt(2.0)
    _check(abs(expectation(state, sigma['x']) - 1.0) < 1e-15, "<+|sx|+> != 1", issues)

    for trial in range(20):
        dim = 2 + trial % 5
        a, b, c = (_random_matrix(rng, dim) for _ in range(3))
        spec = BracketSpec.commutator()
        _check(_max_abs(as_matrix(bracket(a, b, spec)) + as_matrix(bracket(b, a, spec))) < 1e-12,
               f"commutator not antisymmetric (dim={dim})", issues)
        linear = as_matrix(bracket(2.0 * a + c, b, spec)) - 2.0 * as_matrix(bracket(a, b, spec)) \
            - as_matrix(bracket(c, b, spec))
        _check(np.max(np.abs(linear)) < 1e-12, f"bracket not linear (dim={dim})", issues)

        h, f = _random_matrix(rng, dim), _random_matrix(rng, dim)
        q = 0.5 + rng.random()
        for spec in (BracketSpec.commutator(), BracketSpec.q_commutator(q), BracketSpec.symmetric(q)):
            superop = build_liouvillian(h, spec, q)
            direct = as_matrix(bracket(q * h, f, spec))
            _check(np.max(np.abs(unvec(superop.entries @ vec(f), dim) - direct)) < 1e-12,
                   f"Liouvillian contract broken ({spec.describe()}, dim={dim})", issues)

        small = _random_matrix(rng, dim)
        small *= 2.0 / np.linalg.norm(small, 2)
        product = as_matrix(matrix_exp(small, numerics.expm_tolerance)) @ as_matrix(matrix_exp(-small))
        _check(np.max(np.abs(product - np.eye(dim))) < 1e-9, f"exp(A) exp(-A) != I (dim={dim})", issues)
        u = as_matrix(matrix_exp(-1j * 0.8 * _random_hermitian(rng, dim), numerics.expm_tolerance))
        _check(np.max(np.abs(u.conj().T @ u - np.eye(dim))) < 1e-9, f"exp(-itH) not unitary (dim={dim})", issues)
    return issues


# -- qsymb ------------------------------------------------------------------

def check_golden_identities(numerics: NumericsConfig) -> Issues:
    return [f"{result.name}: {result.statement} gave {result.computed}, expected {result.expected}"
            for result in verify_identities(numerics.rewrite_budget) if not result.passed]


def random_polynomial(rng: np.random.Generator, alphabet: List[Generator], max_terms: int = 4,
                      max_degree: int = 4) -> QPolynomial:
    """Sum of up to ``max_terms`` random words with small exact coefficients"""
    poly = QPolynomial.zero()
    for _ in range(int(rng.integers(1, max_terms + 1))):
        length = int(rng.integers(0, max_degree + 1))
        word = tuple(alphabet[int(i)] for i in rng.integers(0, len(alphabet), size=length))
        value = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        coefficient = QCoefficient.constant(value) * QCoefficient.q_power(int(rng.integers(-2, 3)))
        poly = poly + QPolynomial.word(word, coefficient)
    return poly


def _rule_alphabet(rules: RuleSet, limit: int = 4) -> List[Generator]:
    return sorted(rules.alphabet, key=lambda g: g.rank)[:limit]


def check_rewriting(numerics: NumericsConfig, samples: int = 200) -> Issues:
    issues: Issues = []
    rng = np.random.default_rng(SEED)
    rule_sets = [pm_rules(), osc_rules(), xy_rules()]
    for i in range(samples):
        rules = rule_sets[i % len(rule_sets)]
        poly = random_polynomial(rng, _rule_alphabet(rules))
        left = normal_order(poly, rules, "leftmost", numerics.rewrite_budget)
        right = normal_order(poly, rules, "rightmost", numerics.rewrite_budget)
        _check(left == right, f"{rules.name}: strategies disagree on {poly}", issues)
        _check(normal_order(left, rules, budget=numerics.rewrite_budget) == left,
               f"{rules.name}: normal order not idempotent on {poly}", issues)
    return issues


def check_symbolic_matrix_agreement(numerics: NumericsConfig, samples: int = 40) -> Issues:
    issues: Issues = []
    rng = np.random.default_rng(SEED + 1)
    alphabet = [Generator.ADag, Generator.A]
    for q in (0.5, 1.3):
        rep = FockRep(10, q)
        matrices = rep.generator_matrices()
        for _ in range(samples):
            poly = random_polynomial(rng, alphabet, max_degree=3)
            ordered = normal_order(poly, osc_rules(), budget=numerics.rewrite_budget)
            depth = max(poly.degree, 1)
            projector = as_matrix(rep.interior_projector(depth))
            difference = (evaluate_matrix(ordered, matrices, q) - evaluate_matrix(poly, matrices, q)) @ projector
            _check(np.max(np.abs(difference)) < 1e-10, f"Fock evaluation of {poly} differs at q={q}", issues)
    return issues


# -- reps -------------------------------------------------------------------

def check_representations(numerics: NumericsConfig) -> Issues:
    issues: Issues = []
    for q in (0.5, 0.9, 1.5, 2.0):
        for size in (8, 16):
            rep = FockRep(size, q)
            for defect in rep.relation_defects(1):
                _check(defect.holds(1e-12), f"Fock N={size} q={q}: {defect.relation} = {defect.interior:.2e}", issues)
                _check(set(defect.locations) <= {(size - 1, size - 1)},
                       f"Fock N={size} q={q}: defect outside the top state {defect.locations}", issues)
            h = as_matrix(rep.hamiltonian)
            _check(np.allclose(h, h.conj().T, atol=1e-14), f"Fock H not Hermitian (N={size}, q={q})", issues)
            diagonal = np.real(np.diag(h))[:-1]
            _check(np.allclose(diagonal, rep.hamiltonian_diagonal()[:-1], rtol=1e-12),
                   f"Fock H diagonal off (N={size}, q={q})", issues)
        for half_width in (4, 8, 16):
            lattice = LatticeRep(half_width, q, limit_tolerance=numerics.limit_tolerance)
            for defect in lattice.relation_defects(1):
                _check(defect.interior <= 1e-12 * lattice.entry_scale,
                       f"lattice N={half_width} q={q}: {defect.relation} = {defect.interior:.2e}", issues)

    spin = SpinRep()
    _check(spin.is_antisymmetric(), "spin bracket table not antisymmetric", issues)
    channels, prefactor = spin.bracket_table("Sx", "Sy")
    _check(channels == {"Sz": -1.0} and prefactor == 1j, "[Sx, Sy]_q is not -i hbar lambda Sz", issues)
    _check(spin.differences_from_su2() == [("Sx", "Sy")], "unexpected su(2) sign differences", issues)

    # [S_i, qH] for H = -(q e B / m_e c) Sz
    q, field_strength = 1.3, 0.7
    m = spin.bracket_with_hamiltonian(spin.hamiltonian_coefficients(field_strength, q), q)
    rate = field_strength * q ** 2
    expected = np.zeros((3, 3))
    expected[1, 0] = rate
    expected[0, 1] = -rate
    _check(np.allclose(m, expected, atol=1e-15), "spin brackets with the Hamiltonian disagree", issues)
    return issues


# -- dynamics ---------------------------------------------------------------

def check_propagator(numerics: NumericsConfig) -> Issues:
    issues: Issues = []
    rng = np.random.default_rng(SEED + 2)
    for dim in (2, 3, 5):
        h = _random_hermitian(rng, dim)
        b = _random_hermitian(rng, dim)
        _check(_max_abs(as_matrix(propagator(h, 0.4, 0.4)) - np.eye(dim)) < 1e-14, "U(t0, t0) != I", issues)
        forward = as_matrix(propagator(h, 1.1, 0.3))
        backward = as_matrix(propagator(h, 0.3, 1.1))
        _check(np.max(np.abs(forward.conj().T - backward)) < 1e-12, "U^+(t, t0) != U(t0, t)", issues)

        evolved = as_matrix(heisenberg_transform(b, h, 0.9))
        _check(np.allclose(np.linalg.eigvalsh(0.5 * (evolved + evolved.conj().T)), np.linalg.eigvalsh(b),
                           atol=1e-9), "U^+ B U changed the spectrum", issues)
        _check(_max_abs(as_matrix(heisenberg_transform(h, h, 2.0)) - h) < 1e-12, "H is not conserved", issues)

        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        schrodinger = schrodinger_expectation(psi, b, h, 0.9)
        heisenberg = expectation(psi, evolved)
        _check(abs(schrodinger - heisenberg) < 1e-10, "Schrodinger and Heisenberg expectations differ", issues)
    return issues


def _breaches(report, tolerance: float, label: str, issues: Issues, pairs: Optional[List[Tuple[str, str]]] = None):
    for comparison in report.breaches(tolerance):
        pair = (comparison.engine_a, comparison.engine_b)
        if pairs is None or pair in pairs or pair[::-1] in pairs:
            issues.append(f"{label}: {comparison.observable} {pair[0]} vs {pair[1]} = "
                          f"{comparison.max_deviation:.2e} > {tolerance:.0e}")


def check_engine_triangulation(numerics: NumericsConfig) -> Issues:
    issues: Issues = []
    scenario = Scenario("q_oscillator", q=1.3, grid=TimeGrid(10.0, numerics.ode_steps), fock_size=16)
    report = cross_validate(scenario, numerics=numerics)
    _breaches(report, 1e-6, "oscillator q=1.3", issues)
    for engine in ("closed", "ode", "liouville"):
        defect = report.invariants[f"q_commutation_defect_{engine}"]
        _check(defect < 1e-10,
               f"q-commutation relation drifts under {engine}: {defect:.2e}", issues)

    free = cross_validate(Scenario("free_particle", q=1.5, grid=TimeGrid(1.0, 1000)), numerics=numerics)
    _breaches(free, 1e-6, "free particle q=1.5", issues, pairs=[("ode", "liouville")])
    _check(free.invariants['x_second_difference'] < 1e-12,
           f"free-particle position is not affine in t: {free.invariants['x_second_difference']:.2e}", issues)

    spin = cross_validate(Scenario("spin_precession", q=1.2, lam=0.8, grid=TimeGrid(10.0, numerics.ode_steps)),
                          numerics=numerics)
    _breaches(spin, 1e-6, "spin q=1.2", issues)
    for key, drift in spin.invariants.items():
        _check(drift < 1e-10, f"spin {key} = {drift:.2e}", issues)
    return issues


def check_classical_recovery(numerics: NumericsConfig) -> Issues:
    issues: Issues = []
    oscillator = cross_validate(Scenario("q_oscillator", q=1.0, grid=TimeGrid(2.0, 400), fock_size=12),
                                numerics=numerics)
    _check('oracle' in oscillator.engines, "no undeformed oracle for the oscillator at q=1", issues)
    _breaches(oscillator, 1e-8, "oscillator q=1", issues)
    spin = cross_validate(Scenario("spin_precession", q=1.0, grid=TimeGrid(2.0, 400)), numerics=numerics)
    _check('oracle' in spin.engines, "no spin-1/2 oracle at q=1", issues)
    _breaches(spin, 1e-8, "spin q=1", issues)
    _check(q_frequency_osc(3.0, 1.0) == 3.0, "omega_q != omega at q=1", issues)
    return issues


def check_polynomial_evaluator(numerics: NumericsConfig) -> Issues:
    issues: Issues = []
    alpha = {(1, 0): polynomial_alpha([1.0]), (0, 1): polynomial_alpha([1.0])}
    for q in (0.8, 1.4):
        differences = {}
        for t in (1e-2, 1e-3):
            entry = poly_coeff_evolution(alpha, 0.6, 1.3, q, t, 200, printed=PrintedForms())
            differences[t] = entry.difference
        for index in ((1, 0), (0, 1)):
            ratio = differences[1e-2][index] / differences[1e-3][index]
            _check(50.0 <= ratio <= 200.0, f"Taylor remainder ratio {ratio:.1f} for {index} at q={q}", issues)
    for q in (1.0, 1.4):
        entry = poly_coeff_evolution(alpha, 0.6, 1.3, q, 0.5)
        vanishes = all(value < 1e-15 for value in entry.coefficient_mismatch.values())
        _check(vanishes == (q == 1.0), f"drift/rate mismatch at q={q}: {entry.coefficient_mismatch}", issues)
    zero = poly_coeff_evolution({(2, 1): polynomial_alpha([0.0])}, 1.0, 1.0, 1.2, 0.5)
    _check(zero.evaluated.is_zero, "vanishing coefficients left terms behind", issues)
    return issues


def check_spin_oracle(numerics: NumericsConfig) -> Issues:
    """Spin-1/2 matrices at q = lambda = 1 against the rotation closed form"""
    issues: Issues = []
    spin = SpinRep()
    matrices = {label: as_matrix(m) for label, m in spin.spin_half_matrices().items()}
    field_strength = 0.9
    h = sum(c * matrices[label] for c, label in zip(spin.hamiltonian_coefficients(field_strength, 1.0), SPIN_LABELS))
    for t in (0.0, 0.4, 1.7):
        sx = as_matrix(heisenberg_transform(matrices["Sx"], h, t))
        angle = field_strength * t
        expected = math.cos(angle) * matrices["Sx"] + math.sin(angle) * matrices["Sy"]
        _check(np.max(np.abs(sx - expected)) < 1e-8, f"spin-1/2 Sx(t) disagrees at t={t}", issues)
    return issues


CHECKS: Dict[str, Tuple[str, Callable[[NumericsConfig], Issues]]] = {
    'qnum': ("🔢", check_qnum),
    'opcore': ("🧮", check_opcore),
    'golden_identities': ("📜", check_golden_identities),
    'rewriting': ("🔁", check_rewriting),
    'symbolic_vs_matrix': ("🔗", check_symbolic_matrix_agreement),
    'representations': ("🧱", check_representations),
    'propagator': ("⏱️ ", check_propagator),
    'engine_triangulation': ("📐", check_engine_triangulation),
    'classical_recovery': ("🎯", check_classical_recovery),
    'spin_oracle': ("🌀", check_spin_oracle),
    'polynomial_evaluator': ("📈", check_polynomial_evaluator),
}


def _status_line(status: str) -> str:
    colour = {'passed': Fore.GREEN, 'issues_found': Fore.YELLOW}.get(status, Fore.RED)
    label = "PASS" if status == 'passed' else "FAIL"
    return f"{colour}{label}{Style.RESET_ALL}"


def run_verification(numerics: Optional[NumericsConfig] = None, checks: Optional[List[str]] = None,
                     print_table: bool = True) -> Dict[str, Dict[str, object]]:
    """
    Run the invariant suite and print a line per check.

    Returns:
        check name -> {'status': 'passed' | 'issues_found' | 'failed', 'issues': [...]}
    """
    colorama_init()
    numerics = numerics or NumericsConfig()
    results: Dict[str, Dict[str, object]] = {}
    print("🔬 Running the invariant suite...")
    print("=" * 60)

    for name in checks or list(CHECKS):
        icon, check = CHECKS[name]
        print(f"\n{icon} {name}")
        try:
            issues = check(numerics)
        except Exception as e:
            logger.error("verification_check_failed", check=name, error=str(e))
            print(f"   {_status_line('failed')} {type(e).__name__}: {e}")
            results[name] = {'status': 'failed', 'error': str(e)}
            continue
        status = 'passed' if not issues else 'issues_found'
        print(f"   {_status_line(status)}")
        for issue in issues:
            print(f"   {issue}")
        results[name] = {'status': status, 'issues': issues}

    if print_table:
        print("\n⚖️  Bracket conventions for H = b x + c y (audit, not asserted)")
        for line in format_convention_table(convention_table(numerics.rewrite_budget)):
            print(f"   {line}")

    passed = sum(1 for result in results.values() if result['status'] == 'passed')
    print("\n📈 Verification Summary:")
    print(f"   Total checks: {len(results)}")
    print(f"   Passed: {passed}")
    print(f"   Failed: {len(results) - passed}")
    return results


def all_passed(results: Dict[str, Dict[str, object]]) -> bool:
    return all(result['status'] == 'passed' for result in results.values())
