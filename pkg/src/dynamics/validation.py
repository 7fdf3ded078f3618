"""
Scenario runners and engine cross-validation

Builds the representation, Hamiltonian and observables of a Scenario, runs the
requested engines and compares every pair of engines over the whole grid.
Deviations are data: nothing here raises on disagreement.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..config import NumericsConfig
from ..errors import ConfigError, ToleranceBreach
from ..opcore import Operator, as_matrix
from ..qsymb.generators import format_word
from ..reps import SPIN_LABELS, FockRep, LatticeRep, RelationDefect, SpinRep
from .closed_forms import closed_free_particle, closed_oscillator, closed_spin
from .engines import (
    bracket_spec,
    evolve_flow_exponential,
    evolve_flow_ode,
    evolve_liouville,
    evolve_ode,
    evolve_oracle,
    frobenius_series,
    heisenberg_transform,
    second_differences,
)
from .polynomial import PolyEvolutionReport, poly_coeff_evolution, polynomial_alpha
from .scenario import ENGINES, EvolutionResult, Scenario

logger = structlog.get_logger(__name__)

EXACT = "exact"
FIRST_ORDER = "first_order"

ResultTable = Dict[str, Dict[str, EvolutionResult]]


@dataclass
class EngineComparison:
    """Per-grid-point distance between two engines on one observable"""
    observable: str
    engine_a: str
    engine_b: str
    deviations: np.ndarray
    kind: str = EXACT

    @property
    def max_deviation(self) -> float:
        return float(np.max(self.deviations)) if len(self.deviations) else 0.0

    def within(self, tolerance: float) -> bool:
        return self.max_deviation <= tolerance

    def involves(self, engine: str) -> bool:
        return engine in (self.engine_a, self.engine_b)


@dataclass
class CrossValidationReport:
    """Everything ``cross_validate`` measured for one scenario"""
    scenario: Scenario
    bracket: str
    rhs_mode: str
    times: np.ndarray
    engines: List[str]
    results: ResultTable = field(default_factory=dict)
    comparisons: List[EngineComparison] = field(default_factory=list)
    defects: List[RelationDefect] = field(default_factory=list)
    invariants: Dict[str, float] = field(default_factory=dict)
    constants: Dict[str, float] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    poly: List[PolyEvolutionReport] = field(default_factory=list)
    representation: Optional[object] = None

    @property
    def observables(self) -> List[str]:
        return list(self.results)

    @property
    def reference_engine(self) -> Optional[str]:
        for engine in ENGINES + ("oracle",):
            if engine in self.engines:
                return engine
        return None

    def comparison(self, observable: str, first: str, second: str) -> Optional[EngineComparison]:
        for item in self.comparisons:
            if item.observable == observable and {item.engine_a, item.engine_b} == {first, second}:
                return item
        return None

    def max_deviation(self, observable: str, first: str, second: str) -> float:
        item = self.comparison(observable, first, second)
        if item is None:
            raise KeyError(f"no comparison of {first} and {second} on {observable}")
        return item.max_deviation

    def breaches(self, tolerance: float) -> List[EngineComparison]:
        """Exact-kind comparisons whose deviation exceeds ``tolerance``"""
        return [item for item in self.comparisons if item.kind == EXACT and not item.within(tolerance)]

    def require_within(self, tolerance: float):
        """Raise ToleranceBreach naming the worst exact comparison above ``tolerance``"""
        breaches = self.breaches(tolerance)
        if breaches:
            worst = max(breaches, key=lambda item: item.max_deviation)
            raise ToleranceBreach(
                f"{self.scenario.name} at q={self.scenario.q}: {worst.observable} "
                f"{worst.engine_a} vs {worst.engine_b}", worst.max_deviation, tolerance)

    def summary(self) -> Dict[str, object]:
        return {
            'scenario': self.scenario.name,
            'q': self.scenario.q,
            'bracket': self.bracket,
            'rhs_mode': self.rhs_mode,
            'engines': list(self.engines),
            'comparisons': {
                f"{c.observable}:{c.engine_a}-{c.engine_b}": (c.max_deviation, c.kind) for c in self.comparisons
            },
            'invariants': dict(self.invariants),
        }


def is_classical(q: float, limit_tolerance: float) -> bool:
    return abs(q - 1.0) < limit_tolerance


def _check_engines(engines: Iterable[str]) -> List[str]:
    engines = list(engines)
    unknown = [engine for engine in engines if engine not in ENGINES]
    if unknown:
        raise ConfigError(f"Unknown engines {unknown}; expected a subset of {ENGINES}")
    if not engines:
        raise ConfigError("at least one engine is required")
    return [engine for engine in ENGINES if engine in engines]


def _compare_all(results: ResultTable, projector: Optional[np.ndarray] = None,
                 first_order: Sequence[Tuple[str, str]] = ()) -> List[EngineComparison]:
    """
    Pairwise distances per observable.

    Every pair is compressed to the interior when ``projector`` is given: the
    truncated Hamiltonian moves the entries next to the edge at a different
    rate. ``first_order`` lists (observable, engine) pairs whose comparisons
    are only first-order accurate.
    """
    comparisons = []
    for observable, by_engine in results.items():
        for first, second in itertools.combinations(list(by_engine), 2):
            deviations = frobenius_series(by_engine[first].values, by_engine[second].values, projector)
            approximate = (observable, first) in first_order or (observable, second) in first_order
            comparisons.append(EngineComparison(observable, first, second, deviations,
                                                FIRST_ORDER if approximate else EXACT))
    return comparisons


def _from_ladder(rep: FockRep, engine: str, a: EvolutionResult, adag: EvolutionResult,
                 diagnostics: Dict[str, object]) -> Dict[str, EvolutionResult]:
    """x and p assembled from evolved ladder operators"""
    x_values = [rep.position_scale * (av + dv) for av, dv in zip(a.values, adag.values)]
    p_values = [1j * rep.momentum_scale * (av - dv) for av, dv in zip(a.values, adag.values)]
    return {
        'x': EvolutionResult(engine, 'x', a.times, x_values, dict(diagnostics)),
        'p': EvolutionResult(engine, 'p', a.times, p_values, dict(diagnostics)),
    }


def _q_commutation_defect(rep: FockRep, a: EvolutionResult, adag: EvolutionResult) -> float:
    """Largest |(a a^+ - q a^+ a - 1) P| over the grid, two states below the edge"""
    projector = as_matrix(rep.interior_projector(2))
    identity = np.eye(rep.dim)
    worst = 0.0
    for av, dv in zip(a.values, adag.values):
        defect = (av @ dv - rep.q * dv @ av - identity) @ projector
        worst = max(worst, float(np.max(np.abs(defect))))
    return worst


def run_q_oscillator(scenario: Scenario, engines: Sequence[str], numerics: NumericsConfig,
                     report: CrossValidationReport):
    rep = FockRep(scenario.fock_size, scenario.q, scenario.omega, scenario.hbar, scenario.mass)
    report.representation = rep
    grid, q, hbar = scenario.grid, scenario.q, scenario.hbar
    spec = bracket_spec(scenario.convention, q)
    specs = {'a': spec, 'adag': spec.swapped()}
    report.bracket = f"a: {spec.describe()}; adag: {spec.swapped().describe()}"
    h = rep.hamiltonian
    results: ResultTable = {name: {} for name in ('a', 'adag', 'x', 'p')}

    if "closed" in engines:
        solutions = [closed_oscillator(rep, q, float(t), scenario.printed).as_dict() for t in grid.points]
        for name in results:
            results[name]['closed'] = EvolutionResult(
                'closed', name, grid.points, [as_matrix(s[name]) for s in solutions],
                {'printed': scenario.printed.enabled()})

    for engine in ("ode", "liouville"):
        if engine not in engines:
            continue
        ladder = {}
        for name in ('a', 'adag'):
            if engine == "ode":
                ladder[name] = evolve_ode(rep[name], h, specs[name], q, grid, hbar, scenario.rhs_mode,
                                          numerics.ode_tolerance, name)
            else:
                ladder[name] = evolve_liouville(rep[name], h, specs[name], q, grid, hbar, scenario.rhs_mode,
                                                numerics.expm_tolerance, name)
            results[name][engine] = ladder[name]
        for name, result in _from_ladder(rep, engine, ladder['a'], ladder['adag'],
                                         ladder['a'].diagnostics).items():
            results[name][engine] = result

    if is_classical(q, numerics.limit_tolerance):
        for name in results:
            results[name]['oracle'] = evolve_oracle(rep[name], h, grid, hbar, name)

    report.results = results
    report.comparisons = _compare_all(results, as_matrix(rep.interior_projector(1)))
    report.defects = rep.relation_defects(1)
    for engine in results['a']:
        report.invariants[f"q_commutation_defect_{engine}"] = _q_commutation_defect(
            rep, results['a'][engine], results['adag'][engine])
    report.constants['omega_q'] = rep.omega_q
    report.constants['q_omega_q'] = q * rep.omega_q


def run_free_particle(scenario: Scenario, engines: Sequence[str], numerics: NumericsConfig,
                      report: CrossValidationReport):
    rep = LatticeRep(scenario.lattice_half_width, scenario.q, scenario.p0, scenario.hbar,
                     numerics.limit_tolerance)
    report.representation = rep
    grid, q, hbar = scenario.grid, scenario.q, scenario.hbar
    spec = bracket_spec(scenario.convention, q)
    p = as_matrix(rep.p)
    h = Operator(p @ p / (2.0 * scenario.mass), f"H@{rep.tag}")
    results: ResultTable = {'x': {}, 'p': {}}

    if "closed" in engines:
        pairs = [closed_free_particle(rep.x, rep.p, q, scenario.mass, float(t), rep.lam) for t in grid.points]
        results['x']['closed'] = EvolutionResult('closed', 'x', grid.points, [as_matrix(x) for x, _ in pairs],
                                                 {'accuracy': FIRST_ORDER})
        results['p']['closed'] = EvolutionResult('closed', 'p', grid.points, [as_matrix(p_t) for _, p_t in pairs])
        report.invariants['x_second_difference'] = second_differences(results['x']['closed'].values)
        report.notes.append("closed-form position is first order in t for q != 1; d(p L)/dt = "
                            "(q^2 - 1) q p^3 L / (2 m i hbar) is dropped")

    for name in results:
        if "ode" in engines:
            results[name]['ode'] = evolve_ode(rep[name], h, spec, q, grid, hbar, scenario.rhs_mode,
                                              numerics.ode_tolerance, name)
        if "liouville" in engines:
            results[name]['liouville'] = evolve_liouville(rep[name], h, spec, q, grid, hbar, scenario.rhs_mode,
                                                          numerics.expm_tolerance, name)

    report.results = results
    report.comparisons = _compare_all(results, as_matrix(rep.interior_projector(1)),
                                      first_order=[('x', 'closed')])
    report.defects = rep.relation_defects(1)
    report.constants['velocity'] = q * (q + 1.0) / (2.0 * scenario.mass)


def spin_frequency(scenario: Scenario) -> float:
    """omega_q = q^2 lambda e B / (m_e c), with e dropped under ``omit_charge``"""
    return (scenario.q ** 2 * scenario.lam * scenario.effective_charge * scenario.field_strength
            / (scenario.electron_mass * scenario.light_speed))


def _spin_oracle(spin: SpinRep, h: np.ndarray, s0: np.ndarray, scenario: Scenario) -> List[np.ndarray]:
    """Spin-1/2 U^+ S U projected back onto (Sx, Sy, Sz) and applied to the initial values"""
    matrices = spin.spin_half_matrices()
    basis = [as_matrix(matrices[label]) for label in SPIN_LABELS]
    hamiltonian = sum(coefficient * matrix for coefficient, matrix in zip(h, basis))
    norm = 2.0 / scenario.hbar ** 2
    values = []
    for t in scenario.grid.points:
        rotation = np.empty((3, 3), dtype=complex)
        for i, operator in enumerate(basis):
            evolved = as_matrix(heisenberg_transform(operator, hamiltonian, float(t), scenario.hbar))
            for j, target in enumerate(basis):
                rotation[i, j] = norm * np.trace(target @ evolved)
        values.append(rotation @ s0)
    return values


def _split_spin(vector_result: EvolutionResult) -> Dict[str, EvolutionResult]:
    return {
        label: EvolutionResult(vector_result.engine, label, vector_result.times,
                               [np.asarray(v[i]) for v in vector_result.values], dict(vector_result.diagnostics))
        for i, label in enumerate(SPIN_LABELS)
    }


def _planar_drift(vector_result: EvolutionResult) -> float:
    initial = vector_result.values[0]
    reference = float(np.real(initial[0] * np.conj(initial[0]) + initial[1] * np.conj(initial[1])))
    return max(abs(float(np.real(v[0] * np.conj(v[0]) + v[1] * np.conj(v[1]))) - reference)
               for v in vector_result.values)


def run_spin_precession(scenario: Scenario, engines: Sequence[str], numerics: NumericsConfig,
                        report: CrossValidationReport):
    spin = SpinRep(scenario.lam, scenario.hbar)
    report.representation = spin
    grid = scenario.grid
    s0 = np.asarray(scenario.s0, dtype=complex)
    h = spin.hamiltonian_coefficients(scenario.field_strength, scenario.q, scenario.effective_charge,
                                      scenario.electron_mass, scenario.light_speed)
    generator = spin.flow_generator(h, scenario.q)
    if scenario.rhs_mode == "literal_dyn":
        generator = 1j * scenario.hbar * generator
    omega_q = spin_frequency(scenario)

    vectors: Dict[str, EvolutionResult] = {}
    if "closed" in engines:
        printed = scenario.printed.spin_solution
        vectors['closed'] = EvolutionResult(
            'closed', 'S', grid.points,
            [closed_spin(scenario.s0, omega_q, float(t), printed).astype(complex) for t in grid.points],
            {'printed': printed})
    if "ode" in engines:
        vectors['ode'] = evolve_flow_ode(s0, generator, grid, numerics.ode_tolerance)
    if "liouville" in engines:
        vectors['liouville'] = evolve_flow_exponential(s0, generator, grid, numerics.expm_tolerance)
    if is_classical(scenario.q, numerics.limit_tolerance) and math.isclose(scenario.lam, 1.0):
        vectors['oracle'] = EvolutionResult('oracle', 'S', grid.points, _spin_oracle(spin, h, s0, scenario),
                                            {'bracket': 'undeformed spin-1/2'})

    results: ResultTable = {label: {} for label in SPIN_LABELS}
    for engine, vector_result in vectors.items():
        for label, result in _split_spin(vector_result).items():
            results[label][engine] = result
        report.invariants[f"planar_norm_drift_{engine}"] = _planar_drift(vector_result)

    report.results = results
    report.comparisons = _compare_all(results)
    report.constants['omega_q'] = omega_q
    report.constants['flow_rate'] = float(np.real(generator[0, 1])) if scenario.rhs_mode == "heisenberg" else 0.0
    report.notes.append("bracket table differs from su(2) on " + ", ".join(
        f"({left},{right})" for left, right in spin.differences_from_su2()))


def run_poly_dynamics(scenario: Scenario, engines: Sequence[str], numerics: NumericsConfig,
                      report: CrossValidationReport):
    """
    Evaluate the polynomial solution on the grid.

    Only the closed evaluator exists for this scenario: the full engine set
    (what ``all`` resolves to) and ``closed`` alone are accepted, any other
    selection raises ConfigError.
    """
    if set(engines) not in ({"closed"}, set(ENGINES)):
        raise ConfigError(f"poly_dynamics only runs the closed evaluator, got engines {list(engines)}")
    alpha = {index: polynomial_alpha(coefficients) for index, coefficients in scenario.alpha.items()}
    report.poly = [
        poly_coeff_evolution(alpha, scenario.b, scenario.c, scenario.q, float(t),
                             scenario.quadrature_steps, scenario.lam, scenario.printed)
        for t in scenario.grid.points
    ]
    for index in report.poly[0].difference:
        observable = f"alpha_{index[0]}{index[1]}"
        deviations = np.array([entry.difference[index] for entry in report.poly])
        report.comparisons.append(EngineComparison(observable, "exponential", "first_order", deviations,
                                                   FIRST_ORDER))
    report.engines = ["closed"]
    report.notes.append("L is a central marker in the evaluated polynomial; exponentials use L -> lambda")
    final = report.poly[-1].values()
    report.notes.append("f(t_end) = " + (" + ".join(
        f"({value.real:.6g}{value.imag:+.6g}i)*{format_word(word)}" for word, value in final.items()) or "0"))


_RUNNERS = {
    "q_oscillator": run_q_oscillator,
    "free_particle": run_free_particle,
    "spin_precession": run_spin_precession,
    "poly_dynamics": run_poly_dynamics,
}


def cross_validate(scenario: Scenario, engines: Sequence[str] = ENGINES,
                   numerics: Optional[NumericsConfig] = None) -> CrossValidationReport:
    """
    Run every selected engine on ``scenario`` and compare all pairs.

    The undeformed oracle joins automatically when q is classical. Raises
    only for invalid input (for example q = 1 on the lattice); deviations of
    any size are returned in the report.
    """
    numerics = numerics or NumericsConfig()
    selected = _check_engines(engines)
    report = CrossValidationReport(
        scenario=scenario,
        bracket=scenario.convention,
        rhs_mode=scenario.rhs_mode,
        times=scenario.grid.points,
        engines=list(selected),
    )
    _RUNNERS[scenario.name](scenario, selected, numerics, report)
    if any('oracle' in by_engine for by_engine in report.results.values()):
        report.engines.append('oracle')

    worst = max((c.max_deviation for c in report.comparisons if c.kind == EXACT), default=0.0)
    logger.info("cross_validated", scenario=scenario.name, q=scenario.q, engines=report.engines,
                comparisons=len(report.comparisons), worst_exact_deviation=worst)
    return report
