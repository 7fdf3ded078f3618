"""
q-deformed Heisenberg-picture dynamics

Closed forms, the RK4 and Liouvillian engines, the undeformed oracle and
cross-validation of all of them on the named scenarios.
"""

from .closed_forms import (
    OscillatorSolution,
    closed_free_particle,
    closed_oscillator,
    closed_spin,
    free_particle_velocity,
    spin_rotation,
)
from .engines import (
    bracket_spec,
    evolve_flow_exponential,
    evolve_flow_ode,
    evolve_liouville,
    evolve_ode,
    evolve_oracle,
    frobenius_series,
    heisenberg_rhs,
    heisenberg_transform,
    liouville_generator,
    propagator,
    schrodinger_expectation,
    second_differences,
)
from .integrators import IntegrationOutcome, integrate, rk4_step, rk4_trajectory
from .polynomial import PolyEvolutionReport, poly_coeff_evolution, polynomial_alpha, simpson_integral
from .scenario import (
    CONVENTIONS,
    DEFAULT_CONVENTIONS,
    ENGINES,
    RHS_MODES,
    SCENARIOS,
    EvolutionResult,
    PrintedForms,
    Scenario,
    TimeGrid,
)
from .validation import (
    EXACT,
    FIRST_ORDER,
    CrossValidationReport,
    EngineComparison,
    cross_validate,
    is_classical,
    spin_frequency,
)

__all__ = [
    'OscillatorSolution', 'closed_free_particle', 'closed_oscillator', 'closed_spin',
    'free_particle_velocity', 'spin_rotation',
    'bracket_spec', 'evolve_flow_exponential', 'evolve_flow_ode', 'evolve_liouville', 'evolve_ode',
    'evolve_oracle', 'frobenius_series', 'heisenberg_rhs', 'heisenberg_transform', 'liouville_generator',
    'propagator', 'schrodinger_expectation', 'second_differences',
    'IntegrationOutcome', 'integrate', 'rk4_step', 'rk4_trajectory',
    'PolyEvolutionReport', 'poly_coeff_evolution', 'polynomial_alpha', 'simpson_integral',
    'CONVENTIONS', 'DEFAULT_CONVENTIONS', 'ENGINES', 'RHS_MODES', 'SCENARIOS',
    'EvolutionResult', 'PrintedForms', 'Scenario', 'TimeGrid',
    'EXACT', 'FIRST_ORDER', 'CrossValidationReport', 'EngineComparison', 'cross_validate',
    'is_classical', 'spin_frequency',
]
