"""
Numeric evolution engines

- evolve_ode: RK4 on dB/dt = (1/(i hbar)) [B, qH]_{alpha,beta}
- evolve_liouville: the same equation propagated with the exponential of its
  superoperator generator
- heisenberg_transform / schrodinger_expectation: the undeformed oracle
  U^+ B U with U = exp(-i t H / hbar)
- spin flows on structure-constant value vectors

In ``literal_dyn`` mode both numeric engines drop the 1/(i hbar) factor and
integrate dB/du = [B, qH]_{alpha,beta} literally.
"""

from typing import Callable, List, Optional

import numpy as np
import structlog

from ..errors import ConfigError, DimensionMismatchError
from ..opcore import (
    DEFAULT_EXPM_TOLERANCE,
    BracketSpec,
    Operator,
    OperatorLike,
    as_matrix,
    build_liouvillian,
    expectation,
    matrix_exp,
    unvec,
    vec,
)
from .integrators import integrate
from .scenario import RHS_MODES, EvolutionResult, TimeGrid

logger = structlog.get_logger(__name__)


def bracket_spec(convention: str, q: float) -> BracketSpec:
    """Numeric BracketSpec for a convention name"""
    factories = {
        "plain": BracketSpec.commutator,
        "q_commutator": lambda: BracketSpec.q_commutator(q),
        "adjoint_q_commutator": lambda: BracketSpec.adjoint_q_commutator(q),
        "symmetric": lambda: BracketSpec.symmetric(q),
    }
    if convention not in factories:
        raise ConfigError(f"No operator bracket for convention {convention!r}")
    return factories[convention]()


def _check_mode(rhs_mode: str):
    if rhs_mode not in RHS_MODES:
        raise ConfigError(f"Unknown rhs_mode {rhs_mode!r}; expected one of {RHS_MODES}")


def _rhs_factor(rhs_mode: str, hbar: float) -> complex:
    return 1.0 if rhs_mode == "literal_dyn" else 1.0 / (1j * hbar)


def heisenberg_rhs(h: OperatorLike, spec: BracketSpec, q: float, hbar: float = 1.0,
                   rhs_mode: str = "heisenberg") -> Callable[[np.ndarray], np.ndarray]:
    """B -> factor * [B, qH]_{alpha,beta} on plain matrices"""
    _check_mode(rhs_mode)
    qh = q * as_matrix(h)
    factor = _rhs_factor(rhs_mode, hbar)
    alpha, beta = spec.alpha, spec.beta

    def rhs(b: np.ndarray) -> np.ndarray:
        return factor * (alpha * (b @ qh) - beta * (qh @ b))

    return rhs


def _check_dims(b0: OperatorLike, h: OperatorLike):
    b_mat, h_mat = as_matrix(b0), as_matrix(h)
    if b_mat.shape != h_mat.shape:
        raise DimensionMismatchError(f"observable {b_mat.shape} and Hamiltonian {h_mat.shape} differ")


def evolve_ode(b0: OperatorLike, h: OperatorLike, spec: BracketSpec, q: float, grid: TimeGrid,
               hbar: float = 1.0, rhs_mode: str = "heisenberg", tolerance: float = 1e-8,
               observable: str = "B") -> EvolutionResult:
    """
    Integrate the q-deformed Heisenberg equation with fixed-step RK4.

    Returns:
        EvolutionResult whose diagnostics carry the Richardson error
        estimate, whether it exceeded ``tolerance``, the bracket and the
        right-hand-side mode
    """
    _check_dims(b0, h)
    outcome = integrate(as_matrix(b0), heisenberg_rhs(h, spec, q, hbar, rhs_mode), grid, tolerance)
    logger.debug("ode_evolved", observable=observable, q=q, steps=grid.steps,
                 error_estimate=outcome.error_estimate)
    return EvolutionResult("ode", observable, grid.points, outcome.states, {
        'error_estimate': outcome.error_estimate,
        'flagged': outcome.flagged,
        'bracket': spec.describe(),
        'rhs_mode': rhs_mode,
    })


def liouville_generator(h: OperatorLike, spec: BracketSpec, q: float, hbar: float = 1.0,
                        rhs_mode: str = "heisenberg") -> np.ndarray:
    """
    Matrix G with d vec(B)/dt = G vec(B) for the same equation as ``evolve_ode``.

    build_liouvillian with the swapped weights gives
    L'F = beta qH F - alpha F qH = -[F, qH]_{alpha,beta}, so
    G = -factor * L' = (i / hbar) L' in the Heisenberg mode.
    """
    _check_mode(rhs_mode)
    liouvillian = build_liouvillian(h, spec.swapped(), q)
    return -_rhs_factor(rhs_mode, hbar) * liouvillian.entries


def evolve_liouville(b0: OperatorLike, h: OperatorLike, spec: BracketSpec, q: float, grid: TimeGrid,
                     hbar: float = 1.0, rhs_mode: str = "heisenberg",
                     expm_tolerance: float = DEFAULT_EXPM_TOLERANCE, observable: str = "B") -> EvolutionResult:
    """
    exp(t G) vec(B0) at every grid point, reshaped.

    The step propagator exp(dt G) is computed once and applied repeatedly.
    """
    _check_dims(b0, h)
    dim = as_matrix(b0).shape[0]
    generator = liouville_generator(h, spec, q, hbar, rhs_mode)
    step = as_matrix(matrix_exp(grid.dt * generator, expm_tolerance))
    vector = vec(b0)
    values = [unvec(vector, dim)]
    for _ in range(grid.steps):
        vector = step @ vector
        values.append(unvec(vector, dim))
    logger.debug("liouville_evolved", observable=observable, q=q, dim=dim, steps=grid.steps)
    return EvolutionResult("liouville", observable, grid.points, values, {
        'bracket': spec.describe(),
        'rhs_mode': rhs_mode,
    })


def propagator(h: OperatorLike, t: float, t0: float = 0.0, hbar: float = 1.0,
               expm_tolerance: float = DEFAULT_EXPM_TOLERANCE) -> Operator:
    """U(t, t0) = exp(-i (t - t0) H / hbar)"""
    return matrix_exp(-1j * (t - t0) * as_matrix(h) / hbar, expm_tolerance)


def heisenberg_transform(b: OperatorLike, h: OperatorLike, t: float, hbar: float = 1.0,
                         expm_tolerance: float = DEFAULT_EXPM_TOLERANCE) -> Operator:
    """U^+ B U with U = exp(-i t H / hbar)"""
    _check_dims(b, h)
    u = as_matrix(propagator(h, t, 0.0, hbar, expm_tolerance))
    return Operator(u.conj().T @ as_matrix(b) @ u)


def schrodinger_expectation(state: np.ndarray, b: OperatorLike, h: OperatorLike, t: float,
                            hbar: float = 1.0) -> complex:
    """<psi(t)|B|psi(t)> with psi(t) = U psi"""
    u = as_matrix(propagator(h, t, 0.0, hbar))
    return expectation(u @ np.asarray(state, dtype=complex), b)


def evolve_oracle(b0: OperatorLike, h: OperatorLike, grid: TimeGrid, hbar: float = 1.0,
                  observable: str = "B") -> EvolutionResult:
    """Undeformed Heisenberg picture on the grid, U(dt) applied step by step"""
    _check_dims(b0, h)
    u_step = as_matrix(propagator(h, grid.dt, 0.0, hbar))
    u = np.eye(u_step.shape[0], dtype=complex)
    b = as_matrix(b0)
    values = [b.copy()]
    for _ in range(grid.steps):
        u = u @ u_step
        values.append(u.conj().T @ b @ u)
    return EvolutionResult("oracle", observable, grid.points, values, {'bracket': 'undeformed'})


def evolve_flow_ode(s0: np.ndarray, generator: np.ndarray, grid: TimeGrid, tolerance: float = 1e-8,
                    observable: str = "S") -> EvolutionResult:
    """RK4 on the linear value flow ds/dt = A s"""
    a = np.asarray(generator, dtype=complex)
    outcome = integrate(np.asarray(s0, dtype=complex), lambda s: a @ s, grid, tolerance)
    return EvolutionResult("ode", observable, grid.points, outcome.states, {
        'error_estimate': outcome.error_estimate,
        'flagged': outcome.flagged,
        'bracket': 'structure_constants',
    })


def evolve_flow_exponential(s0: np.ndarray, generator: np.ndarray, grid: TimeGrid,
                            expm_tolerance: float = DEFAULT_EXPM_TOLERANCE,
                            observable: str = "S") -> EvolutionResult:
    """exp(t A) s0 on the grid"""
    step = as_matrix(matrix_exp(grid.dt * np.asarray(generator, dtype=complex), expm_tolerance))
    s = np.asarray(s0, dtype=complex)
    values = [s.copy()]
    for _ in range(grid.steps):
        s = step @ s
        values.append(s.copy())
    return EvolutionResult("liouville", observable, grid.points, values, {'bracket': 'structure_constants'})


def frobenius_series(first: List[np.ndarray], second: List[np.ndarray],
                     projector: Optional[np.ndarray] = None) -> np.ndarray:
    """Frobenius distance per grid point, optionally after P B P compression"""
    distances = []
    for a, b in zip(first, second):
        difference = np.asarray(a) - np.asarray(b)
        if projector is not None:
            difference = projector @ difference @ projector
        distances.append(float(np.linalg.norm(difference)))
    return np.array(distances)


def second_differences(values: List[np.ndarray]) -> float:
    """Largest entry of B(t+dt) - 2 B(t) + B(t-dt) over a uniform grid"""
    worst = 0.0
    for i in range(1, len(values) - 1):
        worst = max(worst, float(np.max(np.abs(values[i + 1] - 2.0 * values[i] + values[i - 1]))))
    return worst

