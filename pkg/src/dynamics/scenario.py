"""
Scenario, time grid and evolution result types
"""

from dataclasses import dataclass, field, fields
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ConfigError

SCENARIOS = ("free_particle", "spin_precession", "q_oscillator", "poly_dynamics")

ENGINES = ("closed", "ode", "liouville")

RHS_MODES = ("heisenberg", "literal_dyn")

CONVENTIONS = ("plain", "q_commutator", "adjoint_q_commutator", "symmetric", "structure_constants")

# Bracket convention applied to (B, qH) per scenario
DEFAULT_CONVENTIONS = {
    "free_particle": "plain",
    "spin_precession": "structure_constants",
    "q_oscillator": "q_commutator",
    "poly_dynamics": "plain",
}


@dataclass(frozen=True)
class PrintedForms:
    """
    Switches that reproduce printed forms instead of the corrected defaults.

    - dagger_initial: a^+(t) starts from a(0)
    - spin_solution: printed precession signs, S_0(0) read as Sx(0), Sz(t) = 0
    - omit_charge: the spin frequency drops the charge factor e
    - alpha10_in_y_solution: the (0,1) exponential integrates alpha_10
    - oscillator_trig: x(t) = 2 s a(0) cos(q omega_q t), p(t) = 2 s' a^+(0) sin(q omega_q t)
    """
    dagger_initial: bool = False
    spin_solution: bool = False
    omit_charge: bool = False
    alpha10_in_y_solution: bool = False
    oscillator_trig: bool = False

    @classmethod
    def names(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def everything(cls) -> "PrintedForms":
        return cls(**{name: True for name in cls.names()})

    @classmethod
    def from_names(cls, names) -> "PrintedForms":
        names = list(names)
        if names == ["all"]:
            return cls.everything()
        unknown = set(names) - set(cls.names())
        if unknown:
            raise ConfigError(f"Unknown printed-form flags: {sorted(unknown)}")
        return cls(**{name: True for name in names})

    def enabled(self) -> List[str]:
        return [name for name in self.names() if getattr(self, name)]


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t_start, ..., t_end with ``steps`` intervals"""
    t_end: float
    steps: int
    t_start: float = 0.0

    def __post_init__(self):
        if not self.t_end > self.t_start:
            raise ConfigError(f"t_end must exceed t_start, got t_end={self.t_end}")
        if self.steps < 1:
            raise ConfigError(f"steps must be at least 1, got {self.steps}")

    @property
    def dt(self) -> float:
        return (self.t_end - self.t_start) / self.steps

    @property
    def points(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.steps + 1)

    def refined(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self.t_end, self.steps * factor, self.t_start)


@dataclass(frozen=True)
class Scenario:
    """
    Named physical system with its parameters, bracket convention and time grid.

    Only the parameters of the named system are used; the rest keep their
    defaults.
    """
    name: str
    q: float
    grid: TimeGrid
    hbar: float = 1.0
    convention: Optional[str] = None
    rhs_mode: str = "heisenberg"
    printed: PrintedForms = field(default_factory=PrintedForms)
    # free particle
    mass: float = 1.0
    lattice_half_width: int = 4
    p0: float = 1.0
    # spin precession
    field_strength: float = 1.0
    charge: float = 1.0
    electron_mass: float = 1.0
    light_speed: float = 1.0
    lam: float = 1.0
    s0: Tuple[float, float, float] = (1.0, 0.0, 0.0)
    # oscillator
    omega: float = 1.0
    fock_size: int = 16
    # polynomial dynamics
    b: float = 1.0
    c: float = 1.0
    alpha: Dict[Tuple[int, int], Tuple[float, ...]] = field(default_factory=lambda: {(1, 0): (1.0,)})
    quadrature_steps: int = 200

    def __post_init__(self):
        if self.name not in SCENARIOS:
            raise ConfigError(f"Unknown scenario {self.name!r}; expected one of {SCENARIOS}")
        if not self.q > 0:
            raise ConfigError(f"q must be positive, got {self.q}")
        if self.rhs_mode not in RHS_MODES:
            raise ConfigError(f"Unknown rhs_mode {self.rhs_mode!r}; expected one of {RHS_MODES}")
        positive = {
            'hbar': self.hbar, 'mass': self.mass, 'p0': self.p0, 'electron_mass': self.electron_mass,
            'light_speed': self.light_speed, 'omega': self.omega,
        }
        for key, value in positive.items():
            if not value > 0:
                raise ConfigError(f"{key} must be positive, got {value}")
        if self.convention is None:
            object.__setattr__(self, 'convention', DEFAULT_CONVENTIONS[self.name])
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"Unknown bracket convention {self.convention!r}; expected one of {CONVENTIONS}")
        if self.name == "spin_precession" and self.convention != "structure_constants":
            raise ConfigError("spin_precession only supports the structure_constants convention")
        if self.name != "spin_precession" and self.convention == "structure_constants":
            raise ConfigError("structure_constants only applies to spin_precession")
        if self.quadrature_steps < 2:
            raise ConfigError("quadrature_steps must be at least 2")

    @property
    def effective_charge(self) -> float:
        return 1.0 if self.printed.omit_charge else self.charge

    def with_q(self, q: float) -> "Scenario":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values['q'] = q
        return Scenario(**values)


@dataclass
class EvolutionResult:
    """
    Output of one engine on one observable.

    ``values`` holds one matrix (or coefficient vector for spin) per grid
    point; ``values[0]`` is the initial observable.
    """
    engine: str
    observable: str
    times: np.ndarray
    values: List[np.ndarray]
    diagnostics: Dict[str, object] = field(default_factory=dict)

    def at(self, index: int) -> np.ndarray:
        return self.values[index]

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]
