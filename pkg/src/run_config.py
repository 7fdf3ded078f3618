#!/usr/bin/env python3
"""
Per-run configuration

A run is described by an INI-style file with four flat sections:

    [run]           scenario, engines, convention, rhs_mode, printed_forms, tolerance, output
    [physics]       q, hbar and the parameters of the chosen system
    [grid]          t_end, steps
    [observables]   names, state, index, z_re, z_im

Parsing is strict: unknown sections or keys are configuration errors. The
resolved configuration (defaults filled in) is written back as INI lines and
echoed at the top of every CSV; reading the echo gives back an equal config.
"""

import configparser
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from .dynamics.scenario import (
    CONVENTIONS,
    DEFAULT_CONVENTIONS,
    ENGINES,
    RHS_MODES,
    SCENARIOS,
    PrintedForms,
    Scenario,
    TimeGrid,
)
from .errors import ConfigError

OBSERVABLES = {
    "q_oscillator": ("a", "adag", "x", "p"),
    "free_particle": ("x", "p"),
    "spin_precession": ("Sx", "Sy", "Sz"),
    "poly_dynamics": (),
}

STATES = ("basis", "coherent")

ECHO_PREFIX = "# "

SECTIONS = ("run", "physics", "grid", "observables")


def _split_list(value) -> List[str]:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return list(value)


def _format_float(value: float) -> str:
    return repr(float(value))


def parse_alpha(text: str) -> Dict[Tuple[int, int], Tuple[float, ...]]:
    """
    ``"1 0: 1.0; 0 1: 0.5 0.25"`` -> {(1, 0): (1.0,), (0, 1): (0.5, 0.25)}

    Each entry is ``n m: c0 c1 ...`` with alpha_nm(u) = c0 + c1 u + ...
    """
    alpha = {}
    for entry in filter(None, (part.strip() for part in text.split(";"))):
        if ":" not in entry:
            raise ConfigError(f"alpha entry {entry!r} needs the form 'n m: c0 c1 ...'")
        index_text, coefficient_text = entry.split(":", 1)
        try:
            n, m = (int(token) for token in index_text.split())
            coefficients = tuple(float(token) for token in coefficient_text.split())
        except ValueError as e:
            raise ConfigError(f"malformed alpha entry {entry!r}: {e}") from e
        if n < 0 or m < 0:
            raise ConfigError(f"alpha indices must be non-negative, got ({n}, {m})")
        if not coefficients:
            raise ConfigError(f"alpha entry {entry!r} has no coefficients")
        if (n, m) in alpha:
            raise ConfigError(f"alpha index ({n}, {m}) given twice")
        alpha[(n, m)] = coefficients
    return alpha


def format_alpha(alpha: Dict[Tuple[int, int], Tuple[float, ...]]) -> str:
    return "; ".join(f"{n} {m}: " + " ".join(_format_float(c) for c in coefficients)
                     for (n, m), coefficients in sorted(alpha.items()))


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class RunSection(_Section):
    scenario: str
    engines: Tuple[str, ...] = ("all",)
    convention: Optional[str] = None
    rhs_mode: str = "heisenberg"
    printed_forms: Tuple[str, ...] = ()
    tolerance: float = 1e-6
    output: Optional[str] = None

    @field_validator("engines", "printed_forms", mode="before")
    @classmethod
    def _comma_list(cls, value):
        return tuple(_split_list(value))

    @field_validator("scenario")
    @classmethod
    def _known_scenario(cls, value):
        if value not in SCENARIOS:
            raise ValueError(f"unknown scenario {value!r}; expected one of {SCENARIOS}")
        return value

    @field_validator("engines")
    @classmethod
    def _known_engines(cls, value):
        if value == ("all",):
            return value
        unknown = [engine for engine in value if engine not in ENGINES]
        if unknown or not value:
            raise ValueError(f"engines must be 'all' or a subset of {ENGINES}, got {list(value)}")
        return tuple(engine for engine in ENGINES if engine in value)

    @field_validator("convention")
    @classmethod
    def _known_convention(cls, value):
        if value is not None and value not in CONVENTIONS:
            raise ValueError(f"unknown convention {value!r}; expected one of {CONVENTIONS}")
        return value

    @field_validator("rhs_mode")
    @classmethod
    def _known_mode(cls, value):
        if value not in RHS_MODES:
            raise ValueError(f"unknown rhs_mode {value!r}; expected one of {RHS_MODES}")
        return value

    @field_validator("printed_forms")
    @classmethod
    def _known_forms(cls, value):
        PrintedForms.from_names(value)
        return value

    @field_validator("tolerance")
    @classmethod
    def _positive_tolerance(cls, value):
        if not value > 0:
            raise ValueError("tolerance must be positive")
        return value


class PhysicsSection(_Section):
    q: float = 1.0
    hbar: float = 1.0
    mass: float = 1.0
    lattice_half_width: int = 4
    p0: float = 1.0
    field_strength: float = 1.0
    charge: float = 1.0
    electron_mass: float = 1.0
    light_speed: float = 1.0
    lam: float = 1.0
    s0: Tuple[float, float, float] = (1.0, 0.0, 0.0)
    omega: float = 1.0
    fock_size: int = 16
    b: float = 1.0
    c: float = 1.0
    alpha: Dict[Tuple[int, int], Tuple[float, ...]] = {(1, 0): (1.0,)}
    quadrature_steps: int = 200

    @field_validator("s0", mode="before")
    @classmethod
    def _vector(cls, value):
        return tuple(_split_list(value))

    @field_validator("alpha", mode="before")
    @classmethod
    def _alpha(cls, value):
        return parse_alpha(value) if isinstance(value, str) else value


class GridSection(_Section):
    t_end: float = 1.0
    steps: int = 2000


class ObservablesSection(_Section):
    names: Tuple[str, ...] = ()
    state: str = "basis"
    index: int = 0
    z_re: float = 0.5
    z_im: float = 0.0

    @field_validator("names", mode="before")
    @classmethod
    def _comma_list(cls, value):
        return tuple(_split_list(value))

    @field_validator("state")
    @classmethod
    def _known_state(cls, value):
        if value not in STATES:
            raise ValueError(f"unknown state {value!r}; expected one of {STATES}")
        return value

    @property
    def z(self) -> complex:
        return complex(self.z_re, self.z_im)


class RunConfig(BaseModel):
    """Fully resolved run configuration"""
    model_config = ConfigDict(extra="forbid")

    run: RunSection
    physics: PhysicsSection = PhysicsSection()
    grid: GridSection = GridSection()
    observables: ObservablesSection = ObservablesSection()

    @model_validator(mode="after")
    def _resolve(self):
        scenario = self.run.scenario
        updates = {}
        if self.run.convention is None:
            updates['run'] = self.run.model_copy(update={'convention': DEFAULT_CONVENTIONS[scenario]})
        allowed = OBSERVABLES[scenario]
        names = self.observables.names or allowed
        unknown = [name for name in names if name not in allowed]
        if unknown:
            raise ValueError(f"observables {unknown} not available for {scenario}; choose from {allowed}")
        if self.observables.state == "coherent" and scenario != "q_oscillator":
            raise ValueError("the coherent seed state only exists for q_oscillator")
        dim = {"q_oscillator": self.physics.fock_size,
               "free_particle": 2 * self.physics.lattice_half_width + 1}.get(scenario)
        if dim is not None and not 0 <= self.observables.index < dim:
            raise ValueError(f"basis index {self.observables.index} outside 0..{dim - 1}")
        if tuple(names) != self.observables.names:
            updates['observables'] = self.observables.model_copy(update={'names': tuple(names)})
        for key, value in updates.items():
            setattr(self, key, value)
        # Scenario carries the remaining physics validation
        self.to_scenario()
        return self

    @property
    def engine_list(self) -> List[str]:
        return list(ENGINES) if self.run.engines == ("all",) else list(self.run.engines)

    @property
    def printed(self) -> PrintedForms:
        return PrintedForms.from_names(self.run.printed_forms)

    def to_scenario(self, q: Optional[float] = None) -> Scenario:
        physics = self.physics
        return Scenario(
            name=self.run.scenario,
            q=physics.q if q is None else q,
            grid=TimeGrid(self.grid.t_end, self.grid.steps),
            hbar=physics.hbar,
            convention=self.run.convention,
            rhs_mode=self.run.rhs_mode,
            printed=self.printed,
            mass=physics.mass,
            lattice_half_width=physics.lattice_half_width,
            p0=physics.p0,
            field_strength=physics.field_strength,
            charge=physics.charge,
            electron_mass=physics.electron_mass,
            light_speed=physics.light_speed,
            lam=physics.lam,
            s0=physics.s0,
            omega=physics.omega,
            fock_size=physics.fock_size,
            b=physics.b,
            c=physics.c,
            alpha=dict(physics.alpha),
            quadrature_steps=physics.quadrature_steps,
        )

    def with_q(self, q: float) -> "RunConfig":
        return self.model_copy(update={'physics': self.physics.model_copy(update={'q': q})})

    def to_ini_lines(self) -> List[str]:
        """Resolved configuration as INI lines, in a fixed order"""
        lines = []
        for section in SECTIONS:
            lines.append(f"[{section}]")
            model = getattr(self, section)
            for key in type(model).model_fields:
                value = getattr(model, key)
                if value is None:
                    continue
                lines.append(f"{key} = {_format_value(key, value)}")
        return lines

    def echo_lines(self) -> List[str]:
        return [ECHO_PREFIX + line for line in self.to_ini_lines()]


def _format_value(key: str, value) -> str:
    if key == "alpha":
        return format_alpha(value)
    if isinstance(value, tuple):
        return ", ".join(_format_float(v) if isinstance(v, float) else str(v) for v in value)
    if isinstance(value, float):
        return _format_float(value)
    return str(value)


def _parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None, default_section="__defaults__")
    parser.optionxform = str
    return parser


def parse_run_config(text: str, source: str = "<string>") -> RunConfig:
    """
    Parse INI text into a RunConfig.

    Raises:
        ConfigError: syntax errors, unknown sections or keys, invalid values
    """
    parser = _parser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise ConfigError(f"{source}: {e}") from e

    unknown = [name for name in parser.sections() if name not in SECTIONS]
    if unknown:
        raise ConfigError(f"{source}: unknown sections {unknown}; expected {list(SECTIONS)}")
    if "run" not in parser.sections():
        raise ConfigError(f"{source}: missing [run] section")

    data = {section: dict(parser.items(section)) for section in parser.sections()}
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{source}: {e}") from e
    except ConfigError as e:
        raise ConfigError(f"{source}: {e}") from e


def load_run_config(path: str) -> RunConfig:
    """Read and parse a config file; OSError propagates for the caller to map"""
    with open(path, 'r', encoding='utf-8') as f:
        return parse_run_config(f.read(), source=path)


def parse_echo(lines: Iterable[str]) -> RunConfig:
    """Recover the RunConfig echoed at the top of a CSV block"""
    body = []
    for line in lines:
        line = line.rstrip("\n")
        if not line.startswith(ECHO_PREFIX.rstrip()):
            break
        body.append(line[len(ECHO_PREFIX):] if line.startswith(ECHO_PREFIX) else "")
    return parse_run_config("\n".join(body), source="<echo>")
