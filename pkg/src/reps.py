#!/usr/bin/env python3
"""
Finite-Dimensional Representations

Matrix realizations of the q-deformed algebras:

- FockRep: truncated q-oscillator with a|n> = sqrt([n]) |n-1>, [n] the
  oscillator basic number.
- LatticeRep: geometric momentum lattice n = -N..N with p|n> = p0 q^n |n>,
  the shift L|n> = |n-1> and a one-band position operator
  x|n> = xi_n |n-1>, xi_n = i hbar q^{1-n} / (p0 (q - 1)).
- SpinRep: structure-constant table of the deformed spin brackets with the
  dilatation replaced by a central scalar lambda.

Truncation breaks the defining relations on boundary states. Each
representation ships an interior projector; relations are asserted on it and
the boundary defects are measured and reported.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from .errors import DimensionMismatchError, DomainError, RepresentationMismatchError
from .opcore import Operator, as_matrix, pauli_matrices
from .qnum import LIMIT_TOLERANCE, basic_number_osc, q_frequency_osc
from .qsymb.generators import Generator

logger = structlog.get_logger(__name__)

SPIN_LABELS = ("Sx", "Sy", "Sz")


@dataclass(frozen=True)
class RelationDefect:
    """Size of one relation's defect matrix on the interior and on the whole space"""
    relation: str
    interior: float
    full: float
    locations: Tuple[Tuple[int, int], ...]

    def holds(self, tolerance: float = 1e-12) -> bool:
        return self.interior <= tolerance


def _tag_of(operator: Operator) -> Optional[str]:
    if operator.label and "@" in operator.label:
        return operator.label.split("@", 1)[1]
    return None


def require_same_representation(*operators: Operator):
    """
    Raise RepresentationMismatchError unless all operators come from one representation.

    Operators built by a representation carry a ``name@tag`` label; untagged
    operators are only checked for dimension.
    """
    dims = {op.dim for op in operators}
    if len(dims) != 1:
        raise RepresentationMismatchError(f"operators have different dimensions: {sorted(dims)}")
    tags = {_tag_of(op) for op in operators} - {None}
    if len(tags) > 1:
        raise RepresentationMismatchError(f"operators come from different representations: {sorted(tags)}")


class Representation:
    """
    Named generator matrices plus an interior projector.

    Subclasses fill ``operators`` and implement ``relations`` (name -> defect
    matrix, zero where the relation holds) and ``interior_indices``.
    """

    name = "representation"

    def __init__(self, q: float, hbar: float):
        if not q > 0:
            raise DomainError(f"q must be positive, got {q}")
        if not hbar > 0:
            raise DomainError(f"hbar must be positive, got {hbar}")
        self.q = q
        self.hbar = hbar
        self.operators: Dict[str, Operator] = {}

    @property
    def tag(self) -> str:
        return f"{self.name}(dim={self.dim},q={self.q!r})"

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def _register(self, key: str, matrix: np.ndarray) -> Operator:
        operator = Operator(matrix, f"{key}@{self.tag}")
        self.operators[key] = operator
        return operator

    def __getitem__(self, key: str) -> Operator:
        return self.operators[key]

    def generator_matrices(self) -> Dict[Generator, np.ndarray]:
        """Generator -> matrix, for symbolic evaluation"""
        return {}

    def interior_indices(self, depth: int) -> List[int]:
        raise NotImplementedError

    def interior_projector(self, depth: int = 1) -> Operator:
        """Diagonal projector onto the basis states ``depth`` steps away from every truncation edge"""
        if depth < 0:
            raise DomainError("interior depth must be non-negative")
        diagonal = np.zeros(self.dim)
        indices = self.interior_indices(depth)
        if not indices:
            raise DomainError(f"{self.tag} has no interior at depth {depth}")
        diagonal[indices] = 1.0
        return Operator(np.diag(diagonal).astype(complex), f"P{depth}@{self.tag}")

    def relations(self) -> Dict[str, np.ndarray]:
        raise NotImplementedError

    def relation_defects(self, depth: int = 1, threshold: float = 1e-12) -> List[RelationDefect]:
        """
        Measure every defining relation.

        The defect D is right-multiplied by the interior projector, so
        ``interior`` is the largest entry of D P and ``locations`` lists the
        entries of D above ``threshold`` anywhere.
        """
        projector = as_matrix(self.interior_projector(depth))
        defects = []
        for relation, matrix in self.relations().items():
            rows, cols = np.nonzero(np.abs(matrix) > threshold)
            defects.append(RelationDefect(
                relation=relation,
                interior=float(np.max(np.abs(matrix @ projector))),
                full=float(np.max(np.abs(matrix))),
                locations=tuple(zip(rows.tolist(), cols.tolist())),
            ))
        return defects

    def compress(self, operator: Operator, depth: int = 1) -> np.ndarray:
        """P B P on the interior"""
        projector = as_matrix(self.interior_projector(depth))
        return projector @ as_matrix(operator) @ projector


class FockRep(Representation):
    """
    Truncated q-oscillator on span{|0>, ..., |N-1>}.

    Features:
    - ladder operators from the oscillator basic numbers
    - H_q = (hbar omega_q / 2)(a a^+ + a^+ a), omega_q = omega [2]_q / (2 q^2)
    - position and momentum built from the ladder operators
    - the relation a a^+ - q a^+ a = 1 fails only at (N-1, N-1)
    """

    name = "fock"

    def __init__(self, size: int, q: float, omega: float = 1.0, hbar: float = 1.0, mass: float = 1.0):
        super().__init__(q, hbar)
        if size < 3:
            raise DomainError(f"Fock truncation needs N >= 3, got {size}")
        if not mass > 0:
            raise DomainError(f"mass must be positive, got {mass}")
        self.size = size
        self.omega = omega
        self.mass = mass
        self.omega_q = q_frequency_osc(omega, q)

        a = np.zeros((size, size), dtype=complex)
        for n in range(1, size):
            a[n - 1, n] = np.sqrt(float(basic_number_osc(n, q)))
        adag = a.conj().T
        self.a = self._register("a", a)
        self.adag = self._register("adag", adag)
        self.number = self._register("n", np.diag(np.arange(size)).astype(complex))
        self.hamiltonian = self._register("H", 0.5 * hbar * self.omega_q * (a @ adag + adag @ a))
        self.x = self._register("x", self.position_scale * (a + adag))
        self.p = self._register("p", 1j * self.momentum_scale * (a - adag))

        logger.debug("fock_rep_built", size=size, q=q, omega_q=self.omega_q)

    @property
    def dim(self) -> int:
        return self.size

    @property
    def position_scale(self) -> float:
        """sqrt(hbar / (2 m omega_q))"""
        return float(np.sqrt(self.hbar / (2.0 * self.mass * self.omega_q)))

    @property
    def momentum_scale(self) -> float:
        """sqrt(m omega_q hbar / 2)"""
        return float(np.sqrt(self.mass * self.omega_q * self.hbar / 2.0))

    def interior_indices(self, depth: int) -> List[int]:
        return list(range(0, self.size - depth))

    def generator_matrices(self) -> Dict[Generator, np.ndarray]:
        return {Generator.A: as_matrix(self.a), Generator.ADag: as_matrix(self.adag)}

    def relations(self) -> Dict[str, np.ndarray]:
        a, adag = as_matrix(self.a), as_matrix(self.adag)
        return {"a adag - q adag a - 1": a @ adag - self.q * adag @ a - np.eye(self.size)}

    def hamiltonian_diagonal(self) -> np.ndarray:
        """Expected diagonal of H_q: (hbar omega_q / 2)([n+1] + [n]), with [N-1] alone on the top state"""
        prefactor = 0.5 * self.hbar * self.omega_q
        values = []
        for n in range(self.size):
            upper = float(basic_number_osc(n + 1, self.q)) if n < self.size - 1 else 0.0
            values.append(prefactor * (upper + float(basic_number_osc(n, self.q))))
        return np.array(values)

    def coherent_seed(self, z: complex) -> np.ndarray:
        """Normalized psi_n proportional to z^n / sqrt([n]!), truncated to the representation"""
        amplitudes = np.zeros(self.size, dtype=complex)
        factorial = 1.0
        for n in range(self.size):
            if n > 0:
                factorial *= float(basic_number_osc(n, self.q))
            amplitudes[n] = z ** n / np.sqrt(factorial)
        return amplitudes / np.linalg.norm(amplitudes)


class LatticeRep(Representation):
    """
    Geometric momentum lattice n = -N..N (basis index k = n + N).

    Features:
    - p diagonal with p0 q^n
    - L shifts |n> -> |n-1>, Linv shifts |n> -> |n+1>
    - x|n> = xi_n |n-1> with xi_n = i hbar q^{1-n} / (p0 (q - 1))
    - L p = q p L, L x = q^-1 x L and x p - p x = i hbar L hold on every state;
      relations involving Linv fail on the two edge states
    """

    name = "lattice"

    def __init__(self, half_width: int, q: float, p0: float = 1.0, hbar: float = 1.0,
                 limit_tolerance: float = LIMIT_TOLERANCE):
        super().__init__(q, hbar)
        if half_width < 2:
            raise DomainError(f"lattice half-width needs N >= 2, got {half_width}")
        if abs(q - 1.0) < limit_tolerance:
            raise DomainError("the lattice position operator is singular at q = 1")
        if not p0 > 0:
            raise DomainError(f"p0 must be positive, got {p0}")
        self.half_width = half_width
        self.p0 = p0

        size = 2 * half_width + 1
        levels = np.arange(-half_width, half_width + 1)
        momentum = np.diag(p0 * np.power(float(q), levels)).astype(complex)
        shift = np.zeros((size, size), dtype=complex)
        position = np.zeros((size, size), dtype=complex)
        for k in range(1, size):
            shift[k - 1, k] = 1.0
            position[k - 1, k] = self.xi(int(levels[k]))

        self.p = self._register("p", momentum)
        self.lam = self._register("L", shift)
        self.lam_inv = self._register("Linv", shift.T.copy())
        self.x = self._register("x", position)

        logger.debug("lattice_rep_built", half_width=half_width, q=q, p0=p0)

    def xi(self, n: int) -> complex:
        return 1j * self.hbar * self.q ** (1 - n) / (self.p0 * (self.q - 1.0))

    @property
    def dim(self) -> int:
        return 2 * self.half_width + 1

    @property
    def entry_scale(self) -> float:
        """Largest |entry| of x and p, at least 1"""
        return float(max(1.0, np.max(np.abs(as_matrix(self.x))), np.max(np.abs(as_matrix(self.p)))))

    def interior_indices(self, depth: int) -> List[int]:
        return list(range(depth, self.dim - depth))

    def generator_matrices(self) -> Dict[Generator, np.ndarray]:
        return {
            Generator.X: as_matrix(self.x),
            Generator.P: as_matrix(self.p),
            Generator.Lambda: as_matrix(self.lam),
            Generator.LambdaInv: as_matrix(self.lam_inv),
        }

    def relations(self) -> Dict[str, np.ndarray]:
        x, p = as_matrix(self.x), as_matrix(self.p)
        lam, lam_inv = as_matrix(self.lam), as_matrix(self.lam_inv)
        q, identity = self.q, np.eye(self.dim)
        return {
            "L p - q p L": lam @ p - q * p @ lam,
            "L x - q^-1 x L": lam @ x - x @ lam / q,
            "x p - p x - i hbar L": x @ p - p @ x - 1j * self.hbar * lam,
            "Linv p - q^-1 p Linv": lam_inv @ p - p @ lam_inv / q,
            "Linv x - q x Linv": lam_inv @ x - q * x @ lam_inv,
            "L Linv - 1": lam @ lam_inv - identity,
            "Linv L - 1": lam_inv @ lam - identity,
        }


# [S_i, S_j]_q = i hbar lambda c S_k for the listed ordered pairs
_LISTED_SPIN_BRACKETS = {
    ("Sx", "Sy"): (-1, "Sz"),
    ("Sy", "Sz"): (1, "Sx"),
    ("Sx", "Sz"): (-1, "Sy"),
}

_STANDARD_SU2 = {
    ("Sx", "Sy"): (1, "Sz"),
    ("Sy", "Sz"): (1, "Sx"),
    ("Sx", "Sz"): (-1, "Sy"),
}


class SpinRep:
    """
    Deformed spin brackets as structure constants.

    ``structure_constants[i, j, k]`` is c with [S_i, S_j]_q = i hbar lambda
    sum_k c S_k. Unlisted orderings are filled by antisymmetry, diagonal
    brackets vanish.
    """

    name = "spin"

    def __init__(self, lam: float = 1.0, hbar: float = 1.0):
        if not hbar > 0:
            raise DomainError(f"hbar must be positive, got {hbar}")
        self.lam = lam
        self.hbar = hbar
        constants = np.zeros((3, 3, 3))
        for (left, right), (sign, target) in _LISTED_SPIN_BRACKETS.items():
            i, j, k = SPIN_LABELS.index(left), SPIN_LABELS.index(right), SPIN_LABELS.index(target)
            constants[i, j, k] = sign
            constants[j, i, k] = -sign
        constants.setflags(write=False)
        self.structure_constants = constants

    def bracket_table(self, left: str, right: str) -> Tuple[Dict[str, float], complex]:
        """
        Channels of [left, right]_q.

        Returns:
            (label -> structure constant, prefactor i hbar lambda)
        """
        i, j = SPIN_LABELS.index(left), SPIN_LABELS.index(right)
        channels = {label: float(self.structure_constants[i, j, k])
                    for k, label in enumerate(SPIN_LABELS) if self.structure_constants[i, j, k]}
        return channels, 1j * self.hbar * self.lam

    def is_antisymmetric(self) -> bool:
        c = self.structure_constants
        return bool(np.array_equal(c, -np.transpose(c, (1, 0, 2))))

    def hamiltonian_coefficients(self, field: float, q: float, charge: float = 1.0,
                                 electron_mass: float = 1.0, light_speed: float = 1.0) -> np.ndarray:
        """H = -(q e B / (m_e c)) S_z as a coefficient vector over (Sx, Sy, Sz)"""
        if not (electron_mass > 0 and light_speed > 0):
            raise DomainError("electron mass and light speed must be positive")
        return np.array([0.0, 0.0, -q * charge * field / (electron_mass * light_speed)])

    def bracket_with_hamiltonian(self, h: np.ndarray, q: float) -> np.ndarray:
        """
        Matrix M with [S_i, q H]_q = i hbar sum_j M[j, i] S_j for H = sum_k h_k S_k.
        """
        h = np.asarray(h, dtype=float)
        if h.shape != (3,):
            raise DimensionMismatchError(f"spin Hamiltonian needs 3 coefficients, got {h.shape}")
        # M[j, i] = q lambda sum_k h_k c[i, k, j]
        return q * self.lam * np.einsum('k,ikj->ji', h, self.structure_constants)

    def flow_generator(self, h: np.ndarray, q: float) -> np.ndarray:
        """A with d s / dt = A s for the value vector s = (Sx, Sy, Sz)"""
        return self.bracket_with_hamiltonian(h, q).T

    def differences_from_su2(self) -> List[Tuple[str, str]]:
        """Listed pairs whose sign differs from the standard su(2) table at lambda = 1"""
        return [pair for pair, value in _LISTED_SPIN_BRACKETS.items() if _STANDARD_SU2[pair] != value]

    def spin_half_matrices(self) -> Dict[str, Operator]:
        """S = hbar sigma / 2"""
        sigma = pauli_matrices()
        return {label: Operator(0.5 * self.hbar * as_matrix(sigma[axis]), label)
                for label, axis in zip(SPIN_LABELS, "xyz")}


def make_fock(size: int, q: float, omega: float = 1.0, hbar: float = 1.0, mass: float = 1.0) -> FockRep:
    return FockRep(size, q, omega, hbar, mass)


def make_lattice(half_width: int, q: float, p0: float = 1.0, hbar: float = 1.0,
                 limit_tolerance: float = LIMIT_TOLERANCE) -> LatticeRep:
    return LatticeRep(half_width, q, p0, hbar, limit_tolerance)


def make_spin(lam: float = 1.0, hbar: float = 1.0) -> SpinRep:
    return SpinRep(lam, hbar)
