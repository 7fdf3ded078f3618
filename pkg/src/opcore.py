#!/usr/bin/env python3
"""
Dense Operator Algebra

Square complex matrices with dimension metadata, the weighted bracket
[A, B]_{alpha,beta} = alpha A B - beta B A, adjoints, a scaling-and-squaring
matrix exponential and Liouvillian superoperators.

Vectorization convention: column stacking, vec(F) = F.reshape(-1, order="F"),
so that vec(A F B) = (B^T kron A) vec(F). Every superoperator in the package
relies on it.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatchError, DomainError

OperatorLike = Union["Operator", np.ndarray]

DEFAULT_EXPM_TOLERANCE = 1e-14

# Scaled norm bound for the Taylor core; keeps the series short and well conditioned
_TAYLOR_NORM_BOUND = 0.5
_TAYLOR_MAX_TERMS = 60


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix with an optional label"""
    entries: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchError(f"Operator must be square, got shape {entries.shape}")
        if entries.shape[0] < 1:
            raise DimensionMismatchError("Operator dimension must be positive")
        if not np.all(np.isfinite(entries)):
            raise DomainError("Operator entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim: int, label: Optional[str] = "I") -> "Operator":
        return cls(np.eye(dim, dtype=complex), label)

    @classmethod
    def zeros(cls, dim: int, label: Optional[str] = "0") -> "Operator":
        return cls(np.zeros((dim, dim), dtype=complex), label)

    def dag(self) -> "Operator":
        return adjoint(self)

    def relabel(self, label: str) -> "Operator":
        return Operator(self.entries, label)

    def __matmul__(self, other: OperatorLike) -> "Operator":
        other_entries = as_matrix(other)
        _require_same_dim(self.entries, other_entries)
        return Operator(self.entries @ other_entries)

    def __add__(self, other: OperatorLike) -> "Operator":
        other_entries = as_matrix(other)
        _require_same_dim(self.entries, other_entries)
        return Operator(self.entries + other_entries)

    def __sub__(self, other: OperatorLike) -> "Operator":
        other_entries = as_matrix(other)
        _require_same_dim(self.entries, other_entries)
        return Operator(self.entries - other_entries)

    def __neg__(self) -> "Operator":
        return Operator(-self.entries)

    def __mul__(self, scalar: complex) -> "Operator":
        if not np.isscalar(scalar):
            return NotImplemented
        return Operator(scalar * self.entries)

    __rmul__ = __mul__

    def allclose(self, other: OperatorLike, atol: float = 1e-12) -> bool:
        other_entries = as_matrix(other)
        return self.entries.shape == other_entries.shape and bool(
            np.allclose(self.entries, other_entries, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        name = self.label or "Operator"
        return f"{name}(dim={self.dim})"


@dataclass(frozen=True)
class BracketSpec:
    """Weights of [A, B]_{alpha,beta} = alpha A B - beta B A"""
    alpha: complex = 1.0
    beta: complex = 1.0
    name: str = field(default="custom", compare=False)

    @classmethod
    def commutator(cls) -> "BracketSpec":
        return cls(1.0, 1.0, "commutator")

    @classmethod
    def q_commutator(cls, q: float) -> "BracketSpec":
        """(1, q): A B - q B A, the oscillator bracket"""
        return cls(1.0, q, "q_commutator")

    @classmethod
    def adjoint_q_commutator(cls, q: float) -> "BracketSpec":
        """(q, 1): q A B - B A, the bracket whose adjoint is the (1, q) bracket"""
        return cls(q, 1.0, "adjoint_q_commutator")

    @classmethod
    def symmetric(cls, q: float) -> "BracketSpec":
        """(q^{1/2}, q^{-1/2}): the weighted position-momentum bracket"""
        root = math.sqrt(q)
        return cls(root, 1.0 / root, "symmetric")

    def swapped(self) -> "BracketSpec":
        """(beta, alpha), so that [A, B]_{swapped} = -[B, A]_{self}"""
        return BracketSpec(self.beta, self.alpha, f"{self.name}_swapped")

    def describe(self) -> str:
        return f"{self.name}(alpha={_fmt_scalar(self.alpha)}, beta={_fmt_scalar(self.beta)})"


@dataclass(frozen=True, eq=False)
class Superoperator:
    """dim^2 x dim^2 matrix acting on column-stacked operators"""
    dim: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        size = self.dim * self.dim
        if entries.shape != (size, size):
            raise DimensionMismatchError(
                f"Superoperator for dim {self.dim} must be {size}x{size}, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (self.dim * self.dim,):
            raise DimensionMismatchError(f"Expected vector of length {self.dim * self.dim}")
        return self.entries @ vector

    def apply_operator(self, operator: OperatorLike) -> Operator:
        matrix = as_matrix(operator)
        if matrix.shape[0] != self.dim:
            raise DimensionMismatchError(f"Expected operator of dim {self.dim}, got {matrix.shape[0]}")
        return Operator(unvec(self.apply(vec(matrix)), self.dim))


def _fmt_scalar(value: complex) -> str:
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:.6g}"
    return f"{value:.6g}"


def as_matrix(operator: OperatorLike) -> np.ndarray:
    """Return the complex matrix behind an Operator or array"""
    if isinstance(operator, Operator):
        return operator.entries
    matrix = np.asarray(operator, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {matrix.shape}")
    return matrix


def _require_same_dim(first: np.ndarray, second: np.ndarray):
    if first.shape != second.shape:
        raise DimensionMismatchError(f"Dimension mismatch: {first.shape} vs {second.shape}")


def vec(matrix: OperatorLike) -> np.ndarray:
    """Column-stacked vectorization"""
    return as_matrix(matrix).reshape(-1, order='F')


def unvec(vector: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of ``vec``"""
    vector = np.asarray(vector, dtype=complex)
    if vector.shape != (dim * dim,):
        raise DimensionMismatchError(f"Expected vector of length {dim * dim}, got {vector.shape}")
    return vector.reshape(dim, dim, order='F')


def bracket(a: OperatorLike, b: OperatorLike, spec: BracketSpec) -> Operator:
    """alpha A B - beta B A"""
    a_mat, b_mat = as_matrix(a), as_matrix(b)
    _require_same_dim(a_mat, b_mat)
    return Operator(spec.alpha * (a_mat @ b_mat) - spec.beta * (b_mat @ a_mat))


def adjoint(a: OperatorLike) -> Operator:
    """Conjugate transpose"""
    label = None
    if isinstance(a, Operator) and a.label:
        label = f"{a.label}^+"
    return Operator(as_matrix(a).conj().T, label)


def matrix_exp(a: OperatorLike, tol: float = DEFAULT_EXPM_TOLERANCE) -> Operator:
    """
    Matrix exponential by scaling and squaring around a Taylor core.

    The matrix is scaled by 2^-s until its 1-norm is at most 0.5, the series
    is summed until the next term falls below ``tol`` relative to the partial
    sum, and the result is squared s times.
    """
    matrix = as_matrix(a)
    if not np.all(np.isfinite(matrix)):
        raise DomainError("matrix_exp requires finite entries")

    dim = matrix.shape[0]
    norm = np.linalg.norm(matrix, 1)
    squarings = 0
    if norm > _TAYLOR_NORM_BOUND:
        squarings = int(math.ceil(math.log2(norm / _TAYLOR_NORM_BOUND)))
    scaled = matrix / (2.0 ** squarings)

    result = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, _TAYLOR_MAX_TERMS + 1):
        term = term @ scaled / k
        result = result + term
        if np.max(np.abs(term)) <= tol * max(1.0, np.max(np.abs(result))):
            break

    for _ in range(squarings):
        result = result @ result
    return Operator(result)


def build_liouvillian(h: OperatorLike, spec: BracketSpec, q: float) -> Superoperator:
    """
    Superoperator of F -> [q H, F]_{alpha,beta} = alpha qH F - beta F qH.

    With column stacking this is alpha (I kron qH) - beta ((qH)^T kron I).
    """
    h_mat = as_matrix(h)
    dim = h_mat.shape[0]
    qh = q * h_mat
    identity = np.eye(dim, dtype=complex)
    entries = spec.alpha * np.kron(identity, qh) - spec.beta * np.kron(qh.T, identity)
    return Superoperator(dim, entries)


def expectation(state: np.ndarray, a: OperatorLike) -> complex:
    """<psi|A|psi> / <psi|psi>"""
    psi = np.asarray(state, dtype=complex).reshape(-1)
    matrix = as_matrix(a)
    if psi.shape[0] != matrix.shape[0]:
        raise DimensionMismatchError(f"State of length {psi.shape[0]} vs operator dim {matrix.shape[0]}")
    norm_sq = np.vdot(psi, psi).real
    if norm_sq <= 0.0:
        raise DomainError("expectation requires a non-zero state vector")
    return complex(np.vdot(psi, matrix @ psi) / norm_sq)


def frobenius_distance(a: OperatorLike, b: OperatorLike) -> float:
    a_mat, b_mat = as_matrix(a), as_matrix(b)
    _require_same_dim(a_mat, b_mat)
    return float(np.linalg.norm(a_mat - b_mat))


def pauli_matrices() -> dict:
    """sigma_x, sigma_y, sigma_z as Operators"""
    return {
        'x': Operator(np.array([[0, 1], [1, 0]], dtype=complex), "sigma_x"),
        'y': Operator(np.array([[0, -1j], [1j, 0]], dtype=complex), "sigma_y"),
        'z': Operator(np.array([[1, 0], [0, -1]], dtype=complex), "sigma_z"),
    }
