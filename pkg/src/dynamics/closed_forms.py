"""
Closed-form Heisenberg-picture solutions

Free particle, spin precession and the q-oscillator. The corrected forms are
the default; ``PrintedForms`` switches reproduce the printed expressions.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import RepresentationMismatchError
from ..opcore import Operator, as_matrix
from ..reps import FockRep, require_same_representation
from .scenario import PrintedForms


def free_particle_velocity(q: float, mass: float) -> float:
    """q (q + 1) / (2 m); tends to 1/m as q -> 1"""
    return q * (q + 1.0) / (2.0 * mass)


def closed_free_particle(x0: Operator, p0: Operator, q: float, mass: float, t: float,
                         lambda_matrix: Operator) -> Tuple[Operator, Operator]:
    """
    x_H(t) = x0 + (q (q + 1) / 2m) p L t and p_H(t) = p0.

    The position form is exact to first order in t: d(pL)/dt does not vanish
    for q != 1.

    Raises:
        RepresentationMismatchError: operators from different representations
    """
    require_same_representation(x0, p0, lambda_matrix)
    drift = as_matrix(p0) @ as_matrix(lambda_matrix)
    x_t = as_matrix(x0) + free_particle_velocity(q, mass) * t * drift
    return Operator(x_t, "x_H"), Operator(as_matrix(p0), "p_H")


def spin_rotation(omega_q: float, t: float, printed: bool = False) -> np.ndarray:
    """
    R(t) with s(t) = R(t) s(0) over (Sx, Sy, Sz).

    Default: the flow dSx/dt = omega Sy, dSy/dt = -omega Sx, dSz/dt = 0.
    Printed: Sx cos - Sy sin, Sy cos + Sx sin, Sz = 0.
    """
    cos, sin = math.cos(omega_q * t), math.sin(omega_q * t)
    if printed:
        return np.array([[cos, -sin, 0.0], [sin, cos, 0.0], [0.0, 0.0, 0.0]])
    return np.array([[cos, sin, 0.0], [-sin, cos, 0.0], [0.0, 0.0, 1.0]])


def closed_spin(s0, omega_q: float, t: float, printed: bool = False) -> np.ndarray:
    """Spin value vector at time t"""
    return spin_rotation(omega_q, t, printed) @ np.asarray(s0, dtype=float)


@dataclass(frozen=True)
class OscillatorSolution:
    a: Operator
    adag: Operator
    x: Operator
    p: Operator

    def as_dict(self):
        return {'a': self.a, 'adag': self.adag, 'x': self.x, 'p': self.p}


def closed_oscillator(rep: FockRep, q: float, t: float,
                      printed: Optional[PrintedForms] = None) -> OscillatorSolution:
    """
    a_H(t) = a e^{-i q omega_q t}, a^+_H(t) = a^+ e^{+i q omega_q t}.

    x_H = sqrt(hbar / 2 m omega_q)(a_H + a^+_H) and
    p_H = i sqrt(m omega_q hbar / 2)(a_H - a^+_H).
    """
    if not math.isclose(q, rep.q, rel_tol=0.0, abs_tol=1e-15):
        raise RepresentationMismatchError(f"q={q} does not match the representation's q={rep.q}")
    printed = printed or PrintedForms()
    a, adag = as_matrix(rep.a), as_matrix(rep.adag)
    phase = q * rep.omega_q * t
    a_t = a * np.exp(-1j * phase)
    adag_t = (a if printed.dagger_initial else adag) * np.exp(1j * phase)

    if printed.oscillator_trig:
        x_t = 2.0 * rep.position_scale * a * math.cos(phase)
        p_t = 2.0 * rep.momentum_scale * adag * math.sin(phase)
    else:
        x_t = rep.position_scale * (a_t + adag_t)
        p_t = 1j * rep.momentum_scale * (a_t - adag_t)
    return OscillatorSolution(Operator(a_t, "a_H"), Operator(adag_t, "adag_H"),
                              Operator(x_t, "x_H"), Operator(p_t, "p_H"))
