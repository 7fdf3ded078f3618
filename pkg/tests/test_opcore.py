#!/usr/bin/env python3
"""
Tests for the dense operator core
"""

import os
import sys
import unittest

import numpy as np
from scipy.linalg import expm

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.errors import DimensionMismatchError, DomainError
from src.opcore import (
    BracketSpec,
    Operator,
    adjoint,
    as_matrix,
    bracket,
    build_liouvillian,
    expectation,
    frobenius_distance,
    matrix_exp,
    pauli_matrices,
    unvec,
    vec,
)


def random_matrix(rng, dim, scale=1.0):
    return scale * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))


class TestOperator(unittest.TestCase):

    def test_rejects_non_square(self):
        with self.assertRaises(DimensionMismatchError):
            Operator(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with self.assertRaises(DomainError):
            Operator(np.array([[np.nan, 0], [0, 1]]))

    def test_entries_are_read_only(self):
        op = Operator.identity(3)
        with self.assertRaises(ValueError):
            op.entries[0, 0] = 2.0

    def test_arithmetic_checks_dimensions(self):
        with self.assertRaises(DimensionMismatchError):
            Operator.identity(2) @ Operator.identity(3)
        with self.assertRaises(DimensionMismatchError):
            Operator.identity(2) + np.eye(3)

    def test_adjoint_label(self):
        op = Operator(np.array([[0, 1j], [0, 0]]), "a")
        self.assertEqual(op.dag().label, "a^+")
        self.assertTrue(np.allclose(as_matrix(op.dag()), [[0, 0], [-1j, 0]]))


class TestBrackets(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_pauli_commutator(self):
        sigma = pauli_matrices()
        result = bracket(sigma['x'], sigma['y'], BracketSpec.commutator())
        self.assertTrue(result.allclose(2j * as_matrix(sigma['z'])))

    def test_swapped_weights_antisymmetry(self):
        a, b = random_matrix(self.rng, 4), random_matrix(self.rng, 4)
        for spec in (BracketSpec.q_commutator(1.7), BracketSpec.symmetric(0.6), BracketSpec(2.0, -0.5)):
            left = bracket(a, b, spec.swapped())
            right = bracket(b, a, spec) * -1.0
            self.assertTrue(left.allclose(right, atol=1e-12))

    def test_adjoint_of_bracket(self):
        """([A, B]_(a,b))^+ = [B^+, A^+]_(a,b) for real weights"""
        a, b = random_matrix(self.rng, 5), random_matrix(self.rng, 5)
        spec = BracketSpec.q_commutator(1.3)
        left = adjoint(bracket(a, b, spec))
        right = bracket(adjoint(a), adjoint(b), spec.swapped()) * -1.0
        self.assertTrue(left.allclose(bracket(adjoint(b), adjoint(a), spec), atol=1e-12))
        self.assertTrue(left.allclose(right, atol=1e-12))

    def test_q_commutator_reduces_to_commutator(self):
        a, b = random_matrix(self.rng, 3), random_matrix(self.rng, 3)
        self.assertTrue(bracket(a, b, BracketSpec.q_commutator(1.0)).allclose(
            bracket(a, b, BracketSpec.commutator())))

    def test_describe(self):
        self.assertEqual(BracketSpec.q_commutator(2.0).describe(), "q_commutator(alpha=1, beta=2)")


class TestVectorization(unittest.TestCase):

    def test_round_trip(self):
        matrix = np.arange(9, dtype=complex).reshape(3, 3)
        self.assertTrue(np.array_equal(unvec(vec(matrix), 3), matrix))

    def test_column_stacking(self):
        matrix = np.array([[1, 2], [3, 4]], dtype=complex)
        self.assertTrue(np.array_equal(vec(matrix), [1, 3, 2, 4]))

    def test_kronecker_identity(self):
        rng = np.random.default_rng(11)
        a, f, b = (random_matrix(rng, 3) for _ in range(3))
        self.assertTrue(np.allclose(vec(a @ f @ b), np.kron(b.T, a) @ vec(f)))

    def test_unvec_length(self):
        with self.assertRaises(DimensionMismatchError):
            unvec(np.zeros(5), 2)


class TestMatrixExponential(unittest.TestCase):

    def test_zero_gives_identity(self):
        self.assertTrue(matrix_exp(np.zeros((4, 4))).allclose(np.eye(4)))

    def test_diagonal(self):
        theta = 0.7
        result = matrix_exp(1j * theta * as_matrix(pauli_matrices()['z']))
        self.assertTrue(result.allclose(np.diag([np.exp(1j * theta), np.exp(-1j * theta)])))

    def test_matches_scipy(self):
        rng = np.random.default_rng(3)
        for scale in (0.01, 1.0, 3.0):
            matrix = random_matrix(rng, 6, scale)
            expected = expm(matrix)
            relative = np.linalg.norm(as_matrix(matrix_exp(matrix)) - expected) / np.linalg.norm(expected)
            self.assertLess(relative, 1e-9)

    def test_unitary_for_anti_hermitian(self):
        rng = np.random.default_rng(5)
        h = random_matrix(rng, 5)
        h = h + h.conj().T
        u = as_matrix(matrix_exp(-1j * h))
        self.assertTrue(np.allclose(u.conj().T @ u, np.eye(5), atol=1e-12))


class TestLiouvillian(unittest.TestCase):

    def test_matches_bracket(self):
        rng = np.random.default_rng(13)
        h, f = random_matrix(rng, 4), random_matrix(rng, 4)
        q = 1.4
        for spec in (BracketSpec.commutator(), BracketSpec.q_commutator(q), BracketSpec.adjoint_q_commutator(q)):
            liouvillian = build_liouvillian(h, spec, q)
            expected = bracket(q * h, f, spec)
            self.assertTrue(liouvillian.apply_operator(f).allclose(expected, atol=1e-11))

    def test_apply_checks_dimension(self):
        liouvillian = build_liouvillian(np.eye(3), BracketSpec.commutator(), 1.0)
        with self.assertRaises(DimensionMismatchError):
            liouvillian.apply(np.zeros(4))


class TestExpectation(unittest.TestCase):

    def test_normalizes_state(self):
        sigma_z = pauli_matrices()['z']
        self.assertAlmostEqual(expectation(np.array([2.0, 0.0]), sigma_z), 1.0)
        self.assertAlmostEqual(expectation(np.array([1.0, 1.0]), sigma_z), 0.0)

    def test_zero_state(self):
        with self.assertRaises(DomainError):
            expectation(np.zeros(2), np.eye(2))

    def test_dimension(self):
        with self.assertRaises(DimensionMismatchError):
            expectation(np.ones(3), np.eye(2))

    def test_frobenius_distance(self):
        self.assertAlmostEqual(frobenius_distance(np.eye(2), np.zeros((2, 2))), np.sqrt(2.0))


if __name__ == '__main__':
    unittest.main()
