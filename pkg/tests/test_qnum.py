#!/usr/bin/env python3
"""
Tests for q-basic numbers and deformed frequencies
"""

import os
import sys
import unittest
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.errors import DomainError
from src.qnum import (
    QParams,
    basic_factorial_osc,
    basic_number_osc,
    basic_number_paper,
    basic_number_squared,
    q_frequency_osc,
    q_frequency_spin,
)


class TestBasicNumbers(unittest.TestCase):
    """Both basic-number conventions"""

    def test_q_squared_base(self):
        self.assertAlmostEqual(basic_number_paper(3, 2.0), 21.0)
        self.assertAlmostEqual(basic_number_paper(1, 1.7), 1.0)
        self.assertEqual(basic_number_paper(0, 1.3), 0.0)

    def test_q_squared_base_recursion(self):
        for q in (0.5, 0.9, 1.3, 2.5):
            for n in range(12):
                self.assertAlmostEqual(basic_number_paper(n + 1, q), 1.0 + q ** 2 * basic_number_paper(n, q),
                                       delta=1e-12 * basic_number_paper(n + 1, q))
        self.assertEqual(basic_number_paper(0, 1.7), 0.0)

    def test_squared_name_is_the_same_function(self):
        self.assertIs(basic_number_squared, basic_number_paper)

    def test_oscillator_base(self):
        self.assertAlmostEqual(basic_number_osc(3, 2.0), 7.0)
        self.assertEqual(basic_number_osc(0, 0.4), 0.0)

    def test_oscillator_recursion(self):
        for q in (0.5, 0.9, 1.3, 2.5):
            for n in range(12):
                self.assertAlmostEqual(basic_number_osc(n + 1, q), 1.0 + q * basic_number_osc(n, q), places=10)

    def test_classical_limit_returns_n(self):
        for n in range(8):
            self.assertEqual(basic_number_paper(n, 1.0), float(n))
            self.assertEqual(basic_number_osc(n, 1.0 + 1e-14), float(n))

    def test_limit_is_continuous(self):
        """Close to q = 1 the closed form approaches n"""
        for n in (2, 5, 9):
            self.assertAlmostEqual(basic_number_paper(n, 1.0 + 1e-7), n, places=4)
            self.assertAlmostEqual(basic_number_osc(n, 1.0 - 1e-7), n, places=4)

    def test_exact_fractions(self):
        self.assertEqual(basic_number_paper(3, Fraction(1, 2)), Fraction(21, 16))
        self.assertEqual(basic_number_osc(3, Fraction(3, 2)), Fraction(19, 4))
        self.assertEqual(basic_number_osc(4, 1), 4)

    def test_factorial(self):
        self.assertAlmostEqual(basic_factorial_osc(3, 2.0), 21.0)
        self.assertEqual(basic_factorial_osc(0, 1.5), 1)

    def test_invalid_arguments(self):
        with self.assertRaises(DomainError):
            basic_number_paper(-1, 1.2)
        with self.assertRaises(DomainError):
            basic_number_osc(2, 0.0)
        with self.assertRaises(DomainError):
            basic_number_osc(2, -1.0)
        with self.assertRaises(DomainError):
            basic_number_paper(True, 1.2)
        with self.assertRaises(DomainError):
            basic_number_paper(1.5, 1.2)


class TestFrequencies(unittest.TestCase):

    def test_oscillator_frequency(self):
        self.assertAlmostEqual(q_frequency_osc(1.0, 1.0), 1.0)
        self.assertAlmostEqual(q_frequency_osc(2.0, 2.0), 1.25)

    def test_oscillator_frequency_approaches_omega(self):
        distances = [abs(q_frequency_osc(1.0, q) - 1.0) for q in (1.1, 1.01, 1.001)]
        self.assertTrue(distances[0] > distances[1] > distances[2])
        self.assertLess(distances[2], 1e-2)

    def test_spin_frequency(self):
        value = q_frequency_spin(field=2.0, q=1.5, lam=0.5, charge=3.0)
        self.assertAlmostEqual(value, 6.75)

    def test_frequency_domain(self):
        with self.assertRaises(DomainError):
            q_frequency_osc(0.0, 1.2)
        with self.assertRaises(DomainError):
            q_frequency_spin(1.0, 1.0, electron_mass=0.0)


class TestQParams(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(DomainError):
            QParams(q=0.0)
        with self.assertRaises(DomainError):
            QParams(q=1.0, hbar=-1.0)

    def test_properties(self):
        self.assertTrue(QParams(q=1.0).is_classical)
        self.assertFalse(QParams(q=1.01).is_classical)
        self.assertAlmostEqual(QParams(q=4.0).sqrt_q, 2.0)


if __name__ == '__main__':
    unittest.main()
