#!/usr/bin/env python3
"""
Test suite for the evolution engines, closed forms and cross-validation
"""

import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config import NumericsConfig
from src.dynamics import (
    EXACT,
    FIRST_ORDER,
    PrintedForms,
    Scenario,
    TimeGrid,
    bracket_spec,
    closed_oscillator,
    closed_spin,
    cross_validate,
    evolve_liouville,
    evolve_ode,
    evolve_oracle,
    free_particle_velocity,
    heisenberg_rhs,
    heisenberg_transform,
    integrate,
    liouville_generator,
    poly_coeff_evolution,
    polynomial_alpha,
    schrodinger_expectation,
    simpson_integral,
    spin_rotation,
)
from src.errors import ConfigError, DomainError, RepresentationMismatchError, ToleranceBreach
from src.opcore import BracketSpec, as_matrix, expectation, vec
from src.qnum import basic_number_paper, q_frequency_osc
from src.qsymb import Generator, QPolynomial, canonical_equal, normal_order, xy_rules
from src.reps import FockRep


def random_hermitian(rng, dim):
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (m + m.conj().T)


class TestTimeGridAndScenario(unittest.TestCase):

    def test_grid(self):
        grid = TimeGrid(2.0, 4)
        self.assertAlmostEqual(grid.dt, 0.5)
        self.assertTrue(np.allclose(grid.points, [0.0, 0.5, 1.0, 1.5, 2.0]))
        self.assertEqual(grid.refined().steps, 8)

    def test_grid_validation(self):
        with self.assertRaises(ConfigError):
            TimeGrid(0.0, 10)
        with self.assertRaises(ConfigError):
            TimeGrid(1.0, 0)

    def test_scenario_defaults(self):
        grid = TimeGrid(1.0, 10)
        self.assertEqual(Scenario("q_oscillator", 1.2, grid).convention, "q_commutator")
        self.assertEqual(Scenario("spin_precession", 1.2, grid).convention, "structure_constants")
        self.assertEqual(Scenario("free_particle", 1.2, grid).convention, "plain")

    def test_scenario_validation(self):
        grid = TimeGrid(1.0, 10)
        with self.assertRaises(ConfigError):
            Scenario("q_oscillator", 0.0, grid)
        with self.assertRaises(ConfigError):
            Scenario("harmonic", 1.0, grid)
        with self.assertRaises(ConfigError):
            Scenario("spin_precession", 1.0, grid, convention="plain")
        with self.assertRaises(ConfigError):
            Scenario("q_oscillator", 1.0, grid, convention="structure_constants")
        with self.assertRaises(ConfigError):
            Scenario("q_oscillator", 1.0, grid, rhs_mode="schrodinger")

    def test_printed_forms(self):
        self.assertEqual(PrintedForms.from_names(["all"]), PrintedForms.everything())
        self.assertEqual(PrintedForms.from_names(["omit_charge"]).enabled(), ["omit_charge"])
        with self.assertRaises(ConfigError):
            PrintedForms.from_names(["no_such_flag"])
        scenario = Scenario("spin_precession", 1.0, TimeGrid(1.0, 2), charge=2.0,
                            printed=PrintedForms(omit_charge=True))
        self.assertEqual(scenario.effective_charge, 1.0)

    def test_with_q(self):
        scenario = Scenario("q_oscillator", 1.2, TimeGrid(1.0, 10), fock_size=6)
        moved = scenario.with_q(0.9)
        self.assertEqual(moved.q, 0.9)
        self.assertEqual(moved.fock_size, 6)


class TestIntegrator(unittest.TestCase):

    def test_exponential_decay(self):
        outcome = integrate(np.array([1.0 + 0j]), lambda y: -y, TimeGrid(1.0, 100))
        self.assertAlmostEqual(outcome.states[-1][0].real, math.exp(-1.0), places=9)
        self.assertFalse(outcome.flagged)
        self.assertLess(outcome.error_estimate, 1e-9)

    def test_coarse_grid_is_flagged(self):
        outcome = integrate(np.array([1.0 + 0j]), lambda y: -5.0 * y, TimeGrid(4.0, 4), tolerance=1e-8)
        self.assertTrue(outcome.flagged)
        self.assertEqual(len(outcome.states), 5)


class TestEngines(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(42)
        self.h = random_hermitian(self.rng, 4)
        self.b = self.rng.standard_normal((4, 4)) + 1j * self.rng.standard_normal((4, 4))
        self.q = 1.2

    def test_bracket_spec(self):
        self.assertEqual(bracket_spec("q_commutator", 2.0), BracketSpec.q_commutator(2.0))
        with self.assertRaises(ConfigError):
            bracket_spec("structure_constants", 1.0)

    def test_generator_matches_rhs(self):
        for convention in ("plain", "q_commutator", "adjoint_q_commutator", "symmetric"):
            for mode in ("heisenberg", "literal_dyn"):
                spec = bracket_spec(convention, self.q)
                generator = liouville_generator(self.h, spec, self.q, 0.7, mode)
                rhs = heisenberg_rhs(self.h, spec, self.q, 0.7, mode)
                self.assertTrue(np.allclose(generator @ vec(self.b), vec(rhs(self.b))), (convention, mode))

    def test_ode_matches_liouville(self):
        grid = TimeGrid(1.0, 1000)
        for convention in ("plain", "q_commutator", "symmetric"):
            spec = bracket_spec(convention, self.q)
            ode = evolve_ode(self.b, self.h, spec, self.q, grid)
            liouville = evolve_liouville(self.b, self.h, spec, self.q, grid)
            worst = max(np.linalg.norm(a - b) for a, b in zip(ode.values, liouville.values))
            self.assertLess(worst, 1e-7, convention)
            self.assertEqual(ode.diagnostics['rhs_mode'], "heisenberg")

    def test_literal_mode_differs(self):
        grid = TimeGrid(0.5, 1000)
        spec = BracketSpec.commutator()
        heisenberg = evolve_liouville(self.b, self.h, spec, self.q, grid)
        literal = evolve_liouville(self.b, self.h, spec, self.q, grid, rhs_mode="literal_dyn")
        literal_ode = evolve_ode(self.b, self.h, spec, self.q, grid, rhs_mode="literal_dyn")
        self.assertGreater(np.linalg.norm(heisenberg.final - literal.final), 1e-3)
        relative = np.linalg.norm(literal_ode.final - literal.final) / np.linalg.norm(literal.final)
        self.assertLess(relative, 1e-8)

    def test_oracle_is_classical_limit(self):
        grid = TimeGrid(1.0, 1000)
        oracle = evolve_oracle(self.b, self.h, grid)
        ode = evolve_ode(self.b, self.h, BracketSpec.commutator(), 1.0, grid)
        worst = max(np.linalg.norm(a - b) for a, b in zip(oracle.values, ode.values))
        self.assertLess(worst, 1e-7)

    def test_pictures_agree(self):
        state = self.rng.standard_normal(4) + 1j * self.rng.standard_normal(4)
        t = 0.8
        heisenberg = expectation(state, heisenberg_transform(self.b, self.h, t))
        self.assertAlmostEqual(heisenberg, schrodinger_expectation(state, self.b, self.h, t), places=10)


class TestClosedForms(unittest.TestCase):

    def test_free_particle_velocity_limit(self):
        self.assertAlmostEqual(free_particle_velocity(1.0, 2.0), 0.5)
        self.assertAlmostEqual(free_particle_velocity(2.0, 1.0), 3.0)

    def test_spin_rotation(self):
        rotation = spin_rotation(1.3, 0.4)
        self.assertTrue(np.allclose(rotation @ rotation.T, np.eye(3)))
        printed = spin_rotation(1.3, 0.4, printed=True)
        self.assertTrue(np.allclose(printed[2], 0.0))
        s = closed_spin((1.0, 0.0, 0.5), 1.0, math.pi / 2)
        self.assertTrue(np.allclose(s, [0.0, -1.0, 0.5]))

    def test_oscillator_phases(self):
        rep = FockRep(6, 1.3)
        solution = closed_oscillator(rep, 1.3, 0.7)
        phase = 1.3 * rep.omega_q * 0.7
        self.assertTrue(solution.a.allclose(as_matrix(rep.a) * np.exp(-1j * phase)))
        self.assertTrue(solution.adag.allclose(as_matrix(rep.adag) * np.exp(1j * phase)))

    def test_oscillator_printed_dagger(self):
        rep = FockRep(6, 1.3)
        solution = closed_oscillator(rep, 1.3, 0.0, PrintedForms(dagger_initial=True))
        self.assertTrue(solution.adag.allclose(rep.a))

    def test_oscillator_rejects_other_q(self):
        with self.assertRaises(RepresentationMismatchError):
            closed_oscillator(FockRep(6, 1.3), 1.4, 0.1)


class TestCrossValidation(unittest.TestCase):
    """Engine triangulation on the four named scenarios"""

    def setUp(self):
        self.numerics = NumericsConfig()

    def test_oscillator(self):
        q = 1.3
        scenario = Scenario("q_oscillator", q, TimeGrid(2.0, 400), fock_size=8)
        report = cross_validate(scenario, numerics=self.numerics)
        self.assertEqual(report.engines, ["closed", "ode", "liouville"])
        self.assertEqual(report.breaches(1e-6), [])
        for engine in report.engines:
            self.assertLess(report.invariants[f"q_commutation_defect_{engine}"], 1e-10)
        self.assertAlmostEqual(report.constants['q_omega_q'], q * q_frequency_osc(1.0, q))
        self.assertIn("adag:", report.bracket)
        self.assertLess(report.max_deviation('x', 'closed', 'liouville'), 1e-6)
        report.require_within(1e-6)

    def test_oscillator_classical_adds_oracle(self):
        scenario = Scenario("q_oscillator", 1.0, TimeGrid(1.0, 200), fock_size=8)
        report = cross_validate(scenario, numerics=self.numerics)
        self.assertIn("oracle", report.engines)
        self.assertLess(report.max_deviation('a', 'closed', 'oracle'), 1e-8)

    def test_tolerance_breach(self):
        scenario = Scenario("q_oscillator", 1.3, TimeGrid(2.0, 20), fock_size=8)
        report = cross_validate(scenario, ["closed", "ode"], self.numerics)
        with self.assertRaises(ToleranceBreach) as context:
            report.require_within(1e-14)
        self.assertGreater(context.exception.deviation, 1e-14)

    def test_free_particle(self):
        scenario = Scenario("free_particle", 1.5, TimeGrid(0.5, 500), lattice_half_width=3)
        report = cross_validate(scenario, numerics=self.numerics)
        self.assertEqual(report.breaches(1e-6), [])
        kinds = {(c.observable, c.engine_a, c.engine_b): c.kind for c in report.comparisons}
        self.assertEqual(kinds[('x', 'closed', 'ode')], FIRST_ORDER)
        self.assertEqual(kinds[('p', 'closed', 'ode')], EXACT)
        self.assertLess(report.invariants['x_second_difference'], 1e-12)
        self.assertAlmostEqual(report.constants['velocity'], 1.5 * 2.5 / 2.0)

    def test_free_particle_rejects_classical_point(self):
        scenario = Scenario("free_particle", 1.0, TimeGrid(1.0, 10))
        with self.assertRaises(DomainError):
            cross_validate(scenario, numerics=self.numerics)

    def test_spin(self):
        scenario = Scenario("spin_precession", 1.2, TimeGrid(2.0, 400), lam=0.8, s0=(1.0, 0.0, 0.5))
        report = cross_validate(scenario, numerics=self.numerics)
        self.assertEqual(report.breaches(1e-6), [])
        self.assertAlmostEqual(report.constants['omega_q'], 1.44 * 0.8)
        self.assertAlmostEqual(report.constants['flow_rate'], 1.44 * 0.8)
        self.assertLess(report.invariants['planar_norm_drift_liouville'], 1e-10)
        sz = report.results['Sz']['liouville'].values
        self.assertTrue(all(abs(complex(v) - 0.5) < 1e-12 for v in sz))

    def test_spin_classical_oracle(self):
        scenario = Scenario("spin_precession", 1.0, TimeGrid(1.0, 100), s0=(0.3, -0.2, 1.0))
        report = cross_validate(scenario, numerics=self.numerics)
        self.assertIn("oracle", report.engines)
        for label in ("Sx", "Sy", "Sz"):
            self.assertLess(report.max_deviation(label, 'closed', 'oracle'), 1e-9)

    def test_unknown_engine(self):
        scenario = Scenario("q_oscillator", 1.1, TimeGrid(1.0, 10), fock_size=4)
        with self.assertRaises(ConfigError):
            cross_validate(scenario, ["closed", "magic"], self.numerics)
        with self.assertRaises(ConfigError):
            cross_validate(scenario, [], self.numerics)


class TestPolynomialDynamics(unittest.TestCase):

    def test_simpson(self):
        self.assertAlmostEqual(simpson_integral(polynomial_alpha((0.0, 0.0, 3.0)), 2.0, 10), 8.0)
        self.assertEqual(simpson_integral(polynomial_alpha((1.0,)), 0.0, 10), 0j)
        with self.assertRaises(DomainError):
            simpson_integral(polynomial_alpha((1.0,)), 1.0, 1)

    def test_drift_terms(self):
        q, b, c = 1.1, 0.7, 1.3
        alpha = {(1, 0): polynomial_alpha((1.0,)), (0, 1): polynomial_alpha((0.5,))}
        report = poly_coeff_evolution(alpha, b, c, q, 1.0)
        expected = 1j * q ** 1.5 * c * 1.0 - 1j * q ** 0.5 * b * 0.5
        self.assertAlmostEqual(report.values("drift")[(Generator.Lambda,)], expected)
        self.assertAlmostEqual(report.values("initial")[(Generator.X,)], 1.0)
        self.assertAlmostEqual(report.rates[(1, 0)], 1j * q ** 0.5 * c)
        self.assertAlmostEqual(report.rates[(0, 1)], -1j * q ** 1.5 * b)
        self.assertAlmostEqual(report.exponential[(1, 0)], np.exp(1j * q ** 0.5 * c))

    def test_solution_is_a_q_polynomial(self):
        alpha = {(2, 0): polynomial_alpha((1.0,)), (1, 1): polynomial_alpha((1.0, 2.0))}
        report = poly_coeff_evolution(alpha, 0.5, 1.0, 1.3, 1.0)
        self.assertIsInstance(report.evaluated, QPolynomial)
        self.assertEqual(report.evaluated, report.initial + report.drift)
        self.assertEqual(report.evaluated.generators(), {Generator.X, Generator.Y, Generator.Lambda})
        # [2]_q = 1 + q^2 stays symbolic: q^{3/2} and q^{7/2} on x L
        x_lambda = report.drift.coefficient((Generator.X, Generator.Lambda))
        self.assertEqual([exponent for exponent, _ in x_lambda.items()], [(3, 0), (7, 0)])
        self.assertAlmostEqual(x_lambda.evaluate(1.3), 1j * 1.3 ** 1.5 * basic_number_paper(2, 1.3))
        self.assertEqual(normal_order(report.evaluated, xy_rules()), report.evaluated)

    def test_lambda_is_central_in_the_solution(self):
        alpha = {(2, 0): polynomial_alpha((1.0,))}
        drift = poly_coeff_evolution(alpha, 1.0, 1.0, 1.2, 0.5).drift
        lam = QPolynomial.generator(Generator.Lambda)
        rules = xy_rules()
        self.assertTrue(canonical_equal(normal_order(lam * drift, rules), normal_order(drift * lam, rules)))

    def test_zero_alpha(self):
        report = poly_coeff_evolution({(2, 1): polynomial_alpha((0.0,))}, 1.0, 1.0, 1.2, 0.5)
        self.assertTrue(report.evaluated.is_zero)
        self.assertEqual(report.values(), {})

    def test_coefficient_mismatch(self):
        alpha = {(1, 0): polynomial_alpha((1.0,)), (0, 1): polynomial_alpha((0.5,))}
        b, c, t = 0.7, 1.3, 1.0
        deformed = poly_coeff_evolution(alpha, b, c, 1.5, t)
        integral_10, integral_01 = deformed.integrals[(1, 0)], deformed.integrals[(0, 1)]
        self.assertAlmostEqual(deformed.coefficient_mismatch[(1, 0)],
                               abs(c * integral_10) * (1.5 ** 1.5 - 1.5 ** 0.5))
        self.assertAlmostEqual(deformed.coefficient_mismatch[(0, 1)],
                               abs(b * integral_01) * (1.5 ** 1.5 - 1.5 ** 0.5))
        self.assertGreater(min(deformed.coefficient_mismatch.values()), 0.1)

        classical = poly_coeff_evolution(alpha, b, c, 1.0, t)
        self.assertEqual(classical.coefficient_mismatch, {(1, 0): 0.0, (0, 1): 0.0})

    def test_first_order_remainder_is_quadratic(self):
        alpha = {(1, 0): polynomial_alpha((1.0,)), (0, 1): polynomial_alpha((1.0,))}
        for q in (0.8, 1.4):
            coarse = poly_coeff_evolution(alpha, 0.6, 1.3, q, 1e-2)
            fine = poly_coeff_evolution(alpha, 0.6, 1.3, q, 1e-3)
            for index in ((1, 0), (0, 1)):
                omega = abs(coarse.rates[index])
                self.assertLessEqual(coarse.difference[index], omega ** 2 * 1e-4)
                self.assertLessEqual(fine.difference[index], omega ** 2 * 1e-6)
                self.assertAlmostEqual(coarse.difference[index] / fine.difference[index], 100.0, delta=1.0)

    def test_printed_y_solution_uses_alpha10(self):
        alpha = {(1, 0): polynomial_alpha((2.0,)), (0, 1): polynomial_alpha((1.0,))}
        default = poly_coeff_evolution(alpha, 1.0, 1.0, 1.1, 1.0)
        printed = poly_coeff_evolution(alpha, 1.0, 1.0, 1.1, 1.0,
                                       printed=PrintedForms(alpha10_in_y_solution=True))
        self.assertNotAlmostEqual(default.exponential[(0, 1)], printed.exponential[(0, 1)])

    def test_first_order_difference_grows(self):
        scenario = Scenario("poly_dynamics", 1.1, TimeGrid(1.0, 10), alpha={(1, 0): (1.0,), (0, 1): (0.5,)})
        report = cross_validate(scenario)
        self.assertEqual(report.engines, ["closed"])
        self.assertEqual(len(report.poly), 11)
        self.assertEqual(report.poly[0].difference[(1, 0)], 0.0)
        differences = [entry.difference[(1, 0)] for entry in report.poly]
        self.assertTrue(all(later > earlier for earlier, later in zip(differences[1:], differences[2:])))
        self.assertTrue(all(c.kind == FIRST_ORDER for c in report.comparisons))
        self.assertEqual(report.breaches(1e-12), [])
        self.assertTrue(any(note.startswith("f(t_end) = ") and "*x" in note for note in report.notes))

    def test_engine_selection(self):
        scenario = Scenario("poly_dynamics", 1.1, TimeGrid(1.0, 4), alpha={(1, 0): (1.0,)})
        self.assertEqual(cross_validate(scenario, engines=["closed"]).engines, ["closed"])
        for engines in (["ode"], ["closed", "liouville"]):
            with self.assertRaises(ConfigError):
                cross_validate(scenario, engines=engines)


if __name__ == '__main__':
    unittest.main()
