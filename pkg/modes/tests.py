import cmath
import math
from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from problems.examples import example_spec, sine_data
from problems.exceptions import ConfigurationError, DomainError, NonorthogonalDataError
from problems.types import BoundarySchema
from spectral.basis import mode_coefficients

from .geometry import LOWER, UPPER, basis_derivative, basis_value, compute_root_geometry
from .parallel import map_modes
from .system import ScaledLinearSystem, assemble_from_traces, assemble_mode_system, scaled_determinant, solve_mode

TASK_1 = BoundarySchema(gamma=1, delta=1, q=0, chi=0)
TASK_2 = BoundarySchema(gamma=1, delta=1, q=1, chi=0)


def direct_unscaled_matrix(n, k, l, a, schema):
    """The coupling matrix built from complex exponentials e^(r y), r = lam e^(i theta)."""
    geom = compute_root_geometry(n, k, l)
    lam = geom.lam

    def column_values(side_turns, order, y):
        values = []
        for turn in side_turns:
            root = lam * cmath.exp(1j * math.pi * float(turn))
            value = root ** order * cmath.exp(root * y) / lam ** order
            values.append(value.real)
            if abs(root.imag) > 1e-12 * lam:
                values.append(value.imag)
        return values

    rows = []
    for order in schema.upper_orders(n):
        rows.append(column_values(geom.upper_turns, order, a) + [0.0] * (2 * n))
    for order in schema.lower_orders(n):
        rows.append([0.0] * (2 * n) + column_values(geom.lower_turns, order, -a))
    for t in range(2 * n):
        upper = column_values(geom.upper_turns, t, 0.0)
        lower = column_values(geom.lower_turns, t, 0.0)
        rows.append(upper + [-value for value in lower])
    return np.array(rows)


def zero_system(schema, k, n=2, l=3.0, a=1.0):
    zeros = np.zeros(n)
    return assemble_from_traces(n, l, a, schema, k, zeros, zeros)


class RootGeometryTests(SimpleTestCase):
    def test_fourth_order_angles(self):
        geom = compute_root_geometry(2, 5, 3.0)
        np.testing.assert_allclose(geom.upper_angles, [math.pi / 4, 3 * math.pi / 4])
        self.assertEqual(geom.lower_angles[:2], (0.0, math.pi / 2))

    def test_alpha_at_mode_three(self):
        geom = compute_root_geometry(2, 3, 3.0)
        self.assertAlmostEqual(geom.alpha[0], math.pi * math.sqrt(2) / 2, places=12)

    def test_neutral_lower_exponent_is_exactly_zero(self):
        for k in (1, 7, 40):
            geom = compute_root_geometry(2, k, 3.0)
            self.assertEqual(geom.mu[1], 0.0)
            self.assertEqual(geom.nu[1], geom.lam)

    def test_even_order_closed_forms(self):
        for m in (1, 2, 3):
            geom = compute_root_geometry(2 * m, 1, 1.0)
            self.assertEqual(geom.upper_angles, tuple(math.pi / (4 * m) * (1 + 2 * p) for p in range(2 * m)))
            self.assertEqual(geom.lower_angles, tuple(math.pi * s / (2 * m) for s in range(2 * m + 1)))
            for p in range(m):
                self.assertGreater(geom.alpha[p], 0.0)

    def test_every_order_has_2n_functions_per_side(self):
        for n in range(1, 6):
            geom = compute_root_geometry(n, 2, 3.0)
            self.assertEqual(len(geom.upper_basis), 2 * n)
            self.assertEqual(len(geom.lower_basis), 2 * n)


class BasisValueTests(SimpleTestCase):
    def test_examples(self):
        geom = compute_root_geometry(2, 3, 3.0)
        self.assertEqual(basis_value(geom, UPPER, 0, 0, 0.0), 1.0)
        self.assertAlmostEqual(basis_value(geom, UPPER, 0, 1, 0.0), math.pi * math.sqrt(2) / 2, places=12)
        lam = geom.lam
        self.assertAlmostEqual(basis_value(geom, LOWER, 0, 2, -1.0), lam ** 2 * math.exp(-lam), places=12)

    def test_side_mismatch(self):
        geom = compute_root_geometry(2, 1, 3.0)
        with self.assertRaises(DomainError):
            basis_value(geom, UPPER, 0, 0, -0.5)
        with self.assertRaises(DomainError):
            basis_value(geom, LOWER, 0, 0, 0.5)
        with self.assertRaises(DomainError):
            basis_value(geom, LOWER, 0, 5, -0.5)

    def test_derivative_consistency(self):
        rng = np.random.default_rng(7)
        for n in (1, 2, 3):
            for k in (1, 4, 10):
                geom = compute_root_geometry(n, k, 3.0)
                for side, sign in ((UPPER, 1.0), (LOWER, -1.0)):
                    ys = sign * rng.uniform(0.05, 1.0, size=10)
                    for function in geom.side_basis(side):
                        for t in range(1, 2 * n + 1):
                            for y in ys:
                                h = 1e-5 * (1 + abs(y))
                                difference = (
                                    basis_derivative(function, geom.lam, t - 1, y + h)
                                    - basis_derivative(function, geom.lam, t - 1, y - h)
                                ) / (2 * h)
                                exact = basis_derivative(function, geom.lam, t, y)
                                scale = geom.lam ** t * math.exp(geom.lam * abs(y))
                                self.assertLess(abs(difference - exact), 1e-5 * scale)

    def test_basis_solves_the_mode_equation(self):
        for n in (1, 2, 3):
            geom = compute_root_geometry(n, 3, 3.0)
            lam = geom.lam
            for side, y, sgn in ((UPPER, 0.4, 1.0), (LOWER, -0.4, -1.0)):
                for function in geom.side_basis(side):
                    top = basis_derivative(function, lam, 2 * n, y)
                    value = basis_derivative(function, lam, 0, y)
                    residual = top + (-1) ** n * sgn * lam ** (2 * n) * value
                    self.assertLess(abs(residual), 1e-9 * lam ** (2 * n) * math.exp(lam * abs(y)))


class AssemblyTests(SimpleTestCase):
    def test_zero_data_gives_zero_rhs(self):
        system = assemble_mode_system(example_spec(2, K=5), mode_coefficients(example_spec(2, K=5)), 3)
        self.assertEqual(system.size, 8)
        self.assertFalse(np.any(system.rhs))

    def test_entries_stay_bounded(self):
        for k in (1, 10, 100, 1000, 10_000):
            system = zero_system(TASK_1, k)
            self.assertTrue(np.all(np.isfinite(system.matrix)))
            self.assertLessEqual(np.abs(system.matrix).max(), 2.0)
            mantissa, log_scale = scaled_determinant(system)
            self.assertTrue(math.isfinite(mantissa))
            self.assertTrue(math.isfinite(log_scale))

    def test_unscaled_matrix_matches_complex_exponential_assembly(self):
        for schema in (TASK_1, TASK_2):
            for k in (1, 2):
                system = zero_system(schema, k)
                np.testing.assert_allclose(
                    system.unscaled_matrix(), direct_unscaled_matrix(2, k, 3.0, 1.0, schema), atol=1e-12,
                )

    def test_scaled_determinant_matches_direct_determinant(self):
        for schema in (TASK_1, TASK_2):
            for k in (1, 2, 4):
                mantissa, log_scale = scaled_determinant(zero_system(schema, k))
                direct = np.linalg.det(direct_unscaled_matrix(2, k, 3.0, 1.0, schema))
                with self.subTest(schema=schema, k=k):
                    self.assertAlmostEqual(abs(mantissa) * math.exp(log_scale) / abs(direct), 1.0, delta=1e-9)

    def test_rescaled_data_leaves_the_determinant_alone(self):
        def spec_with(scale):
            return example_spec(2, phi=(sine_data([1, 2, 4], scale=scale), sine_data([2], scale=scale)),
                                psi=(sine_data([1, 4], scale=scale), sine_data([], scale=scale)), K=5)

        base, scaled = spec_with(1.0), spec_with(7.0)
        for k in (1, 2, 4):
            original = assemble_mode_system(base, mode_coefficients(base), k)
            rescaled = assemble_mode_system(scaled, mode_coefficients(scaled), k)
            original_mantissa, original_log = scaled_determinant(original)
            mantissa, log_scale = scaled_determinant(rescaled)
            with self.subTest(k=k):
                self.assertAlmostEqual(abs(mantissa), abs(original_mantissa), delta=1e-9 * abs(original_mantissa))
                self.assertEqual(log_scale, original_log)
                self.assertAlmostEqual(rescaled.rhs_scale - original.rhs_scale, math.log(7.0), places=12)
                np.testing.assert_allclose(rescaled.full_rhs, 7.0 * original.full_rhs, rtol=1e-12)

    def test_identity_system(self):
        system = ScaledLinearSystem(k=1, matrix=np.eye(2), column_scales=np.zeros(2), rhs=np.zeros(2))
        self.assertEqual(scaled_determinant(system), (1.0, 0.0))

    def test_task_one_resonance_is_small_in_the_mantissa(self):
        typical = np.mean([abs(scaled_determinant(zero_system(TASK_1, k))[0]) for k in (2, 4)])
        resonant = abs(scaled_determinant(zero_system(TASK_1, 3))[0])
        self.assertLessEqual(resonant, 0.1 * typical)

    def test_task_two_mode_three_is_separated(self):
        typical = np.mean([abs(scaled_determinant(zero_system(TASK_2, k))[0]) for k in (2, 4)])
        self.assertGreater(abs(scaled_determinant(zero_system(TASK_2, 3))[0]), 0.25 * typical)

    def test_invalid_spec_is_rejected(self):
        spec = replace(example_spec(1, K=5), schema=BoundarySchema(gamma=1, delta=1, q=3, chi=0))
        with self.assertRaises(ConfigurationError):
            assemble_mode_system(spec, mode_coefficients(example_spec(1, K=5)), 1)


class SolveModeTests(SimpleTestCase):
    def test_manufactured_coefficients_are_recovered(self):
        rng = np.random.default_rng(3)
        for schema in (TASK_1, TASK_2):
            system = zero_system(schema, 2)
            expected = rng.normal(size=8)
            system = replace(system, rhs=system.unscaled_matrix() @ expected)
            solution = solve_mode(system)
            self.assertFalse(solution.degenerate)
            error = np.linalg.norm(solution.coefficients - expected) / np.linalg.norm(expected)
            self.assertLess(error, 1e-8)
            self.assertLess(solution.residual, 1e-9)

    def test_homogeneous_system_has_zero_solution(self):
        solution = solve_mode(zero_system(TASK_2, 4))
        self.assertFalse(np.any(solution.coefficients))
        self.assertEqual(solution.kernel_basis, ())

    def test_solution_is_linear_in_the_data(self):
        first = assemble_from_traces(2, 3.0, 1.0, TASK_2, 2, [1.0, 0.5], [0.2, -1.0])
        second = assemble_from_traces(2, 3.0, 1.0, TASK_2, 2, [0.0, 2.0], [1.0, 1.0])
        both = assemble_from_traces(2, 3.0, 1.0, TASK_2, 2, [2.0, 3.0], [1.4, -1.0])
        combined = 2.0 * solve_mode(first).coefficients + solve_mode(second).coefficients
        np.testing.assert_allclose(solve_mode(both).coefficients, combined, rtol=1e-10, atol=1e-12)

    def test_resonant_mode_with_orthogonal_data(self):
        solution = solve_mode(zero_system(TASK_1, 3), resonant=True)
        self.assertTrue(solution.degenerate)
        self.assertEqual(len(solution.kernel_basis), 1)
        self.assertAlmostEqual(np.linalg.norm(solution.kernel_basis[0]), 1.0)
        self.assertFalse(np.any(solution.coefficients))

    def test_resonant_mode_with_data_on_it(self):
        system = assemble_from_traces(2, 3.0, 1.0, TASK_1, 3, [1.0, 0.0], [0.0, 0.0])
        with self.assertRaisesMessage(NonorthogonalDataError, 'k=3'):
            solve_mode(system, resonant=True)

    def test_kernel_amplitude_is_applied(self):
        solution = solve_mode(zero_system(TASK_1, 3), resonant=True, kernel_amplitudes=(2.0,))
        np.testing.assert_allclose(solution.scaled_coeffs, 2.0 * solution.kernel_basis[0])

    def test_rank_deficient_system(self):
        matrix = np.array([[1.0, 1.0], [1.0, 1.0]])
        singular = ScaledLinearSystem(k=5, matrix=matrix, column_scales=np.zeros(2), rhs=np.array([1.0, 1.0]))
        solution = solve_mode(singular)
        self.assertTrue(solution.degenerate)
        np.testing.assert_allclose(solution.scaled_coeffs, [0.5, 0.5])
        kernel = solution.kernel_basis[0]
        self.assertAlmostEqual(np.linalg.norm(kernel), 1.0)
        self.assertLess(np.linalg.norm(matrix @ kernel), 1e-8)

        with self.assertRaises(NonorthogonalDataError):
            solve_mode(replace(singular, rhs=np.array([1.0, 0.0])))

    def test_mode_derivative_respects_gluing(self):
        system = assemble_from_traces(2, 3.0, 1.0, TASK_2, 2, [1.0, 0.5], [0.2, -1.0])
        solution = solve_mode(system)
        for t in range(4):
            upper = solution.derivative(t, 0.0, side=UPPER)
            lower = solution.derivative(t, 0.0, side=LOWER)
            self.assertAlmostEqual(float(upper), float(lower), delta=1e-10)
        self.assertAlmostEqual(float(solution.derivative(0, 1.0)), 0.2, delta=1e-10)


class MapModesTests(SimpleTestCase):
    def test_results_follow_input_order(self):
        ks = list(range(1, 30))
        self.assertEqual(map_modes(lambda k: k * k, ks, workers=4), [k * k for k in ks])
        self.assertEqual(map_modes(lambda k: -k, ks, workers=1), [-k for k in ks])

    def test_parallel_solves_match_serial(self):
        spec = example_spec(2, phi=(sine_data([1, 2, 3]), sine_data([2])), K=6)
        coeffs = mode_coefficients(spec)

        def solve(k):
            return solve_mode(assemble_mode_system(spec, coeffs, k)).coefficients

        serial = map_modes(solve, range(1, 7), workers=1)
        threaded = map_modes(solve, range(1, 7), workers=3)
        for a, b in zip(serial, threaded):
            np.testing.assert_array_equal(a, b)
