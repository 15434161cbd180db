import math
import operator
from dataclasses import replace
from functools import reduce

import numpy as np
from django.test import SimpleTestCase

from modes.geometry import LOWER, UPPER
from problems.examples import TASK_SCHEMAS, example_spec, sine_data
from problems.exceptions import DomainError, NonorthogonalDataError
from problems.types import ProblemSpec, RatioValue, SampledFunction, SinePolynomial
from spectral.basis import mode_coefficients

from .growth import growth_probe
from .manufactured import manufactured_mode
from .series import build_solution, evaluate, evaluate_grid
from .smoothness import INCONCLUSIVE, SUFFICIENT_T2, SUFFICIENT_T3, decay_exponent, smoothness_check
from .verification import verify

UPPER_COEFFS = [1.0, 0.5, -0.3, 0.2]


def data_sup(spec, xs):
    return max(float(np.abs(f(xs)).max()) for f in spec.phi + spec.psi)


def task_two_data(phi_modes, psi_modes, K=8):
    return example_spec(
        2,
        phi=(sine_data(phi_modes), sine_data(phi_modes[::2])),
        psi=(sine_data(psi_modes), sine_data(psi_modes[-1:])),
        K=K,
    )


class ManufacturedSolutionTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.manufactured = manufactured_mode(1, UPPER_COEFFS)
        cls.solution = build_solution(cls.manufactured.spec, K=12)

    def test_coefficients_are_recovered(self):
        recovered = self.solution.coefficient_matrix()[0]
        expected = self.manufactured.coefficients
        self.assertLess(np.linalg.norm(recovered - expected), 1e-8 * np.linalg.norm(expected))
        for k in range(2, 13):
            self.assertFalse(np.any(self.solution.mode(k).coefficients))

    def test_residuals_are_at_roundoff(self):
        report = verify(self.solution, grid=(51, 51))
        scale = report.solution_sup
        self.assertGreater(scale, 0.0)
        self.assertLessEqual(report.pde_residual_sup, 1e-8 * scale)
        self.assertLessEqual(report.max_boundary_residual, 1e-8 * scale)
        self.assertLessEqual(report.gluing_residual_sup, 1e-8 * scale)
        self.assertTrue(math.isfinite(report.energy_sup))
        self.assertEqual(
            set(report.boundary_residual_sup), {'phi_0', 'phi_1', 'psi_0', 'psi_1', 'lateral'},
        )

    def test_pointwise_values(self):
        spec = self.manufactured.spec
        self.assertAlmostEqual(evaluate(self.solution, spec.l / 2, spec.a), float(spec.psi[0](spec.l / 2)), delta=1e-9)
        for x, y in ((0.7, 0.4), (2.1, -0.6), (1.5, 0.0)):
            self.assertAlmostEqual(evaluate(self.solution, x, y), float(self.manufactured.u(x, y)), delta=1e-9)

    def test_top_derivative_changes_sign_across_the_type_line(self):
        xs = np.linspace(0.0, 3.0, 13)
        upper = evaluate_grid(self.solution, xs, [0.0], dy_order=4, side=UPPER)
        lower = evaluate_grid(self.solution, xs, [0.0], dy_order=4, side=LOWER)
        np.testing.assert_allclose(upper, -lower, atol=1e-8 * float(np.abs(upper).max()))

    def test_grid_shape(self):
        self.assertEqual(evaluate_grid(self.solution, np.linspace(0, 3, 7), np.linspace(-1, 1, 5)).shape, (5, 7))


class BuildSolutionTests(SimpleTestCase):
    def test_zero_data_gives_zero_solution(self):
        solution = build_solution(example_spec(2, K=10))
        report = verify(solution, grid=(21, 21))
        self.assertEqual(report.solution_sup, 0.0)
        self.assertEqual(report.max_boundary_residual, 0.0)
        self.assertEqual(report.pde_residual_sup, 0.0)
        self.assertEqual(evaluate(solution, 1.0, -0.5), 0.0)

    def test_data_on_a_resonant_mode_is_rejected(self):
        spec = example_spec(1, phi=(sine_data([3]), sine_data([])), K=12)
        with self.assertRaisesMessage(NonorthogonalDataError, 'k=3'):
            build_solution(spec)

    def test_task_two_boundary_data_is_matched(self):
        spec = task_two_data([1, 2, 3, 4, 5], [1, 3, 5])
        solution = build_solution(spec)
        self.assertEqual(solution.resonant_modes, [])
        report = verify(solution, grid=(51, 51))
        xs = np.linspace(0.0, spec.l, 51)
        self.assertLessEqual(report.max_boundary_residual, 1e-6 * data_sup(spec, xs))
        self.assertTrue(math.isfinite(report.energy_sup))
        self.assertGreater(report.energy_sup, 0.0)

    def test_superposition(self):
        first = task_two_data([1, 2], [3])
        second = task_two_data([2, 4], [1, 5])
        combined = first.with_data(
            [f + g for f, g in zip(first.phi, second.phi)],
            [f + g for f, g in zip(first.psi, second.psi)],
        )
        xs, ys = np.linspace(0.0, 3.0, 11), np.linspace(-1.0, 1.0, 11)
        total = evaluate_grid(build_solution(combined), xs, ys)
        parts = evaluate_grid(build_solution(first), xs, ys) + evaluate_grid(build_solution(second), xs, ys)
        np.testing.assert_allclose(total, parts, atol=1e-10 * float(np.abs(parts).max()))

    def test_truncation_beyond_the_data_spectrum_changes_nothing(self):
        spec = task_two_data([1, 2, 3], [2])
        xs, ys = np.linspace(0.0, 3.0, 9), np.linspace(-1.0, 1.0, 9)
        short = evaluate_grid(build_solution(spec, K=5), xs, ys)
        long = evaluate_grid(build_solution(spec, K=50), xs, ys)
        np.testing.assert_allclose(long, short, atol=1e-12 * float(np.abs(short).max()))

    def test_orthogonal_data_solves_around_resonant_modes(self):
        spec = example_spec(1, phi=(sine_data([1, 2]), sine_data([4])), psi=(sine_data([5]), sine_data([])), K=6)
        solution = build_solution(spec)
        self.assertEqual(solution.resonant_modes, [3, 6])
        self.assertTrue(solution.mode(3).degenerate)
        self.assertFalse(np.any(solution.mode(3).coefficients))
        self.assertFalse(solution.mode(4).degenerate)

    def test_kernel_amplitude_selects_a_resonant_solution(self):
        spec = replace(example_spec(1, phi=(sine_data([1]), sine_data([])), K=6), kernel_amplitudes={3: (2.0,)})
        mode = build_solution(spec).mode(3)
        np.testing.assert_allclose(mode.scaled_coeffs, 2.0 * mode.kernel_basis[0])

    def test_resonant_modes_can_be_overridden(self):
        spec = example_spec(1, phi=(sine_data([1]), sine_data([])), K=6)
        solution = build_solution(spec, resonant_modes=[])
        self.assertEqual(solution.resonant_modes, [])
        self.assertFalse(solution.mode(3).degenerate)

    def test_domain_errors(self):
        solution = build_solution(task_two_data([1], [1], K=3))
        with self.assertRaises(DomainError):
            evaluate(solution, -0.1, 0.0)
        with self.assertRaises(DomainError):
            evaluate(solution, 1.0, 1.5)
        with self.assertRaises(DomainError):
            evaluate(solution, 1.0, 0.5, dx_order=5)


class GrowthProbeTests(SimpleTestCase):
    def test_task_one_blows_up_along_resonant_modes(self):
        rows = growth_probe(example_spec(1), [3, 6, 9, 12])
        logs = [row.log_magnitude for row in rows]
        self.assertTrue(all(b > a for a, b in zip(logs, logs[1:])))
        self.assertGreater(logs[-1] - logs[0], math.log(10.0))

    def test_task_two_stays_bounded(self):
        rows = growth_probe(example_spec(2), [3, 6, 9, 12])
        logs = [row.log_magnitude for row in rows]
        self.assertTrue(all(math.isfinite(value) for value in logs))
        self.assertFalse(any(row.degenerate for row in rows))
        self.assertLess(max(logs) - min(logs), math.log(10.0))

    def test_integer_ratio_stays_bounded(self):
        zero = SinePolynomial(terms=(), length_l=1.0)
        spec = ProblemSpec(
            n=2, l=1.0, a=1.0, ratio=RatioValue.exact(1), schema=TASK_SCHEMAS[2],
            phi=(zero, zero), psi=(zero, zero), K=10,
        )
        logs = [row.log_magnitude for row in growth_probe(spec, range(1, 11), workers=2)]
        self.assertTrue(all(math.isfinite(value) for value in logs))
        self.assertLess(max(logs[2:]) - min(logs[2:]), math.log(10.0))


class SmoothnessTests(SimpleTestCase):
    def test_sine_polynomial_data(self):
        report = smoothness_check(example_spec(2, phi=(sine_data([1]), sine_data([]))))
        self.assertEqual(report.verdict, SUFFICIENT_T2)
        self.assertEqual(report.threshold, 6)
        self.assertTrue(report.surrogate)

    def test_parabola_is_inconclusive_for_fourth_order(self):
        nodes = np.linspace(0.0, 3.0, 201)
        parabola = SampledFunction(samples=tuple(nodes * (3.0 - nodes)), length_l=3.0)
        report = smoothness_check(example_spec(2, phi=(parabola, sine_data([]))))
        self.assertEqual(report.verdict, INCONCLUSIVE)
        entry = report.entries[0]
        self.assertEqual(entry.name, 'phi_0')
        self.assertLess(entry.exponent, 6.0)

    def test_fast_decay_is_sufficient(self):
        smooth = SinePolynomial(terms=tuple((k, k ** -8.0) for k in range(1, 21)), length_l=3.0).sampled(201)
        report = smoothness_check(example_spec(2, phi=(smooth, sine_data([]))))
        self.assertEqual(report.verdict, SUFFICIENT_T2)
        self.assertAlmostEqual(report.entries[0].exponent, 8.0, delta=0.2)

    def test_irrational_ratio_raises_the_threshold(self):
        l = 1.0
        a = math.sqrt(2)
        smooth = SinePolynomial(terms=tuple((k, k ** -8.0) for k in range(1, 21)), length_l=l).sampled(201)
        zero = SinePolynomial(terms=(), length_l=l)
        spec = ProblemSpec(
            n=2, l=l, a=a, ratio=RatioValue.from_surd(0, 1, 2), schema=TASK_SCHEMAS[2],
            phi=(smooth, zero), psi=(zero, zero),
        )
        report = smoothness_check(spec, epsilon=0.5)
        self.assertEqual(report.threshold, 6.5)
        self.assertEqual(report.verdict, SUFFICIENT_T3)

    def test_decay_exponent_edge_cases(self):
        self.assertEqual(decay_exponent([0.0, 0.0, 0.0]), math.inf)
        self.assertTrue(math.isnan(decay_exponent([1.0, 0.5])))
        self.assertAlmostEqual(decay_exponent([k ** -3.0 for k in range(1, 40)]), 3.0, places=8)


class SeparatedRatioTests(SimpleTestCase):
    def separated_spec(self, ratio, l, a, k, K):
        zero = SinePolynomial(terms=(), length_l=l)
        return ProblemSpec(
            n=2, l=l, a=a, ratio=ratio, schema=TASK_SCHEMAS[2],
            phi=(sine_data([k], length_l=l), zero), psi=(zero, zero), K=K,
        )

    def assert_solved_on_mode(self, spec, k):
        solution = build_solution(spec)
        self.assertEqual(solution.resonant_modes, [])
        self.assertFalse(solution.mode(k).degenerate)
        self.assertTrue(np.any(solution.mode(k).coefficients))
        self.assertLess(solution.mode(k).residual, 1e-8)
        xs = np.linspace(0.0, spec.l, 51)
        report = verify(solution, grid=(51, 51))
        self.assertLessEqual(report.max_boundary_residual, 1e-6 * data_sup(spec, xs))

    def test_small_rational_separation_is_still_solvable(self):
        self.assert_solved_on_mode(self.separated_spec(RatioValue.exact(1, 21), 21.0, 1.0, 12, K=12), 12)

    def test_quadratic_surd_ratio_is_solvable(self):
        spec = self.separated_spec(RatioValue.from_surd(0, 1, 2), 1.0, math.sqrt(2), 6, K=16)
        self.assert_solved_on_mode(spec, 6)


class OddOrderTests(SimpleTestCase):
    def test_manufactured_odd_orders(self):
        for n, upper in ((1, [1.0, -0.5]), (3, [1.0, 0.5, -0.3, 0.2, 0.1, -0.4])):
            manufactured = manufactured_mode(2, upper, n=n)
            solution = build_solution(manufactured.spec, K=6)
            recovered = solution.coefficient_matrix()[1]
            expected = manufactured.coefficients
            report = verify(solution, grid=(31, 31))
            scale = report.solution_sup
            with self.subTest(n=n):
                self.assertEqual(solution.resonant_modes, [])
                self.assertLess(np.linalg.norm(recovered - expected), 1e-8 * np.linalg.norm(expected))
                self.assertLessEqual(report.pde_residual_sup, 1e-8 * scale)
                self.assertLessEqual(report.max_boundary_residual, 1e-8 * scale)
                self.assertLessEqual(report.gluing_residual_sup, 1e-8 * scale)


class StabilityTests(SimpleTestCase):
    def test_energy_is_stable_under_doubling_k(self):
        spec = task_two_data([1, 2, 3, 4, 5], [1, 3, 5])
        coarse = verify(build_solution(spec, K=8), grid=(41, 41)).energy_sup
        fine = verify(build_solution(spec, K=16), grid=(41, 41)).energy_sup
        self.assertTrue(math.isfinite(coarse))
        self.assertLessEqual(abs(fine - coarse), 1e-6 * abs(coarse))

    def test_mode_bound_stays_uniform_in_k(self):
        K = 12
        modes = range(1, K + 1)
        spec = example_spec(2, phi=(sine_data(modes), sine_data([])), psi=(sine_data(modes), sine_data([])), K=K)
        solution = build_solution(spec)
        coeffs = mode_coefficients(spec, K)
        ys = np.linspace(-spec.a, spec.a, 201)
        bounds = []
        for row in solution.denominator.rows:
            phi_k, psi_k = coeffs.at(row.k)
            data = float(np.abs(phi_k).sum() + np.abs(psi_k).sum())
            peak = float(np.abs(solution.mode(row.k).derivative(0, ys)).max())
            bounds.append(peak * abs(row.mantissa) / data)
        self.assertLessEqual(max(bounds), 10.0 * float(np.median(bounds)))

    def test_task_one_without_resonant_data_matches_the_exact_modes(self):
        parts = [manufactured_mode(k, UPPER_COEFFS, schema=TASK_SCHEMAS[1], K=6) for k in (1, 2, 4, 5)]
        first = parts[0].spec
        phi = [reduce(operator.add, (part.spec.phi[j] for part in parts)) for j in range(first.n)]
        psi = [reduce(operator.add, (part.spec.psi[j] for part in parts)) for j in range(first.n)]
        solution = build_solution(first.with_data(phi, psi))
        self.assertEqual(solution.resonant_modes, [3, 6])

        xs, ys = np.linspace(0.0, first.l, 13), np.linspace(-first.a, first.a, 11)
        computed = evaluate_grid(solution, xs, ys)
        exact = np.array([[sum(float(part.u(x, y)) for part in parts) for x in xs] for y in ys])
        np.testing.assert_allclose(computed, exact, atol=1e-10 * float(np.abs(exact).max()))
