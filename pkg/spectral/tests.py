import math

import numpy as np
from django.test import SimpleTestCase
from scipy.integrate import simpson

from problems.examples import example_spec, sine_data
from problems.exceptions import DomainError, UnderResolvedModeError
from problems.types import SampledFunction, SinePolynomial

from .basis import (
    eigenfunction_derivative, eigenfunction_value, mode_coefficients, nyquist_mode, sine_coefficient,
)


def parabola_samples(count, l=3.0):
    nodes = np.linspace(0.0, l, count)
    return SampledFunction(samples=tuple(nodes * (l - nodes)), length_l=l)


class EigenfunctionTests(SimpleTestCase):
    def test_values(self):
        self.assertAlmostEqual(eigenfunction_value(1, 1.5, 3.0), math.sqrt(2.0 / 3.0), places=14)
        self.assertAlmostEqual(eigenfunction_value(2, 2.5, 5.0), 0.0, places=14)
        self.assertAlmostEqual(eigenfunction_value(3, 1.0, 3.0), 0.0, places=14)

    def test_point_outside_interval(self):
        with self.assertRaises(DomainError):
            eigenfunction_value(1, 3.5, 3.0)

    def test_second_derivative_is_minus_lambda_squared(self):
        xs = np.linspace(0.0, 3.0, 7)
        lam = math.pi * 4 / 3.0
        np.testing.assert_allclose(
            eigenfunction_derivative(4, xs, 3.0, 2),
            -lam ** 2 * eigenfunction_derivative(4, xs, 3.0),
            atol=1e-12,
        )

    def test_orthonormality(self):
        l = 3.0
        for j in range(1, 21):
            for k in range(j, 21):
                nodes = np.linspace(0.0, l, 400 * max(j, k) + 1)
                product = eigenfunction_derivative(j, nodes, l) * eigenfunction_derivative(k, nodes, l)
                with self.subTest(j=j, k=k):
                    self.assertAlmostEqual(simpson(product, x=nodes), float(j == k), delta=1e-10)


class SineCoefficientTests(SimpleTestCase):
    def test_sine_polynomial_is_exact(self):
        f = SinePolynomial(terms=((1, 1.0),), length_l=3.0)
        self.assertEqual(sine_coefficient(f, 1, 3.0), math.sqrt(1.5))
        self.assertEqual(sine_coefficient(f, 2, 3.0), 0.0)

    def test_parabola_first_coefficient(self):
        l = 3.0
        expected = math.sqrt(2.0 / l) * 4 * l ** 3 / math.pi ** 3
        self.assertAlmostEqual(sine_coefficient(parabola_samples(201), 1, l), expected, delta=1e-6)

    def test_sampled_sine_polynomial_matches_exact(self):
        f = SinePolynomial(terms=tuple((k, 1.0 / k ** 2) for k in range(1, 21)), length_l=3.0)
        sampled = f.sampled(1001)
        for k in range(1, 21):
            with self.subTest(k=k):
                self.assertAlmostEqual(sine_coefficient(sampled, k, 3.0), sine_coefficient(f, k, 3.0), delta=1e-8)

    def test_linearity(self):
        f, g = sine_data([1, 3]), sine_data([2, 3], scale=2.0)
        combined = 3.0 * f + g
        for k in range(1, 5):
            self.assertAlmostEqual(
                sine_coefficient(combined, k, 3.0),
                3.0 * sine_coefficient(f, k, 3.0) + sine_coefficient(g, k, 3.0),
                places=14,
            )

    def test_under_resolved_mode(self):
        samples = parabola_samples(17)
        self.assertEqual(nyquist_mode(samples), 4)
        sine_coefficient(samples, 4, 3.0)
        with self.assertRaisesMessage(UnderResolvedModeError, 'under-resolved mode'):
            sine_coefficient(samples, 5, 3.0)


class ModeCoefficientTests(SimpleTestCase):
    def test_table_shape_and_entries(self):
        spec = example_spec(2, phi=(sine_data([1, 2]), sine_data([])), psi=(sine_data([3]), sine_data([])))
        coeffs = mode_coefficients(spec, 5)
        self.assertEqual(coeffs.phi.shape, (2, 5))
        self.assertEqual(coeffs.K, 5)
        phi_2, psi_2 = coeffs.at(2)
        self.assertAlmostEqual(phi_2[0], 0.5 * math.sqrt(1.5))
        self.assertEqual(psi_2[0], 0.0)
        self.assertAlmostEqual(coeffs.data_norm(), math.sqrt(1.5))
