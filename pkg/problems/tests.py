import json
import tempfile
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from .conf import solver_setting
from .config import load_spec, spec_from_dict
from .examples import example_spec, sine_data
from .exceptions import ConfigurationError, InvalidRatioError
from .ratios import PHASE_HALF, PHASE_QUARTER, PHASE_ZERO, classify_ratio, vanishes_exactly
from .types import BoundarySchema, ProblemSpec, RatioClass, RatioValue, SinePolynomial
from .validation import UNTABULATED_WARNING, validate_problem


def zero_spec(n, schema, l=3.0, a=1.0):
    zero = SinePolynomial(terms=(), length_l=l)
    return ProblemSpec(
        n=n, l=l, a=a, ratio=RatioValue.exact(Fraction(a / l).limit_denominator()),
        schema=schema, phi=(zero,) * n, psi=(zero,) * n,
    )


TASK_2_CONFIG = {
    'order': 4,
    'l': 3.0,
    'a': 1.0,
    'ratio': {'num': 1, 'den': 3},
    'schema': {'gamma': 1, 'delta': 1, 'q': 1, 'chi': 0},
    'phi': [{'type': 'sine', 'terms': [[1, 0.5], [2, 0.25]]}, {'type': 'sine', 'terms': []}],
    'psi': [{'type': 'sine', 'terms': [[1, 1.0]]}, {'type': 'samples', 'values': [0.0] * 17}],
    'K': 8,
}


class ValidateProblemTests(SimpleTestCase):
    def test_task_one_schema_is_admissible(self):
        report = validate_problem(example_spec(1))
        self.assertTrue(report.ok)
        self.assertEqual(report.warnings, [])

    def test_q_above_n_is_rejected(self):
        report = validate_problem(zero_spec(2, BoundarySchema(gamma=1, delta=1, q=3, chi=0)))
        self.assertFalse(report.ok)
        self.assertTrue(any('q ≤ n' in violation for violation in report.violations))

    def test_second_order_steps_need_q_in_zero_one(self):
        report = validate_problem(zero_spec(2, BoundarySchema(gamma=2, delta=2, q=2, chi=0)))
        self.assertTrue(any('q ∈ {0,1}' in violation for violation in report.violations))

    def test_empty_boundary_data_is_a_violation(self):
        spec = example_spec(1).with_data((), ())
        report = validate_problem(spec)
        self.assertIn('empty boundary data', report.violations)

    def test_mixed_schema_is_accepted_with_warning(self):
        report = validate_problem(zero_spec(2, BoundarySchema(gamma=1, delta=2, q=0, chi=0)))
        self.assertTrue(report.ok)
        self.assertIn(UNTABULATED_WARNING, report.warnings)

    def test_ratio_must_match_side_lengths(self):
        spec = zero_spec(2, BoundarySchema(1, 1, 0, 0))
        spec = replace(spec, ratio=RatioValue.exact(1, 2))
        report = validate_problem(spec)
        self.assertTrue(any('does not match ratio' in violation for violation in report.violations))

    def test_ratio_match_tolerance_comes_from_settings(self):
        spec = replace(zero_spec(2, BoundarySchema(1, 1, 0, 0)), ratio=RatioValue.exact(1, 2))
        loose = {**settings.SPECTRAL_SOLVER, 'RATIO_MATCH_TOL': 0.5}
        with override_settings(SPECTRAL_SOLVER=loose):
            self.assertEqual(solver_setting('RATIO_MATCH_TOL'), 0.5)
            self.assertTrue(validate_problem(spec).ok)
        self.assertFalse(validate_problem(spec).ok)

    def test_exhaustive_schema_enumeration(self):
        for n in (1, 2, 3):
            for gamma in (1, 2):
                for delta in (1, 2):
                    for q in range(2 * n + 1):
                        for chi in range(2 * n + 1):
                            schema = BoundarySchema(gamma=gamma, delta=delta, q=q, chi=chi)
                            expected = max(q + gamma * (n - 1), chi + delta * (n - 1)) <= 2 * n - 1
                            with self.subTest(n=n, schema=schema):
                                self.assertEqual(validate_problem(zero_spec(n, schema)).ok, expected)


class ClassifyRatioTests(SimpleTestCase):
    def test_one_third_with_half_phase_is_separated(self):
        ratio_class = classify_ratio(RatioValue.exact(1, 3), PHASE_HALF)
        self.assertEqual(ratio_class.kind, RatioClass.RATIONAL_SEPARATED)
        self.assertEqual((ratio_class.s, ratio_class.t), (1, 3))

    def test_integer_ratio(self):
        self.assertEqual(classify_ratio(RatioValue.exact(2, 1), PHASE_HALF).kind, RatioClass.INTEGER)

    def test_quadratic_surd_is_algebraic_of_degree_two(self):
        for phase in (PHASE_ZERO, PHASE_QUARTER, PHASE_HALF):
            ratio_class = classify_ratio(RatioValue.from_surd(0, 1, 2), phase)
            self.assertEqual(ratio_class.kind, RatioClass.ALGEBRAIC_IRRATIONAL)
            self.assertEqual(ratio_class.degree, 2)

    def test_float_ratio_is_unknown(self):
        self.assertEqual(classify_ratio(RatioValue.approximate(0.3), PHASE_HALF).kind, RatioClass.FLOAT_UNKNOWN)

    def test_zero_phase_makes_every_fraction_resonant(self):
        ratio_class = classify_ratio(RatioValue.exact(1, 3), PHASE_ZERO)
        self.assertEqual(ratio_class.kind, RatioClass.RATIONAL_RESONANT)
        self.assertTrue(vanishes_exactly(3, Fraction(1, 3), PHASE_ZERO))

    def test_unreduced_fraction_classifies_like_reduced(self):
        self.assertEqual(
            classify_ratio(RatioValue.exact(3, 9), PHASE_HALF),
            classify_ratio(RatioValue.exact(1, 3), PHASE_HALF),
        )

    def test_nonpositive_ratio_is_rejected(self):
        with self.assertRaises(InvalidRatioError):
            classify_ratio(RatioValue.exact(-1, 3), PHASE_HALF)

    def test_surd_with_square_factor_is_normalised(self):
        ratio = RatioValue.from_surd(0, 1, 8)
        self.assertEqual(ratio.surd.d, 2)
        self.assertEqual(ratio.surd.q, 2)
        self.assertEqual(RatioValue.from_surd(1, 1, 4), RatioValue.exact(3))


class ConfigTests(SimpleTestCase):
    def test_task_two_config_loads(self):
        spec = spec_from_dict(TASK_2_CONFIG)
        self.assertEqual(spec.n, 2)
        self.assertEqual(spec.ratio.rational, Fraction(1, 3))
        self.assertEqual(spec.schema, BoundarySchema(gamma=1, delta=1, q=1, chi=0))
        self.assertEqual(spec.phi[0].coefficient(2), 0.25)
        self.assertEqual(spec.K, 8)
        self.assertTrue(validate_problem(spec).ok)

    def test_overrides_replace_config_values(self):
        self.assertEqual(spec_from_dict(TASK_2_CONFIG, overrides={'K': 20, 'tolerances': None}).K, 20)

    def test_odd_order_is_a_configuration_error(self):
        with self.assertRaises(ConfigurationError) as ctx:
            spec_from_dict({**TASK_2_CONFIG, 'order': 5})
        self.assertIn('order', ctx.exception.errors)

    def test_two_ratio_forms_are_rejected(self):
        with self.assertRaises(ConfigurationError):
            spec_from_dict({**TASK_2_CONFIG, 'ratio': {'num': 1, 'den': 3, 'float': 0.33}})

    def test_surd_ratio(self):
        spec = spec_from_dict({**TASK_2_CONFIG, 'ratio': {'surd': {'p': '0', 'q': '1', 'd': 2}}})
        self.assertEqual(spec.ratio.kind, RatioValue.QUADRATIC_SURD)

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_spec('/nonexistent/problem.json')

    def test_bundled_configs_are_valid(self):
        paths = sorted((Path(settings.BASE_DIR) / 'configs').glob('*.json'))
        self.assertTrue(paths)
        for path in paths:
            with self.subTest(config=path.name):
                self.assertTrue(validate_problem(load_spec(path)).ok)

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'task2.json'
            path.write_text(json.dumps(TASK_2_CONFIG), encoding='utf-8')
            self.assertEqual(load_spec(path).l, 3.0)


class SinePolynomialTests(SimpleTestCase):
    def test_arithmetic(self):
        f = sine_data([1, 2])
        g = SinePolynomial(terms=((2, 1.0), (3, 2.0)), length_l=3.0)
        combined = 2.0 * f + g
        self.assertEqual(combined.coefficient(1), 2.0)
        self.assertEqual(combined.coefficient(2), 2.0)
        self.assertEqual(combined.coefficient(3), 2.0)

    def test_modes_must_increase(self):
        with self.assertRaises(ValueError):
            SinePolynomial(terms=((2, 1.0), (1, 1.0)), length_l=3.0)
