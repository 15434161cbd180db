import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from modes.system import ScaledLinearSystem, scaled_determinant, singular_value_ratio
from problems.examples import TASK_SCHEMAS, example_spec
from problems.exceptions import AsymptoticsError, InvalidRatioError
from problems.ratios import PHASE_HALF, PHASE_QUARTER, PHASE_THREE_QUARTERS, PHASE_ZERO, PHASES, classify_ratio
from problems.types import BoundarySchema, ProblemSpec, RatioClass, RatioValue, SinePolynomial, Tolerances

from .forms import DenominatorForm, UNTABULATED, expected_denominator
from .resonance import (
    ModeDeterminant, asymptotic_constant, denominator_report, detect_resonant_modes, find_degenerate_modes,
    mode_determinant,
)
from .scan import DiophantineScanConfig, diophantine_scan
from .separation import SeparationBound, separation_bound


def ratio_spec(ratio, l, a, n=2, K=16):
    """Zero-data problem with the second model schema on (0,l) x (-a,a)."""
    zero = SinePolynomial(terms=(), length_l=l)
    return ProblemSpec(
        n=n, l=l, a=a, ratio=ratio, schema=TASK_SCHEMAS[2], phi=(zero,) * n, psi=(zero,) * n, K=K,
    )


class DenominatorFormTests(SimpleTestCase):
    def test_fourth_order_examples(self):
        self.assertEqual(expected_denominator(4, BoundarySchema(1, 1, 0, 0)).phase, PHASE_ZERO)
        self.assertEqual(expected_denominator(4, BoundarySchema(1, 1, 1, 0)).phase, PHASE_HALF)
        self.assertEqual(expected_denominator(4, BoundarySchema(2, 2, 0, 0)).phase, PHASE_QUARTER)
        self.assertEqual(expected_denominator(4, BoundarySchema(2, 2, 1, 0)).phase, PHASE_THREE_QUARTERS)

    def test_table_depends_on_order_mod_eight(self):
        schema = BoundarySchema(1, 1, 1, 0)
        self.assertEqual(expected_denominator(12, schema), expected_denominator(4, schema))
        self.assertEqual(expected_denominator(8, schema).phase, PHASE_ZERO)
        self.assertEqual(expected_denominator(2, schema).phase, PHASE_THREE_QUARTERS)

    def test_mixed_schema_is_untabulated(self):
        form = expected_denominator(4, BoundarySchema(1, 2, 0, 0))
        self.assertIs(form, UNTABULATED)
        with self.assertRaises(ValueError):
            form.value(1, 1 / 3)

    def test_exact_value_vanishes_exactly(self):
        form = DenominatorForm(phase=PHASE_ZERO)
        self.assertEqual(form.exact_value(3, Fraction(1, 3)), 0.0)
        self.assertAlmostEqual(form.exact_value(1, Fraction(1, 3)), math.sqrt(3) / 2, places=15)


class SeparationBoundTests(SimpleTestCase):
    def test_one_third_with_half_phase(self):
        bound = separation_bound(classify_ratio(RatioValue.exact(1, 3), PHASE_HALF), DenominatorForm(PHASE_HALF))
        self.assertAlmostEqual(bound.delta, 0.5, places=14)
        self.assertEqual(bound.kind, SeparationBound.EXACT_RATIONAL_MIN)
        self.assertTrue(bound.separated)

    def test_integer_ratio(self):
        bound = separation_bound(classify_ratio(RatioValue.exact(1), PHASE_HALF), DenominatorForm(PHASE_HALF))
        self.assertEqual(bound.delta, 1.0)
        self.assertEqual(bound.kind, SeparationBound.INTEGER_CASE)

    def test_two_fifths(self):
        bound = separation_bound(classify_ratio(RatioValue.exact(2, 5), PHASE_HALF), DenominatorForm(PHASE_HALF))
        self.assertAlmostEqual(bound.delta, math.cos(2 * math.pi / 5), places=14)

    def test_zero_phase_is_resonant(self):
        bound = separation_bound(classify_ratio(RatioValue.exact(1, 3), PHASE_ZERO), DenominatorForm(PHASE_ZERO))
        self.assertEqual(bound.delta, 0.0)
        self.assertFalse(bound.separated)

    def test_bound_is_zero_exactly_when_classified_resonant(self):
        for t in range(2, 101):
            for phase in PHASES:
                ratio_class = classify_ratio(RatioValue.exact(1, t), phase)
                bound = separation_bound(ratio_class, DenominatorForm(phase))
                with self.subTest(t=t, phase=phase):
                    if ratio_class.kind == RatioClass.RATIONAL_RESONANT:
                        self.assertEqual(bound.delta, 0.0)
                    else:
                        self.assertGreaterEqual(bound.delta, 1 / (2 * t) - 1e-15)

    def test_bound_matches_brute_force_over_two_periods(self):
        for t in range(2, 51):
            for s in range(1, t):
                if math.gcd(s, t) != 1:
                    continue
                tau = Fraction(s, t)
                for phase in PHASES:
                    form = DenominatorForm(phase)
                    bound = separation_bound(classify_ratio(RatioValue.exact(s, t), phase), form)
                    brute = min(abs(form.exact_value(k, tau)) for k in range(1, 2 * t + 1))
                    self.assertAlmostEqual(bound.delta, brute, delta=1e-12)

    def test_irrational_ratio_is_rejected(self):
        ratio_class = classify_ratio(RatioValue.from_surd(0, 1, 2), PHASE_ZERO)
        with self.assertRaises(InvalidRatioError):
            separation_bound(ratio_class, DenominatorForm(PHASE_ZERO))


class DiophantineScanTests(SimpleTestCase):
    def setUp(self):
        self.sqrt2 = RatioValue.from_surd(0, 1, 2)
        self.form = DenominatorForm(PHASE_ZERO)

    def test_sqrt_two_scan(self):
        result = diophantine_scan(self.sqrt2, self.form, DiophantineScanConfig(epsilon=0.5, k_max=1000))
        self.assertGreater(result.N_hat, 0.0)
        self.assertEqual(result.table.shape, (1000, 3))
        self.assertEqual(result.N_hat, result.table[:, 2].min())
        self.assertEqual(result.worst_k, int(np.argmin(result.table[:, 2])) + 1)
        expected = abs(math.sin(2 * math.pi * math.sqrt(2))) * 2 ** 1.5
        self.assertAlmostEqual(result.table[1, 2], expected, delta=1e-12)

    def test_sqrt_two_full_range(self):
        result = diophantine_scan(self.sqrt2, self.form, DiophantineScanConfig(epsilon=0.5, k_max=10_000))
        self.assertGreater(result.N_hat, 0.0)
        self.assertEqual(result.table.shape, (10_000, 3))
        self.assertTrue(np.all(result.table[:, 2] >= result.N_hat))
        self.assertGreater(result.table[:, 1].min(), 0.0)

    def test_scan_gives_an_empirical_separation_bound(self):
        result = diophantine_scan(self.sqrt2, self.form, DiophantineScanConfig(k_max=200))
        bound = result.separation_bound()
        self.assertEqual(bound.kind, SeparationBound.EMPIRICAL_SCAN)
        self.assertEqual(bound.delta, result.table[:, 1].min())
        self.assertAlmostEqual(bound.delta, abs(math.sin(math.pi * bound.witness_k2 * math.sqrt(2))), delta=1e-9)
        self.assertTrue(bound.separated)

    def test_integer_shift_leaves_magnitudes_unchanged(self):
        cfg = DiophantineScanConfig(k_max=500)
        shifted = diophantine_scan(RatioValue.from_surd(1, 1, 2), self.form, cfg)
        plain = diophantine_scan(self.sqrt2, self.form, cfg)
        np.testing.assert_allclose(shifted.table[:, 1], plain.table[:, 1], atol=1e-9)

    def test_rational_ratio_is_rejected(self):
        with self.assertRaises(InvalidRatioError):
            diophantine_scan(RatioValue.exact(1, 3), self.form)

    def test_float_one_third_collapses(self):
        result = diophantine_scan(RatioValue.approximate(1 / 3), self.form, DiophantineScanConfig(k_max=100))
        self.assertLess(result.N_hat, 1e-12)
        self.assertEqual(result.worst_k % 3, 0)

    def test_config_bounds(self):
        for epsilon in (0.0, 1.0, -0.5):
            with self.assertRaises(ValueError):
                DiophantineScanConfig(epsilon=epsilon)
        with self.assertRaises(ValueError):
            DiophantineScanConfig(k_max=0)


class ResonanceDetectionTests(SimpleTestCase):
    def test_task_one_low_modes(self):
        self.assertEqual(detect_resonant_modes(example_spec(1), 12), [3, 6, 9, 12])

    def test_resonance_tolerance_only_cross_checks_the_prediction(self):
        spec = replace(example_spec(1), tolerances=Tolerances(resonance_tol=0.0))
        report = denominator_report(spec, 12)
        self.assertEqual(report.resonant_modes, [3, 6, 9, 12])
        self.assertEqual(report.disagreements, [3, 6, 9, 12])

    def test_separated_rational_with_small_delta_has_no_resonances(self):
        report = denominator_report(ratio_spec(RatioValue.exact(1, 21), l=21.0, a=1.0), 12)
        self.assertLess(min(abs(row.expected_delta4) for row in report.rows), 0.1)
        self.assertEqual(report.resonant_modes, [])
        self.assertTrue(all(row.predicted is False for row in report.rows))

    def test_quadratic_surd_has_no_resonances(self):
        report = denominator_report(ratio_spec(RatioValue.from_surd(0, 1, 2), l=1.0, a=math.sqrt(2)), 16)
        self.assertEqual(report.resonant_modes, [])
        self.assertTrue(all(row.predicted is None for row in report.rows))
        self.assertEqual(report.disagreements, [])

    def test_low_modes_of_other_orders_follow_the_prediction(self):
        for n, expected in ((1, 1), (3, 3)):
            spec = ratio_spec(RatioValue.exact(1, 4), l=4.0, a=1.0, n=n)
            report = denominator_report(spec, 8)
            with self.subTest(n=n):
                self.assertIn(expected, report.resonant_modes)
                self.assertEqual(report.resonant_modes, [row.k for row in report.rows if row.predicted])

    def test_task_one_full_table(self):
        report = denominator_report(example_spec(1), 60)
        self.assertEqual(report.resonant_modes, list(range(3, 61, 3)))
        self.assertEqual(report.disagreements, [])
        self.assertEqual(report.min_abs_delta4, 0.0)

    def test_task_two_has_no_resonances(self):
        report = denominator_report(example_spec(2), 60)
        self.assertEqual(report.resonant_modes, [])
        self.assertAlmostEqual(report.min_abs_delta4, 0.5, places=12)

    def test_task_two_mantissas_stay_separated(self):
        report = denominator_report(example_spec(2), 60)
        magnitudes = [abs(row.mantissa) for row in report.rows]
        self.assertGreaterEqual(min(magnitudes), 0.25 * float(np.median(magnitudes)))

    def test_task_one_mode_three_is_small(self):
        spec = example_spec(1)
        typical = np.mean([abs(mode_determinant(spec, k).mantissa) for k in (2, 4)])
        self.assertLessEqual(abs(mode_determinant(spec, 3).mantissa), 0.05 * typical)

    def test_mantissa_depends_only_on_the_side_ratio(self):
        spec = example_spec(1)
        stretched = replace(spec, l=6.0, a=2.0)
        for k in (1, 3, 5):
            original = mode_determinant(spec, k)
            scaled = mode_determinant(stretched, k)
            self.assertAlmostEqual(scaled.mantissa, original.mantissa, delta=1e-10 * abs(original.mantissa))
            self.assertAlmostEqual(scaled.log_scale, original.log_scale, places=12)

    def test_find_degenerate_modes(self):
        singular = ScaledLinearSystem(k=4, matrix=np.ones((2, 2)), column_scales=np.zeros(2), rhs=np.zeros(2))
        regular = ScaledLinearSystem(k=5, matrix=np.eye(2), column_scales=np.zeros(2), rhs=np.zeros(2))
        determinants = [
            ModeDeterminant(system.k, *scaled_determinant(system), singular_value_ratio(system))
            for system in (singular, regular)
        ]
        self.assertEqual(find_degenerate_modes(determinants, 1e-8), [4])

    def test_parallel_report_matches_serial(self):
        serial = denominator_report(example_spec(1), 15, workers=1)
        threaded = denominator_report(example_spec(1), 15, workers=4)
        self.assertEqual(serial.rows, threaded.rows)


class AsymptoticConstantTests(SimpleTestCase):
    def test_task_two_constant_settles(self):
        m_hat, dispersion = asymptotic_constant(example_spec(2), range(30, 61))
        self.assertNotEqual(m_hat, 0.0)
        self.assertLessEqual(dispersion, 0.05)

    def test_task_one_halves_agree(self):
        spec = example_spec(1)
        m_all, dispersion = asymptotic_constant(spec, range(30, 61))
        self.assertLessEqual(dispersion, 0.05)
        m_low, _ = asymptotic_constant(spec, range(15, 38))
        m_high, _ = asymptotic_constant(spec, range(38, 61))
        self.assertLessEqual(abs(m_low - m_high), 0.2 * abs(m_high))

    def test_no_admissible_mode(self):
        with self.assertRaisesMessage(AsymptoticsError, 'no admissible k'):
            asymptotic_constant(example_spec(1), [3, 6])

    def test_untabulated_schema(self):
        spec = replace(example_spec(1), schema=BoundarySchema(1, 2, 0, 0))
        with self.assertRaises(AsymptoticsError):
            asymptotic_constant(spec, range(1, 5))
