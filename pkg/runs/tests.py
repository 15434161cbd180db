import csv
import json
import math
import shutil
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from problems.exceptions import NonorthogonalDataError

from .management.commands.reproduce_example import SOLVABLE_VERDICT, UNSOLVABLE_VERDICT
from .management.commands.solve import parse_grid
from .models import SolveRun
from .reports import format_number, write_csv
from .run_logger import RunLogger

SCHEMA_1 = {'gamma': 1, 'delta': 1, 'q': 0, 'chi': 0}
SCHEMA_2 = {'gamma': 1, 'delta': 1, 'q': 1, 'chi': 0}


def problem_config(schema, phi, psi, l=3.0, a=1.0, ratio=None, K=8):
    def sine(terms):
        return {'type': 'sine', 'terms': [[k, c] for k, c in terms]}
    return {
        'order': 4,
        'l': l,
        'a': a,
        'ratio': ratio or {'num': 1, 'den': 3},
        'schema': schema,
        'phi': [sine(terms) for terms in phi],
        'psi': [sine(terms) for terms in psi],
        'K': K,
    }


TASK_2 = problem_config(SCHEMA_2, phi=[[(1, 0.5), (2, 0.25)], []], psi=[[(1, 1.0)], [(3, 0.2)]])
TASK_1_MODE_3 = problem_config(SCHEMA_1, phi=[[(3, 1.0)], []], psi=[[], []], K=12)
TASK_1_SAFE = problem_config(SCHEMA_1, phi=[[(1, 1.0)], [(2, 0.5)]], psi=[[], []], K=12)
INTEGER = problem_config(SCHEMA_2, phi=[[(1, 1.0)], []], psi=[[], []], l=1.0, ratio={'num': 1, 'den': 1})
SQRT_2 = problem_config(
    SCHEMA_2, phi=[[(1, 1.0)], []], psi=[[], []], l=1.0, a=math.sqrt(2),
    ratio={'surd': {'p': '0', 'q': '1', 'd': 2}},
)


class CommandTestCase(TestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.tmp, ignore_errors=True)

    def write_config(self, name, config):
        path = self.tmp / name
        path.write_text(json.dumps(config), encoding='utf-8')
        return str(path)

    def call(self, *args, **kwargs):
        out = StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()


class SolveCommandTests(CommandTestCase):
    def test_solve_writes_outputs(self):
        out_dir = self.tmp / 'out'
        output = self.call('solve', config=self.write_config('task2.json', TASK_2), out=str(out_dir), grid='21x17')
        self.assertIn('Solved K=8', output)

        with (out_dir / 'solution_grid.csv').open(encoding='utf-8') as handle:
            rows = list(csv.reader(handle))
        self.assertEqual(rows[0], ['x', 'y', 'u'])
        self.assertEqual(len(rows), 1 + 21 * 17)

        residuals = json.loads((out_dir / 'residuals.json').read_text(encoding='utf-8'))
        self.assertEqual(residuals['resonant_modes'], [])
        self.assertEqual(residuals['ratio_class'], 'rational-separated')
        self.assertLess(residuals['max_boundary_residual'], 1e-6)
        self.assertTrue((out_dir / 'denominators.csv').exists())

        run = SolveRun.objects.get()
        self.assertEqual(run.command, 'solve')
        self.assertEqual(run.status, 'success')
        self.assertEqual(run.exit_code, 0)

    def test_repeated_solves_are_byte_identical(self):
        config = self.write_config('task2.json', TASK_2)
        self.call('solve', config=config, out=str(self.tmp / 'a'), grid='11x11')
        self.call('solve', config=config, out=str(self.tmp / 'b'), grid='11x11')
        for name in ('solution_grid.csv', 'denominators.csv', 'residuals.json'):
            self.assertEqual((self.tmp / 'a' / name).read_bytes(), (self.tmp / 'b' / name).read_bytes())

    def test_data_on_resonant_mode_exits_with_two(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('solve', config=self.write_config('task1.json', TASK_1_MODE_3), out=str(self.tmp / 'out'))
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('k=3', str(ctx.exception))

        run = SolveRun.objects.get()
        self.assertEqual(run.status, 'unsolvable')
        self.assertEqual(run.resonant_modes, [3])

    def test_orthogonal_data_on_task_one_solves(self):
        out_dir = self.tmp / 'out'
        self.call('solve', config=self.write_config('task1.json', TASK_1_SAFE), out=str(out_dir), grid='11x11')
        residuals = json.loads((out_dir / 'residuals.json').read_text(encoding='utf-8'))
        self.assertEqual(residuals['resonant_modes'], [3, 6, 9, 12])
        self.assertEqual(residuals['ratio_class'], 'rational-resonant')

    def test_missing_config_exits_with_one(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('solve', config=str(self.tmp / 'missing.json'), out=str(self.tmp / 'out'))
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertEqual(SolveRun.objects.get().status, 'error')

    def test_bad_grid(self):
        with self.assertRaises(CommandError):
            parse_grid('5x5')
        with self.assertRaises(CommandError):
            parse_grid('wide')
        self.assertEqual(parse_grid('101X51'), (101, 51))


class ClassifyCommandTests(CommandTestCase):
    def test_one_third(self):
        output = self.call('classify', config=self.write_config('task2.json', TASK_2))
        self.assertIn('rational-separated, δ = 0.5', output)

    def test_integer_ratio(self):
        output = self.call('classify', config=self.write_config('integer.json', INTEGER))
        self.assertIn('integer, δ = 1', output)

    def test_zero_phase_override(self):
        output = self.call('classify', config=self.write_config('task2.json', TASK_2), phase='0')
        self.assertIn('rational-resonant, δ = 0', output)

    def test_quadratic_surd(self):
        output = self.call(
            'classify', config=self.write_config('sqrt2.json', SQRT_2), k_max=1000, out=str(self.tmp / 'scan'),
        )
        self.assertIn('algebraic-irrational, N_hat = ', output)
        with (self.tmp / 'scan' / 'diophantine_scan.csv').open(encoding='utf-8') as handle:
            self.assertEqual(len(list(csv.reader(handle))), 1001)
        summary = SolveRun.objects.get().summary
        self.assertGreater(summary['delta_min'], 0.0)
        self.assertTrue(1 <= summary['delta_min_k'] <= 1000)

    def test_mixed_schema_needs_a_phase(self):
        mixed = problem_config({'gamma': 1, 'delta': 2, 'q': 0, 'chi': 0}, phi=[[(1, 1.0)], []], psi=[[], []])
        with self.assertRaises(CommandError) as ctx:
            self.call('classify', config=self.write_config('mixed.json', mixed))
        self.assertEqual(ctx.exception.returncode, 1)


class ScanCommandTests(CommandTestCase):
    def test_task_one_scan(self):
        out_dir = self.tmp / 'scan'
        output = self.call('scan', config=self.write_config('task1.json', TASK_1_SAFE), k_max=12, out=str(out_dir))
        self.assertIn('resonant modes [3, 6, 9, 12]', output)

        with (out_dir / 'denominators.csv').open(encoding='utf-8') as handle:
            rows = list(csv.DictReader(handle))
        self.assertEqual([row['k'] for row in rows], [str(k) for k in range(1, 13)])
        self.assertEqual([row['resonant_flag'] for row in rows if row['k'] in ('3', '4')], ['1', '0'])
        self.assertFalse((out_dir / 'diophantine_scan.csv').exists())

        summary = json.loads((out_dir / 'scan_summary.json').read_text(encoding='utf-8'))
        self.assertEqual(summary['resonant_modes'], [3, 6, 9, 12])
        self.assertEqual(summary['k_max'], 12)

    def test_irrational_scan_adds_the_diophantine_table(self):
        out_dir = self.tmp / 'scan'
        self.call('scan', config=self.write_config('sqrt2.json', SQRT_2), k_max=20, out=str(out_dir))
        self.assertTrue((out_dir / 'diophantine_scan.csv').exists())
        summary = json.loads((out_dir / 'scan_summary.json').read_text(encoding='utf-8'))
        self.assertGreater(summary['N_hat'], 0.0)


class ReproduceExampleTests(CommandTestCase):
    def test_unknown_task(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('reproduce_example', task=7, out=str(self.tmp))
        self.assertEqual(ctx.exception.returncode, 1)

    def test_task_one_is_not_solvable(self):
        output = self.call('reproduce_example', task=1, out=str(self.tmp))
        self.assertIn(UNSOLVABLE_VERDICT, output)
        self.assertNotIn('FAIL', output)
        report = json.loads((self.tmp / 'task1_report.json').read_text(encoding='utf-8'))
        self.assertEqual(report['resonant_modes'], list(range(3, 61, 3)))
        self.assertTrue((self.tmp / 'task1_growth.csv').exists())

    def test_task_two_is_solvable(self):
        output = self.call('reproduce_example', task=2, out=str(self.tmp))
        self.assertIn(SOLVABLE_VERDICT, output)
        self.assertNotIn('FAIL', output)
        self.assertEqual(SolveRun.objects.get().summary['verdict'], SOLVABLE_VERDICT)


class RunLoggerTests(TestCase):
    def test_stats_and_recent_errors(self):
        ok = RunLogger.start_run('solve', 'a.json', {'K': 5})
        RunLogger.finish_run(ok, 'success', 0, summary={'K': 5})
        failed = RunLogger.start_run('solve', 'b.json')
        RunLogger.finish_run(failed, 'unsolvable', 2, resonant_modes=[3],
                             error_message=str(NonorthogonalDataError(3, 0.5)))
        RunLogger.start_run('scan')

        stats = RunLogger.get_run_stats()
        self.assertEqual(stats['total_runs'], 3)
        self.assertEqual(stats['successful_runs'], 1)
        self.assertEqual(stats['unsolvable_runs'], 1)
        self.assertEqual(stats['recent_runs_24h'], 3)
        self.assertEqual(list(RunLogger.get_recent_errors()), [failed])
        self.assertTrue(SolveRun.objects.get(pk=ok.pk).is_successful)

    def test_finish_ignores_missing_run(self):
        RunLogger.finish_run(None, 'success', 0)
        self.assertEqual(SolveRun.objects.count(), 0)


class ReportFormatTests(SimpleTestCase):
    def test_format_number(self):
        self.assertEqual(format_number(True), '1')
        self.assertEqual(format_number(3), '3')
        self.assertEqual(format_number(0.1), '0.1')
        self.assertEqual(format_number(math.inf), 'inf')
        self.assertEqual(format_number(-math.inf), '-inf')
        self.assertEqual(format_number(math.nan), 'nan')

    def test_csv_round_trips_floats(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_csv(Path(tmp) / 'nested' / 'values.csv', ['k', 'value'], [(1, 1 / 3)])
            rows = list(csv.reader(path.read_text(encoding='utf-8').splitlines()))
        self.assertEqual(rows, [['k', 'value'], ['1', repr(1 / 3)]])
