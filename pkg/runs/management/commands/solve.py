import logging
from pathlib import Path

import numpy as np
from django.core.management.base import CommandError

from problems.conf import solver_setting
from problems.config import load_spec
from runs.command_base import EXIT_CONFIG, LedgerCommand
from runs.reports import (
    DENOMINATOR_COLUMNS, GRID_COLUMNS, denominator_rows, grid_rows, write_csv, write_json,
)
from solver.series import build_solution, evaluate_grid
from solver.verification import verify

logger = logging.getLogger(__name__)


def parse_grid(text):
    """'101x101' -> (101, 101)."""
    try:
        nx, ny = (int(part) for part in text.lower().split('x'))
    except ValueError:
        raise CommandError(f'grid must look like 101x101, got {text!r}', returncode=EXIT_CONFIG)
    if nx < 9 or ny < 9:
        raise CommandError(f'grid must be at least 9x9, got {text}', returncode=EXIT_CONFIG)
    return nx, ny


class Command(LedgerCommand):
    help = 'Solve a boundary value problem and write the solution grid, residuals and denominators'
    ledger_name = 'solve'

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help='Problem configuration (JSON)')
        parser.add_argument('--out', required=True, help='Output directory')
        parser.add_argument('--K', type=int, default=None, help='Truncation index')
        parser.add_argument('--grid', default=None, help='Evaluation grid, e.g. 101x101')

    def run(self, config, out, K=None, grid=None, **options):
        nx, ny = parse_grid(grid) if grid else tuple(solver_setting('GRID'))
        spec = load_spec(config, overrides={'K': K})
        solution = build_solution(spec)
        residuals = verify(solution, (nx, ny))

        out = Path(out)
        xs = np.linspace(0.0, spec.l, nx)
        ys = np.linspace(-spec.a, spec.a, ny)
        write_csv(out / 'solution_grid.csv', GRID_COLUMNS, grid_rows(xs, ys, evaluate_grid(solution, xs, ys)))
        write_csv(out / 'denominators.csv', DENOMINATOR_COLUMNS, denominator_rows(solution.denominator))
        summary = residuals.as_dict()
        summary.update({
            'K': solution.K,
            'M_hat': solution.M_hat,
            'resonant_modes': solution.resonant_modes,
            'ratio_class': solution.ratio_class.kind if solution.ratio_class else None,
            'grid': [nx, ny],
        })
        write_json(out / 'residuals.json', summary)

        self.stdout.write(
            f'Solved K={solution.K}: boundary residual {residuals.max_boundary_residual:.3e}, '
            f'resonant modes {solution.resonant_modes or "none"}'
        )
        return summary, solution.resonant_modes
