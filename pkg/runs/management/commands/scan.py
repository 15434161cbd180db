from pathlib import Path

from denominators.resonance import denominator_report
from denominators.scan import DiophantineScanConfig, diophantine_scan
from problems.conf import solver_setting
from problems.config import load_spec
from problems.types import RatioValue
from runs.command_base import LedgerCommand
from runs.management.commands.classify import resolve_form
from runs.reports import (
    DENOMINATOR_COLUMNS, SCAN_COLUMNS, denominator_rows, scan_rows, write_csv, write_json,
)


class Command(LedgerCommand):
    help = 'Tabulate scaled determinants and small denominators for k = 1..k_max'
    ledger_name = 'scan'

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help='Problem configuration (JSON)')
        parser.add_argument('--k-max', type=int, required=True)
        parser.add_argument('--out', default='.', help='Output directory')
        parser.add_argument('--epsilon', type=float, default=None)

    def run(self, config, k_max, out='.', epsilon=None, **options):
        spec = load_spec(config)
        out = Path(out)
        report = denominator_report(spec, K=k_max)
        write_csv(out / 'denominators.csv', DENOMINATOR_COLUMNS, denominator_rows(report))
        summary = report.summary()
        summary['k_max'] = k_max

        if spec.ratio.kind != RatioValue.EXACT_RATIONAL:
            form = resolve_form(spec)
            cfg = DiophantineScanConfig(
                epsilon=epsilon if epsilon is not None else solver_setting('EPSILON'), k_max=k_max,
            )
            result = diophantine_scan(spec.ratio, form, cfg)
            write_csv(out / 'diophantine_scan.csv', SCAN_COLUMNS, scan_rows(result.table))
            summary.update({'N_hat': result.N_hat, 'worst_k': result.worst_k})

        write_json(out / 'scan_summary.json', summary)
        self.stdout.write(
            f'Scanned k=1..{k_max}: M_hat = {report.M_hat:g}, resonant modes {report.resonant_modes or "none"}'
        )
        return summary, report.resonant_modes
