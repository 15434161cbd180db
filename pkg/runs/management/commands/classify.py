from pathlib import Path

from django.core.management.base import CommandError

from denominators.forms import DenominatorForm, expected_denominator
from denominators.scan import DiophantineScanConfig, diophantine_scan
from denominators.separation import separation_bound
from problems.conf import solver_setting
from problems.config import load_spec
from problems.ratios import as_phase, classify_ratio
from runs.command_base import EXIT_CONFIG, LedgerCommand
from runs.reports import SCAN_COLUMNS, scan_rows, write_csv


def resolve_form(spec, phase=None):
    """The tabulated denominator form, or the one fixed by an explicit --phase."""
    if phase is not None:
        return DenominatorForm(phase=as_phase(phase))
    form = expected_denominator(spec.order, spec.schema)
    if not form.tabulated:
        raise CommandError('denominator form not tabulated for this schema; pass --phase',
                           returncode=EXIT_CONFIG)
    return form


class Command(LedgerCommand):
    help = 'Classify the side ratio a/l and bound the small denominator'
    ledger_name = 'classify'

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help='Problem configuration (JSON)')
        parser.add_argument('--epsilon', type=float, default=None)
        parser.add_argument('--k-max', type=int, default=None)
        parser.add_argument('--phase', default=None, help='Phase as a multiple of pi, e.g. 1/2')
        parser.add_argument('--out', default=None, help='Directory for the scan table (irrational ratios)')

    def run(self, config, epsilon=None, k_max=None, phase=None, out=None, **options):
        spec = load_spec(config)
        form = resolve_form(spec, phase)
        ratio_class = classify_ratio(spec.ratio, form.phase)

        if ratio_class.is_rational:
            bound = separation_bound(ratio_class, form)
            self.stdout.write(f'{ratio_class.kind}, δ = {bound.delta:g}')
            summary = {'class': ratio_class.kind, 'delta': bound.delta, 'witness_k2': bound.witness_k2,
                       'phase': str(form.phase)}
            return summary, []

        cfg = DiophantineScanConfig(
            epsilon=epsilon if epsilon is not None else solver_setting('EPSILON'),
            k_max=k_max or solver_setting('K_MAX'),
        )
        result = diophantine_scan(spec.ratio, form, cfg)
        if out:
            write_csv(Path(out) / 'diophantine_scan.csv', SCAN_COLUMNS, scan_rows(result.table))
        self.stdout.write(f'{ratio_class.kind}, N_hat = {result.N_hat:g}, worst_k = {result.worst_k}')
        bound = result.separation_bound()
        summary = {'class': ratio_class.kind, 'N_hat': result.N_hat, 'worst_k': result.worst_k,
                   'delta_min': bound.delta, 'delta_min_k': bound.witness_k2,
                   'epsilon': cfg.epsilon, 'k_max': cfg.k_max, 'phase': str(form.phase)}
        return summary, []
