import logging
import time

from django.core.management.base import BaseCommand, CommandError

from problems.exceptions import NonorthogonalDataError, SpectralSolverError

from .run_logger import RunLogger

logger = logging.getLogger(__name__)

EXIT_CONFIG = 1
EXIT_UNSOLVABLE = 2


class LedgerCommand(BaseCommand):
    """Management command whose invocations land in the run ledger.

    Subclasses implement run(**options) returning (summary, resonant_modes).
    Unsolvable data exits with status 2, every other failure with status 1.
    """
    ledger_name = None

    def handle(self, *args, **options):
        start_time = time.time()
        arguments = {key: value for key, value in options.items()
                     if key not in ('stdout', 'stderr', 'verbosity', 'settings', 'pythonpath',
                                    'traceback', 'no_color', 'force_color', 'skip_checks')}
        run = RunLogger.start_run(self.ledger_name, options.get('config'), _plain(arguments))
        try:
            summary, resonant_modes = self.run(**options)
        except NonorthogonalDataError as e:
            logger.error(f'{self.ledger_name}: {e}')
            RunLogger.finish_run(run, 'unsolvable', EXIT_UNSOLVABLE, start_time,
                                 resonant_modes=[e.k], error_message=str(e))
            raise CommandError(str(e), returncode=EXIT_UNSOLVABLE)
        except CommandError as e:
            RunLogger.finish_run(run, 'error', e.returncode, start_time, error_message=str(e))
            raise
        except (SpectralSolverError, ValueError, OSError) as e:
            logger.error(f'{self.ledger_name}: {e}')
            RunLogger.finish_run(run, 'error', EXIT_CONFIG, start_time, error_message=str(e))
            raise CommandError(str(e), returncode=EXIT_CONFIG)
        RunLogger.finish_run(run, 'success', 0, start_time, summary=_plain(summary),
                             resonant_modes=resonant_modes)

    def run(self, **options):
        raise NotImplementedError


def _plain(value):
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, float) and value != value:
        return None
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)
