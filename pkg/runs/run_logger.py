import logging
import time

from django.db.models import Avg, Count, Q
from django.utils import timezone

from .models import SolveRun

logger = logging.getLogger(__name__)


class RunLogger:
    """Records CLI invocations in the SolveRun ledger; ledger failures never break a run"""

    @staticmethod
    def start_run(command, config_path=None, arguments=None):
        try:
            return SolveRun.objects.create(
                command=command,
                config_path=str(config_path or ''),
                arguments=arguments or {},
                status='pending',
            )
        except Exception as e:
            logger.error(f"Failed to record {command} run: {e}")
            return None

    @staticmethod
    def finish_run(run, status, exit_code, start_time=None, summary=None, resonant_modes=None,
                   error_message=None):
        """
        Close a ledger entry

        Args:
            run: SolveRun instance from start_run (None is ignored)
            status: 'success', 'unsolvable' or 'error'
            exit_code: process exit status the command reports
            start_time: time.time() at the start of the command
        """
        if run is None:
            return
        try:
            run.status = status
            run.exit_code = exit_code
            run.summary = summary
            run.resonant_modes = list(resonant_modes or [])
            run.error_message = error_message
            if start_time:
                run.processing_time_ms = int((time.time() - start_time) * 1000)
            run.processed_at = timezone.now()
            run.save()
        except Exception as e:
            logger.error(f"Failed to update run {run.pk}: {e}")

    @staticmethod
    def get_run_stats():
        stats = SolveRun.objects.aggregate(
            total_runs=Count('id'),
            successful_runs=Count('id', filter=Q(status='success')),
            unsolvable_runs=Count('id', filter=Q(status='unsolvable')),
            error_runs=Count('id', filter=Q(status='error')),
            avg_processing_time=Avg('processing_time_ms'),
        )
        stats['recent_runs_24h'] = SolveRun.objects.filter(
            created_at__gte=timezone.now() - timezone.timedelta(hours=24)
        ).count()
        return stats

    @staticmethod
    def get_recent_errors(limit=10):
        return SolveRun.objects.exclude(status__in=['success', 'pending']).order_by('-created_at')[:limit]
