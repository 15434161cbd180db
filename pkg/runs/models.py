from django.db import models


class SolveRun(models.Model):
    """Ledger entry for one command-line invocation"""

    COMMAND_CHOICES = [
        ('solve', 'Solve'),
        ('classify', 'Classify'),
        ('scan', 'Scan'),
        ('reproduce_example', 'Reproduce Example'),
    ]

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('success', 'Success'),
        ('unsolvable', 'Unsolvable'),
        ('error', 'Error'),
    ]

    command = models.CharField(max_length=20, choices=COMMAND_CHOICES)
    config_path = models.CharField(max_length=500, blank=True, default='')
    arguments = models.JSONField(default=dict)  # Options as passed on the command line
    status = models.CharField(max_length=12, choices=STATUS_CHOICES, default='pending')
    exit_code = models.IntegerField(null=True, blank=True)
    resonant_modes = models.JSONField(default=list)
    summary = models.JSONField(null=True, blank=True)
    error_message = models.TextField(null=True, blank=True)
    processing_time_ms = models.IntegerField(null=True, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    processed_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['command', 'status'], name='runs_solver_command_3f1a2b_idx'),
            models.Index(fields=['status', 'created_at'], name='runs_solver_status_8c4d0e_idx'),
        ]

    def __str__(self):
        return f"{self.command} - {self.config_path or '-'} - {self.status} - {self.created_at}"

    @property
    def is_successful(self):
        return self.status == 'success'
