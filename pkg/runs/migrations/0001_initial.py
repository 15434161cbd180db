from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='SolveRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('solve', 'Solve'), ('classify', 'Classify'), ('scan', 'Scan'), ('reproduce_example', 'Reproduce Example')], max_length=20)),
                ('config_path', models.CharField(blank=True, default='', max_length=500)),
                ('arguments', models.JSONField(default=dict)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('success', 'Success'), ('unsolvable', 'Unsolvable'), ('error', 'Error')], default='pending', max_length=12)),
                ('exit_code', models.IntegerField(blank=True, null=True)),
                ('resonant_modes', models.JSONField(default=list)),
                ('summary', models.JSONField(blank=True, null=True)),
                ('error_message', models.TextField(blank=True, null=True)),
                ('processing_time_ms', models.IntegerField(blank=True, null=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('processed_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', 'status'], name='runs_solver_command_3f1a2b_idx'), models.Index(fields=['status', 'created_at'], name='runs_solver_status_8c4d0e_idx')],
            },
        ),
    ]
