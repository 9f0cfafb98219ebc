# Generated by Django 5.2.6 on 2026-10-19 10:12

import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('command', models.CharField(default='verify', max_length=50)),
                ('suites', models.CharField(help_text='Comma-separated suite names', max_length=200)),
                ('parameters', models.JSONField(blank=True, default=dict)),
                ('status', models.CharField(choices=[('PASS', 'Passed'), ('FAIL', 'Failed'), ('DIVERGENT', 'Documented divergence')], max_length=10)),
                ('passed_checks', models.PositiveIntegerField(default=0)),
                ('failed_checks', models.PositiveIntegerField(default=0)),
                ('divergent_checks', models.PositiveIntegerField(default=0)),
                ('report', models.JSONField(default=dict)),
                ('digest', models.CharField(help_text='sha256 of the report without timings', max_length=64)),
                ('engine_version', models.CharField(blank=True, max_length=20)),
                ('total_seconds', models.FloatField(default=0.0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Verification Run',
                'verbose_name_plural': 'Verification Runs',
                'ordering': ['-created_at'],
            },
        ),
    ]
