from django.apps import AppConfig


class BorderedConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'bordered'
    verbose_name = 'Bordered structures'
