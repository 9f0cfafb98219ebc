from django.apps import AppConfig


class GradingsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gradings'
    verbose_name = 'Noncommutative gradings'
