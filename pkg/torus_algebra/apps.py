from django.apps import AppConfig


class TorusAlgebraConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'torus_algebra'
    verbose_name = 'Torus algebra'
