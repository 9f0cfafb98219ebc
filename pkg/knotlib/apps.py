from django.apps import AppConfig


class KnotlibConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'knotlib'
    verbose_name = 'Knot and module fixtures'
