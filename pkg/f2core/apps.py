from django.apps import AppConfig


class F2CoreConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'f2core'
    verbose_name = 'F2 linear algebra'
