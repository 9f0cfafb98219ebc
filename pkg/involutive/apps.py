from django.apps import AppConfig


class InvolutiveConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'involutive'
    verbose_name = 'Involutive knot complexes'
