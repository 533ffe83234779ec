from django.apps import AppConfig


class HopfConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hopf'
    verbose_name = 'SU_q(2) Hopf algebra, corepresentations and Fourier analysis'
