from django.apps import AppConfig


class CircleConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'circle'
    verbose_name = 'Circle representation and the regular action of the torus'
