from django.apps import AppConfig


class DenominatorsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'denominators'
