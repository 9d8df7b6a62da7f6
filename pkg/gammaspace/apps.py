from django.apps import AppConfig


class GammaspaceConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gammaspace'
    verbose_name = 'Gamma-spaces of commutative monoids'
