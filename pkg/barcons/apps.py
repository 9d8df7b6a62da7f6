from django.apps import AppConfig


class BarconsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'barcons'
    verbose_name = 'Monoids, rings and bar constructions'
