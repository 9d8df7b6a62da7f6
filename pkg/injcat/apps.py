from django.apps import AppConfig


class InjcatConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'injcat'
    verbose_name = 'Finite sets and injections'
