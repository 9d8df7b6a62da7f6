from django.apps import AppConfig


class TracehhConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'tracehh'
    verbose_name = 'Multi-trace and Hochschild homology'
