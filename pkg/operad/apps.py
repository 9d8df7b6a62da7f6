from django.apps import AppConfig


class OperadConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'operad'
    verbose_name = 'Cyclic Barratt-Eccles construction'
