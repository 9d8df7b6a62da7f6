from django.apps import AppConfig


class BasedsetsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'basedsets'
    verbose_name = 'Based sets and matrices'
