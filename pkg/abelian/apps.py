from django.apps import AppConfig


class AbelianConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'abelian'
    verbose_name = 'Integer linear algebra'
