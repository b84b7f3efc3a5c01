from django.apps import AppConfig


class PauliConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'pauli'
    verbose_name = 'Pauli algebra'
