from django.apps import AppConfig


class EpistemicConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'epistemic'
    verbose_name = 'Epistemic model'
