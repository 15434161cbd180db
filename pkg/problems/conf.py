from django.conf import settings


def solver_setting(name):
    """Look up a solver default from ``settings.SPECTRAL_SOLVER``, the single defaults table."""
    return settings.SPECTRAL_SOLVER[name]
