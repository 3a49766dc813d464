"""Core infrastructure modules - configuration, errors, arithmetic and intervals."""
