"""
Configuration package for trdiff.

This package contains:
- settings.py: Environment settings with validation
- logging_config.py: Centralized logging configuration
"""

from .settings import get_settings
from .logging_config import setup_logging

__all__ = ["get_settings", "setup_logging"]
