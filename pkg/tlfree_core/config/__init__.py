"""
Configuration Module
"""

from .config_manager import Caps, ConfigManager, get_caps, get_config, reset_config
from .validation import ConfigValidator

__version__ = "0.1.0"
__all__ = [
    "Caps",
    "ConfigManager",
    "ConfigValidator",
    "get_caps",
    "get_config",
    "reset_config",
]
