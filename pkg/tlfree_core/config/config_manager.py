"""
Configuration Manager for tlfree.
"""
import copy
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from ..exceptions import ConfigurationError
from ..utils.config import ROOT_DIR, get_env_int, load_config, load_env, save_config

logger = logging.getLogger(__name__)

# Environment variable -> dotted config key
ENV_OVERRIDES = {
    "TLFREE_MAX_NC": "caps.max_nc",
    "TLFREE_MAX_DEPTH": "caps.max_depth",
    "TLFREE_MAX_T_DEGREE": "caps.max_t_degree",
    "TLFREE_MAX_JW": "caps.max_jw",
}


@dataclass(frozen=True)
class Caps:
    """Resource caps enforced before any enumeration."""
    max_nc: int = 12
    max_depth: int = 6
    max_t_degree: int = 2
    max_jw: int = 6
    max_oracle_boxes: int = 2
    max_oracle_m: int = 3


class ConfigManager:
    """Manages configuration settings and environment variables."""

    def __init__(self, config_file: Optional[Path] = None, env_file: Optional[Path] = None):
        """Initialize configuration manager."""
        self.root_dir = ROOT_DIR
        self.config_file = config_file or self.root_dir / "config.yaml"
        self.env_file = env_file or self.root_dir / ".env"

        # Default configuration
        self.defaults = {
            "caps": {
                "max_nc": 12,
                "max_depth": 6,
                "max_t_degree": 2,
                "max_jw": 6,
                "max_oracle_boxes": 2,
                "max_oracle_m": 3,
            },
            "defaults": {
                "delta": "2",
                "cutoff": 3,
                "law": "semicircle",
            },
            "monte_carlo": {
                "dim": 200,
                "samples": 500,
                "seed": 7,
            },
            "logging": {
                "level": "INFO",
                "file": None,
            },
        }

        # Load configuration
        self.config = copy.deepcopy(self.defaults)
        self._load_config()
        self._load_env()

    def _load_config(self):
        """Load configuration from YAML file."""
        try:
            user_config = load_config(Path(self.config_file))
        except Exception as e:
            logger.error(f"Failed to load configuration: {e}")
            return
        _merge(self.config, user_config)
        logger.debug("Configuration loaded from %s", self.config_file)

    def _load_env(self):
        """Load environment overrides."""
        load_env(Path(self.env_file))
        for env_key, dotted in ENV_OVERRIDES.items():
            value = get_env_int(env_key)
            if value is not None:
                self.set(dotted, value, persist=False)
                logger.info("%s overrides %s = %d", env_key, dotted, value)
        delta = os.getenv("TLFREE_DELTA")
        if delta:
            self.set("defaults.delta", delta, persist=False)

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        try:
            value = self.config
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any, persist: bool = False):
        """Set a configuration value."""
        keys = key.split('.')
        config = self.config
        for k in keys[:-1]:
            config = config.setdefault(k, {})
        config[keys[-1]] = value

        if persist:
            self.save()

    def save(self):
        """Save configuration to file."""
        try:
            save_config(self.config, Path(self.config_file))
            logger.info("Configuration saved successfully")
        except Exception as e:
            logger.error(f"Failed to save configuration: {e}")

    def caps(self) -> Caps:
        """Return the resource caps as a typed record."""
        raw = self.get("caps", {})
        try:
            return Caps(**{k: int(v) for k, v in raw.items() if k in Caps.__dataclass_fields__})
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"Invalid caps section: {e}") from e


def _merge(base: Dict[str, Any], update: Dict[str, Any]) -> None:
    for key, value in (update or {}).items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value


_manager: Optional[ConfigManager] = None


def get_config() -> ConfigManager:
    """Return the process-wide configuration manager."""
    global _manager
    if _manager is None:
        _manager = ConfigManager()
    return _manager


def reset_config(manager: Optional[ConfigManager] = None) -> None:
    """Replace (or drop) the process-wide configuration manager."""
    global _manager
    _manager = manager


def get_caps() -> Caps:
    """Shortcut for get_config().caps()."""
    return get_config().caps()
