"""
Configuration validation utilities.
"""
import importlib.util
import logging
from typing import Dict, Optional

from .config_manager import ConfigManager, get_config

logger = logging.getLogger(__name__)

# Hard ceilings; caps above these are rejected regardless of configuration
CEILINGS = {
    "max_nc": 16,
    "max_depth": 8,
    "max_t_degree": 4,
    "max_jw": 8,
    "max_oracle_boxes": 2,
    "max_oracle_m": 4,
}


class ConfigValidator:
    """Validates tlfree configuration."""

    @staticmethod
    def validate_caps(manager: Optional[ConfigManager] = None) -> Dict[str, bool]:
        """Validate that each cap is a positive integer below its ceiling."""
        manager = manager or get_config()
        status = {}
        for name, ceiling in CEILINGS.items():
            value = manager.get(f"caps.{name}")
            ok = isinstance(value, int) and not isinstance(value, bool) and 1 <= value <= ceiling
            if not ok:
                logger.error(f"Cap {name}={value!r} outside 1..{ceiling}")
            status[name] = ok
        return status

    @staticmethod
    def validate_dependencies() -> Dict[str, bool]:
        """Validate required Python dependencies."""
        dependencies = {
            "numpy": "numpy",
            "sympy": "sympy",
            "pyyaml": "yaml",
            "python-dotenv": "dotenv",
            "rich": "rich",
            "tqdm": "tqdm",
            "psutil": "psutil",
        }

        status = {}
        for name, module in dependencies.items():
            found = importlib.util.find_spec(module) is not None
            if not found:
                logger.error(f"Missing required dependency: {name}")
            status[name] = found
        return status

    @staticmethod
    def validate_defaults(manager: Optional[ConfigManager] = None) -> Dict[str, bool]:
        """Validate default law and delta values."""
        from fractions import Fraction

        manager = manager or get_config()
        try:
            delta_ok = Fraction(str(manager.get("defaults.delta"))) > 0
        except (ValueError, ZeroDivisionError):
            delta_ok = False
        law_ok = manager.get("defaults.law") in ("semicircle", "free-poisson")
        return {"delta": delta_ok, "law": law_ok}

    @classmethod
    def validate_all(cls, manager: Optional[ConfigManager] = None) -> Dict[str, Dict]:
        """Run all validation checks."""
        return {
            "caps": cls.validate_caps(manager),
            "defaults": cls.validate_defaults(manager),
            "dependencies": cls.validate_dependencies(),
        }

    @classmethod
    def print_validation_report(cls, manager: Optional[ConfigManager] = None):
        """Print a formatted validation report."""
        results = cls.validate_all(manager)

        print("\n=== tlfree Validation Report ===\n")
        for section, checks in results.items():
            print(f"{section.capitalize()}:")
            for key, valid in checks.items():
                status = "✓" if valid else "✗"
                print(f"  {status} {key}")
            print()
