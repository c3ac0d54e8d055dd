"""
Tests for configuration management.
"""
import os
from unittest.mock import MagicMock, patch

import pytest
import yaml

from tlfree_core.config import Caps, ConfigManager, ConfigValidator, get_caps, get_config, reset_config
from tlfree_core.exceptions import ConfigurationError


@pytest.fixture
def config_file(temp_dir):
    """A config file that lowers one cap and changes the default law."""
    path = os.path.join(temp_dir, "tlfree-test.yaml")
    with open(path, "w") as f:
        yaml.safe_dump({"caps": {"max_nc": 8}, "defaults": {"law": "free-poisson"}}, f)
    return path


@pytest.fixture
def config_validator():
    """Create config validator instance."""
    return ConfigValidator()


def test_defaults_from_project_config():
    caps = get_caps()
    assert caps == Caps()
    assert get_config().get("defaults.law") == "semicircle"
    assert get_config().get("missing.key", "fallback") == "fallback"


def test_yaml_merges_over_defaults(config_file, temp_dir):
    manager = ConfigManager(config_file, os.path.join(temp_dir, "absent.env"))
    assert manager.caps().max_nc == 8
    assert manager.caps().max_depth == 6
    assert manager.get("defaults.law") == "free-poisson"
    assert manager.get("defaults.delta") == "2"


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("TLFREE_MAX_NC", "9")
    monkeypatch.setenv("TLFREE_DELTA", "3/2")
    reset_config()
    assert get_caps().max_nc == 9
    assert get_config().get("defaults.delta") == "3/2"


def test_bad_env_override(monkeypatch):
    monkeypatch.setenv("TLFREE_MAX_JW", "many")
    with pytest.raises(ConfigurationError):
        ConfigManager()


def test_bad_caps_section():
    manager = ConfigManager()
    manager.set("caps.max_nc", "twelve")
    with pytest.raises(ConfigurationError):
        manager.caps()


def test_save_round_trip(temp_dir):
    path = os.path.join(temp_dir, "saved.yaml")
    manager = ConfigManager(path, os.path.join(temp_dir, "absent.env"))
    manager.set("monte_carlo.seed", 99, persist=True)
    assert ConfigManager(path, os.path.join(temp_dir, "absent.env")).get("monte_carlo.seed") == 99


def test_cap_validation(config_validator):
    manager = ConfigManager()
    assert all(config_validator.validate_caps(manager).values())
    manager.set("caps.max_nc", 40)
    manager.set("caps.max_jw", 0)
    results = config_validator.validate_caps(manager)
    assert not results["max_nc"]
    assert not results["max_jw"]
    assert results["max_depth"]


def test_default_validation(config_validator):
    manager = ConfigManager()
    assert all(config_validator.validate_defaults(manager).values())
    manager.set("defaults.delta", "-1")
    manager.set("defaults.law", "custom")
    assert config_validator.validate_defaults(manager) == {"delta": False, "law": False}


def test_dependency_validation(config_validator):
    """Test dependency validation."""
    with patch("importlib.util.find_spec", return_value=object()):
        results = ConfigValidator.validate_dependencies()
        assert all(results.values())
    with patch("importlib.util.find_spec", return_value=None):
        results = ConfigValidator.validate_dependencies()
        assert not any(results.values())


def test_validation_report(config_validator, capsys):
    """Test validation report generation."""
    with patch.multiple(ConfigValidator,
        validate_caps=MagicMock(return_value={"max_nc": True}),
        validate_defaults=MagicMock(return_value={"delta": True}),
        validate_dependencies=MagicMock(return_value={"numpy": False}),
    ):
        results = ConfigValidator.validate_all()
        assert set(results) == {"caps", "defaults", "dependencies"}
        ConfigValidator.print_validation_report()
    out = capsys.readouterr().out
    assert "✓ max_nc" in out
    assert "✗ numpy" in out
