"""
Unit tests for configuration module.
"""

import pytest
from src.config import (
    get_config,
    validate_config,
    Environment,
    ConfigurationError,
)


class TestGetConfig:
    """Tests for configuration loading"""

    def test_loads_with_valid_env(self, mock_env_vars):
        """Test config loads successfully with valid environment"""
        config = get_config()

        assert config.env == Environment.DEVELOPMENT
        assert config.logging.level == "DEBUG"
        assert config.runtime.workers == 1

    def test_defaults_to_development(self, mock_env_vars, monkeypatch):
        """Test defaults to development environment"""
        monkeypatch.delenv("LINDBRAND_ENV", raising=False)
        get_config.cache_clear()

        config = get_config()
        assert config.env == Environment.DEVELOPMENT
        assert config.debug is True

    def test_unknown_environment_falls_back(self, mock_env_vars, monkeypatch):
        """Test an unknown environment name falls back to development"""
        monkeypatch.setenv("LINDBRAND_ENV", "lab")
        get_config.cache_clear()

        assert get_config().env == Environment.DEVELOPMENT

    def test_production_environment(self, mock_env_vars, monkeypatch):
        """Test production environment settings"""
        monkeypatch.setenv("LINDBRAND_ENV", "production")
        monkeypatch.delenv("LINDBRAND_LOG_LEVEL", raising=False)
        get_config.cache_clear()

        config = get_config()
        assert config.env == Environment.PRODUCTION
        assert config.debug is False
        assert config.logging.level == "INFO"
        assert config.logging.json_format is True

    def test_runtime_overrides(self, mock_env_vars, monkeypatch):
        """Test worker count, output dir and tolerance come from the environment"""
        monkeypatch.setenv("LINDBRAND_WORKERS", "4")
        monkeypatch.setenv("LINDBRAND_OUTPUT_DIR", "/tmp/out")
        monkeypatch.setenv("LINDBRAND_REL_TOL", "1e-6")
        get_config.cache_clear()

        config = get_config()
        assert config.runtime.workers == 4
        assert config.runtime.output_dir == "/tmp/out"
        assert config.numerics.rel_tol == 1e-6

    def test_malformed_number_uses_default(self, mock_env_vars, monkeypatch):
        """Test non-numeric values fall back to defaults"""
        monkeypatch.setenv("LINDBRAND_WORKERS", "many")
        monkeypatch.setenv("LINDBRAND_REL_TOL", "tight")
        get_config.cache_clear()

        config = get_config()
        assert config.runtime.workers == 1
        assert config.numerics.rel_tol == 1e-8

    def test_config_is_cached(self, mock_env_vars):
        """Test repeated calls return the same object"""
        assert get_config() is get_config()


class TestValidateConfig:
    """Tests for startup validation"""

    def test_valid_config(self, mock_env_vars):
        """Test default configuration validates"""
        assert validate_config() is True

    def test_rejects_zero_workers(self, mock_env_vars, monkeypatch):
        """Test a worker count below 1 is rejected"""
        monkeypatch.setenv("LINDBRAND_WORKERS", "0")
        get_config.cache_clear()

        with pytest.raises(ConfigurationError) as exc_info:
            validate_config()

        assert "LINDBRAND_WORKERS" in str(exc_info.value)

    def test_rejects_loose_tolerance(self, mock_env_vars, monkeypatch):
        """Test a relative tolerance above 1e-3 is rejected"""
        monkeypatch.setenv("LINDBRAND_REL_TOL", "0.01")
        get_config.cache_clear()

        with pytest.raises(ConfigurationError) as exc_info:
            validate_config()

        assert "LINDBRAND_REL_TOL" in str(exc_info.value)
