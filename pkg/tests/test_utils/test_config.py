"""Tests for configuration management."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from nonrep.utils.config import Config


class TestConfigLoading:
    """Test loading configuration from environment."""

    def test_config_loads_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that config loads NONREP_ variables."""
        monkeypatch.setenv("NONREP_THREADS", "4")
        monkeypatch.setenv("NONREP_DEFAULT_BUDGET", "12.5")
        monkeypatch.setenv("NONREP_LOG_LEVEL", "info")

        config = Config(_env_file=None)

        assert config.threads == 4
        assert config.default_budget == 12.5
        assert config.log_level == "INFO"

    def test_config_loads_from_dotenv_file(self, tmp_path: Path) -> None:
        """Test that config loads from .env file."""
        env_file = tmp_path / ".env"
        env_file.write_text("NONREP_LONG_BUDGET=3600\nNONREP_TABLE_MAX_SEARCH_EDGES=50\n")

        config = Config(_env_file=str(env_file))

        assert config.long_budget == 3600.0
        assert config.table_max_search_edges == 50

    def test_config_environment_overrides_dotenv(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that environment variables override .env file values."""
        env_file = tmp_path / ".env"
        env_file.write_text("NONREP_THREADS=2\n")
        monkeypatch.setenv("NONREP_THREADS", "8")

        config = Config(_env_file=str(env_file))

        assert config.threads == 8

    def test_unprefixed_variables_are_ignored(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that only NONREP_ variables count."""
        monkeypatch.setenv("THREADS", "16")

        assert Config(_env_file=None).threads == 1


class TestConfigDefaults:
    """Test default configuration values."""

    def test_config_uses_default_values(self) -> None:
        """Test that config provides sensible defaults."""
        config = Config(_env_file=None)

        assert config.threads == 1
        assert config.default_budget == 60.0
        assert config.long_budget == 21600.0
        assert config.table_max_search_edges == 200
        assert config.log_level == "WARNING"
        assert config.debug is False

    def test_debug_overrides_log_level(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that debug mode forces DEBUG logging."""
        monkeypatch.setenv("NONREP_DEBUG", "1")

        config = Config(_env_file=None)

        assert config.debug is True
        assert config.effective_log_level == "DEBUG"


class TestConfigValidation:
    """Test configuration validation."""

    @pytest.mark.parametrize(
        ("variable", "value"),
        [
            ("NONREP_THREADS", "0"),
            ("NONREP_DEFAULT_BUDGET", "-1"),
            ("NONREP_TABLE_MAX_SEARCH_EDGES", "many"),
            ("NONREP_LOG_LEVEL", "chatty"),
        ],
    )
    def test_invalid_values(
        self, monkeypatch: pytest.MonkeyPatch, variable: str, value: str
    ) -> None:
        """Test that invalid settings raise validation errors naming the field."""
        monkeypatch.setenv(variable, value)

        with pytest.raises(ValidationError) as exc_info:
            Config(_env_file=None)

        assert variable.removeprefix("NONREP_").lower() in str(exc_info.value).lower()


class TestBudgetSeconds:
    """Test resolution of budget arguments."""

    def test_default_and_long(self) -> None:
        """Test the named budgets."""
        config = Config(_env_file=None, default_budget=5.0, long_budget=100.0)

        assert config.budget_seconds(None) == 5.0
        assert config.budget_seconds("long") == 100.0
        assert config.budget_seconds(" LONG ") == 100.0

    def test_seconds(self) -> None:
        """Test numeric budgets, given as text or numbers."""
        config = Config(_env_file=None)

        assert config.budget_seconds("2.5") == 2.5
        assert config.budget_seconds(7) == 7.0

    @pytest.mark.parametrize("budget", ["soon", "0", -3.0])
    def test_invalid_budget(self, budget: str | float) -> None:
        """Test that unusable budgets are refused."""
        with pytest.raises(ValueError, match="budget"):
            Config(_env_file=None).budget_seconds(budget)

    def test_repr(self) -> None:
        """Test that the representation lists the settings."""
        assert "threads=1" in repr(Config(_env_file=None))
