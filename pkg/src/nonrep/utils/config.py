"""Configuration management for nonrep."""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

_LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


class Config(BaseSettings):
    """Search and runtime configuration loaded from environment variables and .env file."""

    model_config = SettingsConfigDict(
        env_prefix="NONREP_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Search Settings
    threads: int = Field(
        default=1,
        ge=1,
        description="Worker processes used to explore top-level search branches",
    )
    default_budget: float = Field(
        default=60.0,
        gt=0.0,
        description="Wall-clock seconds granted to one exhaustive search",
    )
    long_budget: float = Field(
        default=21600.0,
        gt=0.0,
        description="Wall-clock seconds for the 'long' budget profile",
    )
    table_max_search_edges: int = Field(
        default=200,
        ge=0,
        description="Largest tree (in edges) on which the table command attempts exact search",
    )

    # Application Settings
    log_level: str = Field(
        default="WARNING",
        description="Log level for the nonrep loggers",
    )
    debug: bool = Field(
        default=False,
        description="Enable debug mode",
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Upper-case the level name and reject unknown levels."""
        level = str(v).strip().upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(_LOG_LEVELS)}, got {v!r}")
        return level

    @property
    def effective_log_level(self) -> str:
        """Log level after applying debug mode."""
        return "DEBUG" if self.debug else self.log_level

    def budget_seconds(self, budget: str | float | None) -> float:
        """
        Resolve a budget argument to seconds.

        Args:
            budget: None for the default budget, "long" for the long profile,
                or a number of seconds.

        Returns:
            The budget in seconds.

        Raises:
            ValueError: If the budget is neither "long" nor a positive number.
        """
        if budget is None:
            return self.default_budget
        if isinstance(budget, str):
            if budget.strip().lower() == "long":
                return self.long_budget
            try:
                budget = float(budget)
            except ValueError:
                raise ValueError(f"budget must be 'long' or seconds, got {budget!r}") from None
        if budget <= 0:
            raise ValueError(f"budget must be positive, got {budget}")
        return float(budget)

    def __repr__(self) -> str:
        """Return string representation of the effective settings."""
        return (
            f"Config("
            f"threads={self.threads}, "
            f"default_budget={self.default_budget}, "
            f"long_budget={self.long_budget}, "
            f"table_max_search_edges={self.table_max_search_edges}, "
            f"log_level={self.log_level}, "
            f"debug={self.debug})"
        )

    def __str__(self) -> str:
        """Return user-friendly string representation."""
        return self.__repr__()
