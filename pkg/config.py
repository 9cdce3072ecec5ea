"""
Application configuration using environment variables.

Every setting has a default, so nothing has to be exported before running
the toolkit. Command-line flags override these values per invocation.
"""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables."""

    # Homology
    prime: int = Field(default=2, alias="PQM_PRIME")
    max_degree: int = Field(default=2, alias="PQM_MAX_DEGREE")

    # Reduction engine
    side: str = Field(default="lower", alias="PQM_SIDE")
    verify_steps: bool = Field(default=False, alias="PQM_VERIFY_STEPS")
    workers: int = Field(default=1, alias="PQM_WORKERS")

    # Exhaustive interleaving search
    oracle_dim_cap: int = Field(default=6, alias="PQM_ORACLE_DIM_CAP")
    oracle_max_t: int = Field(default=5, alias="PQM_ORACLE_MAX_T")
    oracle_search_cap: int = Field(
        default=4096, alias="PQM_ORACLE_SEARCH_CAP"
    )

    # Instance generators
    generator_max_elements: int = Field(
        default=64, alias="PQM_GENERATOR_MAX_ELEMENTS"
    )
    generator_max_t: int = Field(default=16, alias="PQM_GENERATOR_MAX_T")

    # File paths
    data_dir: Path = Field(default=Path("data"), alias="PQM_DATA_DIR")

    # Development settings
    log_level: str = Field(default="WARNING", alias="PQM_LOG_LEVEL")

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
    }


# Global settings instance
settings = Settings()
