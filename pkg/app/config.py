"""
Configuration settings for Alliance Lab.
Uses Pydantic Settings for environment variable management.
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "Alliance Lab"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Server
    HOST: str = "0.0.0.0"
    PORT: int = 8000

    # Redis (Celery broker and result backend)
    REDIS_URL: str = "redis://localhost:6379"

    # Exact search
    SEARCH_BUDGET: int = 100_000_000  # nodes per solve
    VERIFY_BUDGET: int = 2_000_000  # nodes per solve inside the theorem harness
    THREADS: int = 1
    SEED: int = 0

    # Spectral
    SPECTRAL_TOL: float = 1e-9
    MU_DECIMALS: int = 9
    GUARD_BAND: float = 1e-7

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# Create settings instance
settings = Settings()
