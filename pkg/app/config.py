from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    # Logging
    LOG_LEVEL: str = "INFO"

    # Output
    OUTPUT_DIR: str = "./results"

    # Sweep engine (1 = run traces one after another)
    SWEEP_WORKERS: int = 4

    # Verification
    VERIFY_TOLERANCE: float = 1e-9
    IDENTITY_TOLERANCE: float = 1e-12
    VERIFY_SEED: int = 42
    VERIFY_CASES: int = 1000
    VERIFY_GRID_POINTS: int = 100

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    return Settings()
