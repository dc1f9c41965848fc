# config/settings.py
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging
    log_level: str = "INFO"

    # Desk-scale guards for the exhaustive procedures
    phi_edge_guard: int = 16        # phi_bruteforce edge cap
    earmuff_guard: int = 8          # max_earmuff_bruteforce component cap
    oracle_edge_guard: int = 20     # opt_2vcss_bruteforce edge cap

    # Instance generation
    generation_retries: int = 100
    default_seed: int = 0

    # Batch runner
    workers: int = 1

    # Transformation loops give up after iteration_factor * (m + 1) ** 2 steps
    iteration_factor: int = 4

    class Config:
        env_file = ".env"
        extra = "ignore"  # Allows unrelated keys in .env


settings = Settings()
