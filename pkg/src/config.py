from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Monitoring
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = True

    # Randomness (sampled validation, shuffled policies)
    DEFAULT_SEED: int = 0

    # Performance
    MAX_WORKERS: int = 1  # Sequential processing

    # Algebra
    PRIME_FLOOR: int = 1000  # default prime is the smallest prime above max(n, PRIME_FLOOR)
    EXHAUSTIVE_COPY_LIMIT: int = 100_000
    DEFAULT_SAMPLE_SIZE: int = 500
    FAMILY_EXHAUSTIVE_LIMIT: int = 1_000_000
    FAMILY_SAMPLE_SIZE: int = 10_000

    # Search
    SEARCH_BUDGET: int = 10_000_000  # verification calls
    ISOMORPH_MAX_N: int = 7
    SEARCH_BATCH_SIZE: int = 2_000

    # Tables
    TABLE_CERTIFY_MAX_N: int = 12
    TABLE_ORACLE_MAX_N: int = 6
    TABLE_ORACLE_MAX_BIPARTITE_EDGES: int = 9
    TABLE_ORACLE_BUDGET: int = 200_000

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


settings = Settings()
