from pydantic_settings import BaseSettings
from typing import List, Optional


class Settings(BaseSettings):
    # API Configuration
    API_V1_STR: str = "/api/v1"
    PROJECT_NAME: str = "k-Chord Pancyclicity Engine"
    VERSION: str = "0.1.0"
    DESCRIPTION: str = "Exact solver, verifier and bounds engine for k-chord pancyclic chord diagrams"

    # Server Configuration
    HOST: str = "localhost"
    PORT: int = 8000

    # CORS Configuration
    CORS_ORIGINS: List[str] = ["http://localhost:3000", "http://localhost:8000"]

    # Rate Limiting
    RATE_LIMIT_PER_MINUTE: int = 60

    # Logging
    LOG_LEVEL: str = "INFO"

    # Cycle enumeration
    CHORD_LIMIT: int = 24

    # Search
    SEARCH_MAX_P: int = 13
    SEARCH_TIME_LIMIT: Optional[float] = None
    SEARCH_WORKERS: int = 1
    API_SEARCH_MAX_N: int = 9

    # Small-instance oracles
    ORACLE_MAX_N: int = 9
    EMPIRICAL_MAX_N: int = 9
    EMPIRICAL_MAX_P: int = 6

    # Relativity
    RELATIVITY_MAX_N: int = 16
    WITNESS_MAX_N: int = 10

    # Table reproduction
    TABLE_N_MAX: int = 13
    TABLE_K_MAX: int = 11
    TABLE_TIME_LIMIT: float = 60.0
    TABLE_REFERENCE_FILE: str = "data/table1.json"

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "allow"


settings = Settings()
