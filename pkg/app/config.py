import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Settings(BaseSettings):
    # Service
    API_CONTEXT: str = "tam"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
    SEARCH_LOG_LEVEL: str = "INFO"  # cuts/regions/spans/arcs searches; DEBUG traces every node
    REPORTS_DIR: str = "logs"  # ProcessLogger output, relative to project root

    # Search limits
    SEARCH_BUDGET: int = 1_000_000  # Node budget shared by every exhaustive search
    BFS_MAX_STATES: int = 5000      # Producible-assembly oracle state cap
    BOX_MARGIN: int = 2             # Tiles added around the analysis box

    # Harness
    RNG_SEED: int = 0
    VERIFY_SAMPLES: int = 200
    MAX_PATH_LENGTH: int = 12
    EXHAUSTIVE_MAX_TILES: int = 2
    EXHAUSTIVE_MAX_GLUES: int = 3

    # Fixtures
    FIXTURES_DIR: str = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

    class Config:
        env_file = ".env"
        extra = "ignore"  # Allow extra fields in .env file

settings = Settings()
