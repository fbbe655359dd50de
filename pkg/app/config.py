"""
Configuration settings for the chorded-cycles toolkit
Environment variables are read once at import; pipeline knobs live in PipelineConfig
"""
import os
from pathlib import Path
from typing import List

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Base directory
BASE_DIR = Path(__file__).resolve().parent.parent

DEBUG = os.getenv('DEBUG', 'False') == 'True'

# Get mode (development or production)
MODE = os.getenv("MODE", "development")


def get_env_var(key: str, default: str = None) -> str:
    """Fetch an environment variable and raise an error if it's missing (unless default is provided)."""
    value = os.getenv(key, default)
    if value is None and default is None:
        raise ValueError(f"Missing environment variable: {key}")
    return value


# Output locations
ORACLE_CACHE_DIR = Path(get_env_var("ORACLE_CACHE_DIR", str(BASE_DIR / ".oracle_cache")))
REPORTS_DIR = Path(get_env_var("REPORTS_DIR", str(BASE_DIR / "reports")))

# Search defaults
DEFAULT_SEED = int(get_env_var("DEFAULT_SEED", "0"))
CORPUS_WORKERS = int(get_env_var("CORPUS_WORKERS", "1"))

# Exhaustive subset enumeration cap (2^24 subsets)
EXACT_EXPANSION_LIMIT = int(get_env_var("EXACT_EXPANSION_LIMIT", "24"))

# Oracle cycle enumeration cap
ORACLE_LIMIT_N = int(get_env_var("ORACLE_LIMIT_N", "14"))

PORT = int(os.getenv("PORT", 5000))

# CORS Configuration for the HTTP surface (comma-separated origins)
CORS_ALLOWED_ORIGINS: List[str] = [
    origin.strip()
    for origin in os.getenv("CORS_ALLOWED_ORIGINS", "http://localhost:3000,http://127.0.0.1:3000").split(",")
    if origin.strip()
]
CORS_ALLOW_CREDENTIALS = os.getenv("CORS_ALLOW_CREDENTIALS", "False") == "True"
