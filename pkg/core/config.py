"""Configuration for pottsmaps runs"""

import os
import logging
from typing import Dict, Any
from pathlib import Path

# Load environment variables from .env file
try:
    from dotenv import load_dotenv
    env_path = Path(__file__).parent.parent / ".env"
    load_dotenv(dotenv_path=env_path)
except ImportError:
    # python-dotenv not installed, skip .env loading
    pass

# Initialize observability if enabled
try:
    from observability.setup import initialize_from_env
    initialize_from_env()
except ImportError:
    logging.basicConfig(level=logging.INFO)

# Truncation order used when a command does not name one
DEFAULT_ORDER = int(os.getenv("POTTS_DEFAULT_ORDER", "10"))

# Brute-force enumeration grows very fast with the number of edges
ENUMERATION_HARD_CAP = 4
ENUMERATION_MAX_EDGES = min(int(os.getenv("POTTS_ENUMERATION_MAX_EDGES", "3")), ENUMERATION_HARD_CAP)

# Lifetime of memoized solver states, in seconds
CACHE_TTL = int(os.getenv("POTTS_CACHE_TTL", "3600"))

SLOW_TESTS = os.getenv("POTTS_SLOW_TESTS", "false").lower() == "true"

SCHEMA_VERSION = "1"


def get_config() -> Dict[str, Any]:
    """Get application configuration"""
    return {
        "default_order": DEFAULT_ORDER,
        "enumeration_max_edges": ENUMERATION_MAX_EDGES,
        "enumeration_hard_cap": ENUMERATION_HARD_CAP,
        "cache_ttl": CACHE_TTL,
        "slow_tests": SLOW_TESTS,
        "schema_version": SCHEMA_VERSION,
    }
