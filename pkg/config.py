# Pipeline settings
# Override any of these in the environment or in a .env file at the project root

import os
from dotenv import load_dotenv

from core.errors import ConfigError

# Load environment variables from .env file
load_dotenv()


def _env_int(name, default, minimum=None):
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}, got {value}")
    return value


def _env_float(name, default):
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{name} must be a number, got {raw!r}") from None


# Parallelism and reproducibility
DEFAULT_THREADS = _env_int("CLIQUETFIDF_THREADS", 1, minimum=1)
DEFAULT_SEED = _env_int("CLIQUETFIDF_SEED", 0)

# Memory guards (unset clique budget = unlimited)
CLIQUE_BUDGET = _env_int("CLIQUETFIDF_CLIQUE_BUDGET", None, minimum=1)
DENSE_MAX_VERTICES = _env_int("CLIQUETFIDF_DENSE_MAX_VERTICES", 15000, minimum=1)

# Clustering
REFINE_WINDOW = _env_int("CLIQUETFIDF_REFINE_WINDOW", 5, minimum=0)
AUTOK_EXHAUSTIVE_MAX = _env_int("CLIQUETFIDF_AUTOK_EXHAUSTIVE_MAX", 128, minimum=0)
KMEANS_INIT = _env_int("CLIQUETFIDF_KMEANS_INIT", 4, minimum=1)
KMEANS_MAX_ITER = _env_int("CLIQUETFIDF_KMEANS_MAX_ITER", 300, minimum=1)
KMEANS_TOL = _env_float("CLIQUETFIDF_KMEANS_TOL", 1e-4)

# Logging
LOG_LEVEL = os.getenv("CLIQUETFIDF_LOG_LEVEL", "WARNING").upper()

# Files
PROJECT_DIR = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.path.join(PROJECT_DIR, "data")
TOY_GRAPH_PATH = os.path.join(DATA_DIR, "toy_graph.txt")
