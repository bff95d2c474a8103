"""
Settings for the crtool project.

Every tunable is read from the environment (optionally through a .env file)
with a default, so a bare checkout runs without any configuration.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()
# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def _env_bool(name, default):
    return os.getenv(name, str(default)).strip().lower() in ("1", "true", "yes", "on")


# Jet arithmetic
# Four applications of L-bar on a second-derivative expression need degree 6.

DEFAULT_DEGREE = int(os.getenv("CRTOOL_DEGREE", "6"))


# Randomness and parallelism

DEFAULT_SEED = int(os.getenv("CRTOOL_SEED", "0"))
THREADS = int(os.getenv("CRTOOL_THREADS", str(os.cpu_count() or 1)))
SHOW_PROGRESS = _env_bool("CRTOOL_PROGRESS", False)


# Families

ENABLE_CARTAN_MU = _env_bool("CRTOOL_ENABLE_CARTAN_MU", False)


# Umbilic detection thresholds on the normalized residual

CANDIDATE_THRESHOLD = 1e-7
INDETERMINATE_THRESHOLD = 1e-5


# Level-set projection

PROJECTION_TOLERANCE = 1e-13
PROJECTION_MAX_ITER = 50
SAMPLE_RESIDUAL_TOLERANCE = 1e-12


# Umbilic search (Nelder-Mead)

NELDER_MEAD_MAX_ITER = 500
# A start stops once its residual is this fraction of the acceptance tolerance.
NELDER_MEAD_STOP_FRACTION = 1e-2
UMBILIC_DEDUP_DISTANCE = 1e-4


# Scaling fit

SCALING_SPREAD_TOLERANCE = 1e-8


# Logging

LOG_LEVEL = os.getenv("CRTOOL_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "{levelname} {name}: {message}", "style": "{"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        name: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for name in ("crtool", "jets", "hypersurfaces", "invariants", "scanner", "cli")
    },
}
