"""Application configuration"""

import os
import logging
from pathlib import Path
from typing import Optional

BASE_DIR = Path(__file__).resolve().parent.parent
SCHEMA_DIR = BASE_DIR / "schemas"

LOG_LEVEL = os.getenv("RUBY_CODE_LOG_LEVEL", "WARNING")

APP_NAME = "Ruby Color Code"
APP_VERSION = "0.1.0"

MAX_QUBITS = 24
DENSE_MAX_QUBITS = 12
LOCAL_SOLVE_MAX_SITES = 64
STABILIZER_SPECTRUM_MAX_RANK = 22

DEFAULT_TOL = 1e-10
DEFAULT_SEED = 1234
DEFAULT_CLUSTER_TOL = 1e-8
DEFAULT_EIGS = 12
DEFAULT_EXTRA_EIGS = 4
MAX_ARNOLDI_ITERATIONS = 20000

# Colour labels double as face colours (colour code) and link colours (interactions).
COLORS = ("red", "green", "blue")

INTERACTIONS = {
    "red": "x",
    "green": "y",
    "blue": "z",
}

SITES_PER_CELL = 18
TRIANGLES_PER_CELL = 6
HEXAGONS_PER_CELL = 3

TASKS = ("validate", "ioms", "logicals", "code", "spectrum", "compare-effective")

# Effective color-code couplings at ninth order in the strong-coupling expansion.
EFFECTIVE_KZ_PREFACTOR = 3 / 8
EFFECTIVE_KXY_PREFACTOR = 55489 / 13824
STRONG_COUPLING_RATIO = 0.2

COMPARE_MAX_TRIANGLES = 6
COMPARE_PATTERN_TOLERANCE = 0.20
COMPARE_GAP_FACTOR = 10.0
COMPARE_FALLBACK_T = 0.03
COMPARE_TOL = 1e-13


def configure_logging(level: Optional[str] = None) -> None:
    """Install a single stderr handler at the configured verbosity."""
    logging.basicConfig(
        level=(level or LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
