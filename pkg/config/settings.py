import os
import logging
from dotenv import load_dotenv

from config.constants import (
    LOG_LEVEL,
    QUADRATURE_DEFAULT_NODES,
    QUADRATURE_DEFAULT_TOLERANCE,
)

load_dotenv()

logger = logging.getLogger(__name__)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"⚠️  {name}={raw!r} bukan integer, pakai default {default}")
        return default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"⚠️  {name}={raw!r} bukan angka, pakai default {default}")
        return default


def _env_flag(name: str) -> bool:
    return os.getenv(name, '').strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Konfigurasi default untuk eksperimen"""

    # ========== MONTE CARLO ==========
    DEFAULT_SEED = _env_int('AN_SEED', 20190417)
    DEFAULT_TRIALS = _env_int('AN_TRIALS', 100_000)
    DEFAULT_JOBS = _env_int('AN_JOBS', 1)
    if DEFAULT_SEED < 0:
        logger.warning("⚠️  AN_SEED negatif, pakai nilai absolut")
        DEFAULT_SEED = abs(DEFAULT_SEED)
    if DEFAULT_JOBS < 1:
        logger.warning("⚠️  AN_JOBS harus >= 1, pakai 1")
        DEFAULT_JOBS = 1

    # ========== QUADRATURE ==========
    QUAD_TOLERANCE = _env_float('AN_QUAD_TOLERANCE', QUADRATURE_DEFAULT_TOLERANCE)
    QUAD_NODES = _env_int('AN_QUAD_NODES', QUADRATURE_DEFAULT_NODES)
    if QUAD_TOLERANCE <= 0:
        logger.warning("⚠️  AN_QUAD_TOLERANCE harus positif, pakai default")
        QUAD_TOLERANCE = QUADRATURE_DEFAULT_TOLERANCE
    if QUAD_NODES < 8:
        logger.warning("⚠️  AN_QUAD_NODES minimal 8, pakai default")
        QUAD_NODES = QUADRATURE_DEFAULT_NODES

    # ========== FILES ==========
    RECIPES_FILE = os.getenv('AN_RECIPES_FILE', 'recipes/scenarios.ini')
    OUTPUT_DIR = os.getenv('AN_OUTPUT_DIR', 'results')
    RECORD_WALL_TIME = _env_flag('AN_RECORD_WALL_TIME')

    if not os.path.exists(RECIPES_FILE):
        logger.warning(f"⚠️  File recipe tidak ditemukan: {RECIPES_FILE}")
        logger.warning("Subcommand sweep butuh --recipe yang valid.")

    # ========== LOGGING ==========
    LOG_LEVEL = os.getenv('AN_LOG_LEVEL', LOG_LEVEL).upper()
