"""Konstanta aplikasi."""

# Numerics
HERMITIAN_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-10
QUADRATURE_PANEL_ORDER = 16
QUADRATURE_DEFAULT_NODES = 64
QUADRATURE_DEFAULT_TOLERANCE = 1e-9
QUADRATURE_MAX_REFINEMENTS = 12
QUADRATURE_TAIL_FACTOR = 100  # tail bound must fall below tolerance / factor
EULER_MASCHERONI = 0.5772156649

# Correlation
EIGEN_GAP_EPSILON = 1e-6  # relative to sigma_1
DEGENERACY_TOLERANCE = 1e-8

# Wishart
PDF_NEGATIVE_CLAMP = 1e-9
CDF_BOUND_SLACK = 1e-9
GUARD_DIGITS = 20  # decimal digits kept above the estimated cancellation loss
GRADED_PANEL_FLOOR = 1e-3  # first geometric panel edge, relative to sigma_a

# Monte Carlo
MC_BLOCK_TRIALS = 10_000
MIN_SWEEP_TRIALS = 1_000
MIN_VALIDATION_TRIALS = 10_000
VALIDATION_Z_LIMIT = 3.0
RANK_TOLERANCE = 1e-10

# Default scenario (SNR sweep setup)
DEFAULT_T = 6
DEFAULT_R = 4
DEFAULT_E = 4
DEFAULT_SPACING = 0.8
DEFAULT_AOA_DEG = 30.0
DEFAULT_RAS_DEG = 10.0
DEFAULT_SNR_DB = 5.0

# Sweep / CSV
SWEEP_VARIABLES = (
    "snr_db", "r_antennas", "d_bob", "d_eve",
    "aoa_bob", "aoa_eve", "ras_bob", "ras_eve",
)
METHODS = ("exact", "approx", "monte-carlo")
CSV_HEADER = ["variable", "value", "s1", "method", "rate_bits", "stderr", "wall_ms"]
CSV_SIGNIFICANT_DIGITS = 9

# Exit codes
EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_ROW_ERROR = 2

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVEL = "INFO"
