# src/config/settings.py
from pathlib import Path

# =================================================
# PROJECT ROOT
# =================================================
PROJECT_ROOT = Path(__file__).resolve().parents[2]

# =================================================
# LOGGING
# =================================================
LOG_LEVEL = "INFO"
LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"

# =================================================
# HYPERVECTOR CORE
# =================================================
DEFAULT_DIMENSION = 8192
DEFAULT_SEED = 42

# Binary vector container ("HDHV")
HV_MAGIC = b"HDHV"
HV_FORMAT_VERSION = 1

# =================================================
# SCALAR ENCODING
# =================================================
DEFAULT_LEVELS = 26              # intensities 0..25
DEFAULT_PROXIMITY = 0.03         # per-step flip probability (nonlinear mode)
DEFAULT_ENCODER_MODE = "nonlinear"

# ---- Velocities ----
DEFAULT_VELOCITY_BINS = 21
DEFAULT_VELOCITY_RANGE = (-1.0, 1.0)   # pixels per millisecond

# =================================================
# EVENT CAMERA (SYNTHETIC)
# =================================================
DEFAULT_GRID_WIDTH = 32
DEFAULT_GRID_HEIGHT = 24
DEFAULT_INTERVAL_US = 50_000           # time-image window
DEFAULT_EVENT_RATE = 2_000.0           # events per second per edge pixel

# =================================================
# ASSOCIATIVE MEMORY
# =================================================
DEFAULT_MEMORY_MODE = "bundled"
MEMORY_MODES = ("bundled", "tabular")
DEFAULT_REJECT_THRESHOLD = 0.47

# Model container ("HDAM")
AM_MAGIC = b"HDAM"
AM_FORMAT_VERSION = 1

# ---- Sensorimotor sweep ----
SENSORIMOTOR_PAIR_COUNTS = (1, 5, 11, 21, 51)
SENSORIMOTOR_UNKNOWN_PROBES = 1000

# =================================================
# SEQUENCE MEMORY
# =================================================
SEQUENCE_PAIR_COUNTS = (1, 3, 5, 9)
SEQUENCE_CODEBOOK_SIZE = 100

# =================================================
# CAPACITY
# =================================================
DEFAULT_N_MAX = 51
DEFAULT_P_VALUES = (0.0, 0.1, 0.2, 0.3)
DEFAULT_TRIALS = 100
DEFAULT_NOISE_TARGET = "component"
NOISE_TARGETS = ("component", "bundle")

# Exact integer binomials up to this n, log-space above
EXACT_BINOMIAL_MAX_N = 63
EXHAUSTIVE_MAX_N = 15

# Discrepancy table for the fractional-index form
FORM_ROUNDING = "ceil"
FORM_COMPARE_N_MAX = 21

# =================================================
# BLOOM FILTER (SPARSE VSA)
# =================================================
BLOOM_DIMENSION = 8192
BLOOM_K = 7
BLOOM_INSERTED = 800
BLOOM_NEGATIVE_QUERIES = 10_000
BLOOM_HASH_SEEDS = (0x9E3779B1, 0x85EBCA77)

# =================================================
# PARALLELISM
# =================================================
N_JOBS = 1                     # joblib workers; -1 uses every core
PARALLEL_BACKEND = "loky"

# =================================================
# RESULTS
# =================================================
RESULTS_DIR = PROJECT_ROOT / "results"

HEATMAP_RESULTS_DIR = RESULTS_DIR / "heatmap"
HEATMAP_CSV_PATH = HEATMAP_RESULTS_DIR / "intensity_heatmap.csv"

CAPACITY_RESULTS_DIR = RESULTS_DIR / "capacity"
CAPACITY_CSV_PATH = CAPACITY_RESULTS_DIR / "capacity_curves.csv"
CAPACITY_FORMS_CSV_PATH = CAPACITY_RESULTS_DIR / "capacity_forms.csv"

SENSORIMOTOR_RESULTS_DIR = RESULTS_DIR / "sensorimotor"
SENSORIMOTOR_CSV_PATH = SENSORIMOTOR_RESULTS_DIR / "sensorimotor_accuracy.csv"
SENSORIMOTOR_MODEL_PATH = SENSORIMOTOR_RESULTS_DIR / "sensorimotor_memory.hdam"

SEQUENCE_RESULTS_DIR = RESULTS_DIR / "sequence"
SEQUENCE_CSV_PATH = SEQUENCE_RESULTS_DIR / "sequence_recall.csv"

BLOOM_RESULTS_DIR = RESULTS_DIR / "bloom"
BLOOM_CSV_PATH = BLOOM_RESULTS_DIR / "bloom_membership.csv"

# CSV float rendering (fixed so reruns are byte-identical)
CSV_FLOAT_FORMAT = "%.6f"
