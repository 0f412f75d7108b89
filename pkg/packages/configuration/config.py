"""
Application Configuration
Contains only configuration values and constants
Logic lives in config_manager.py
"""

import os
from dotenv import load_dotenv

load_dotenv()

# Locations
DATA_DIR = os.getenv("NOIR_DATA_DIR", "./data")
OUTPUT_DIR = os.getenv("NOIR_OUTPUT_DIR", "./artifacts")
CONFIG_DIR = "./config"

# Input file names inside DATA_DIR
LINKS_FILE = "links.csv"
TAGS_FILE = "tags.csv"
BASICS_FILE = "title.basics.tsv"

# Shipped edit tables and stoplists inside CONFIG_DIR
ID_OVERRIDES_FILE = "id_overrides.csv"
STEM_OVERRIDES_FILE = "stem_overrides.csv"
PERSON_NAME_STOPLIST_FILE = "stoplist_person_names.txt"
NO_INFORMATION_STOPLIST_FILE = "stoplist_no_information.txt"

# Ingest
MALFORMED_ROW_LIMIT = 0.01   # abort a file when more than 1% of its rows are malformed
NARRATIVE_TITLE_TYPES = ("movie", "tvMovie")
DOCUMENTARY_GENRE = "Documentary"
IMDB_MISSING = "\\N"
POSITIVE_GENRE = "Film-Noir"

# Tag normalization
MIN_USERS = 10   # tags applied by this many users or fewer are dropped
MIN_FILMS = 10   # tags applied to this many films or fewer are dropped
DEFAULT_STEM_OVERRIDES = {
    "heroine": "heroine",
}

# Tag clustering
EXACT_PARTITION_LIMIT = 15   # components up to this size are solved exactly
COSINE_TIE_TOLERANCE = 1e-12
MODULARITY_TOLERANCE = 1e-12

# One-class nearest neighbors
MIN_TAGS = 5
NEIGHBOR_COUNT = 3
MAX_DISTANCE = 0.5
DISTANCE_SENTINEL = 0.55   # "no bound" on a neighbor distance
UNIT_NORM_TOLERANCE = 1e-9
IDENTICAL_COSINE_TOLERANCE = 1e-13

# Threshold cross-validation
FOLD_COUNT = 5
REPETITIONS = 100
DEFAULT_SEED = int(os.getenv("NOIR_SEED", "20200121"))
RATIO_GRID = (0.80, 1.50, 0.05)
DISTANCE_GRID = (0.25, 0.55, 0.05)
REFINE_HALF_WIDTH = 0.05
REFINE_STEP = 0.01
MAX_RESAMPLE_ATTEMPTS = 50
# Published θ; tools/full_dataset_check.py compares a run's θ with it
REFERENCE_THRESHOLD = (1.26, 0.43, 0.43, 0.43)

# Parallelism
WORKERS = int(os.getenv("NOIR_WORKERS", "1"))

# Reports
ERA_CUTOFF = 1960
TOP_K = 5
NOIR_INDICATOR_TAGS = ("noir", "film noir", "neo noir", "noir thriller")

# Pipeline stages, in execution order
STAGES = ("ingest", "normalize", "cluster", "features", "select-threshold", "classify", "report")
