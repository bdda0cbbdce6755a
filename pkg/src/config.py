import os

from dotenv import load_dotenv

load_dotenv()

# --- SYSTEM DIRECTORIES ---
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_DIR = os.path.join(BASE_DIR, 'data')
OUTPUT_DIR = os.path.join(DATA_DIR, 'outputs')

# --- GROUND-SET CAPS ---
# Whole-family work is 2^(2^n) in the worst case, so these are hard errors.
MAX_SUBSET_N = 16          # SubsetMask / single-table operations
MAX_FAMILY_N = 6           # Family bit-vectors (64 members)
MAX_STACK_ENUM_N = 4       # enumerate_stacks / enumerate_grills (166 stacks at n=4)
MAX_FILTER_ENUM_N = 6
MAX_BRUTE_FORCE_N = 4      # 2^(2^4) = 65,536 families

# --- SEMIGROUP ENUMERATION ---
MAX_TABLE_ORDER = 16
MAX_ENUM_ORDER_ISO = 5     # 5! = 120 relabelings per table
MAX_ENUM_ORDER_RAW = 3
MAX_SEARCH_ORDER = 5

# --- THEOREM HARNESS ---
PROP_2_4_MAX_N = 3
BRUTE_FORCE_N_DEFAULT = 2  # every family on this many points is scanned by the set-family claims
STACK_LAYER_MAX_ORDER = 3  # stack-pair universes, one table per relabeling class

# --- WINDOW DEMOS ---
MAX_HORIZON = 10 ** 8
MAX_LITERAL_EMBED_M = 12   # subset sweep is 2^m

# --- RUNTIME ---
DEFAULT_JOBS = int(os.getenv("SGSIZE_JOBS", "1"))
LOG_LEVEL = os.getenv("SGSIZE_LOG_LEVEL", "WARNING").upper()
