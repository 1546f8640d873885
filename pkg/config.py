import os

from utils.locales import Locale

# 版本
VERSION = "1.0.0"
SCHEMA_VERSION = 1

# 语言
LANG = os.getenv("REPORT_LANG", "en")
locale = Locale(LANG)

# 目录
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
LOG_DIR = os.getenv("LOG_DIR", os.path.join(BASE_DIR, "logs"))
DATABASE_DIR = os.getenv("DATABASE_DIR", os.path.join(BASE_DIR, "database"))
OUTPUT_DIR = os.getenv("OUTPUT_DIR", os.path.join(BASE_DIR, "output"))
DATA_DIR = os.getenv("DATA_DIR", os.path.join(BASE_DIR, "data"))
KNOWN_ANSWERS_FILE = os.path.join(DATA_DIR, "known_answers.json")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# 同伦追踪
GAMMA_SEED = int(os.getenv("GAMMA_SEED", "1"))
STEP_INIT = float(os.getenv("STEP_INIT", "0.05"))
STEP_MIN = float(os.getenv("STEP_MIN", "1e-8"))
STEP_MAX = float(os.getenv("STEP_MAX", "0.1"))
CORRECTOR_TOL = float(os.getenv("CORRECTOR_TOL", "1e-10"))
ACCEPT_TOL = float(os.getenv("ACCEPT_TOL", "1e-8"))
DEDUP_TOL = float(os.getenv("DEDUP_TOL", "1e-6"))
INFINITY_THRESHOLD = float(os.getenv("INFINITY_THRESHOLD", "1e8"))
MAX_STEPS = int(os.getenv("MAX_STEPS", "10000"))
END_ZONE = float(os.getenv("END_ZONE", "1e-5"))
REFINE_PRECISION = os.getenv("REFINE_PRECISION", "extended").lower()
PREDICTOR = os.getenv("PREDICTOR", "rk4").lower()
TRACKING = os.getenv("TRACKING", "projective").lower()
BEZOUT_BUDGET = int(os.getenv("BEZOUT_BUDGET", "50000"))
EXTENDED_DPS = int(os.getenv("EXTENDED_DPS", "34"))
WORKERS = int(os.getenv("WORKERS", "1"))
if WORKERS < 1:
    raise ValueError("WORKERS must be a positive integer")

# 不可约性检验
PRIME_BOUND = int(os.getenv("PRIME_BOUND", "200"))

# 普查缓存
CENSUS_CACHE = os.getenv("CENSUS_CACHE", "False").lower() == "true"
CENSUS_DB = os.path.join(DATABASE_DIR, "census.db")
