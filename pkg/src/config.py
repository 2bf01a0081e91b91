import os
from dotenv import load_dotenv
from pathlib import Path

# Load environment variables from .env file
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

# Enumeration bounds (integers are unbounded in arithmetic)
MININT = int(os.getenv("BCHECK_MININT", "-128"))
MAXINT = int(os.getenv("BCHECK_MAXINT", "127"))

# Caps that turn blow-ups into errors
MAX_ENUM = int(os.getenv("BCHECK_MAX_ENUM", str(2 ** 16)))
MAX_SET_SIZE = int(os.getenv("BCHECK_MAX_SET_SIZE", str(2 ** 20)))

# Number of elements given to every deferred set
DEFERRED_SET_CARD = int(os.getenv("BCHECK_DEFERRED_CARD", "2"))

QUICK_NARROW = os.getenv("BCHECK_QUICK_NARROW", "1").lower() not in ("0", "false", "no", "off")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
