import os
import logging
from dotenv import load_dotenv
from colorlog import ColoredFormatter

from tripartite_hardy.utils.errors import MalformedEnvironmentError

# Load environment variables from .env file
load_dotenv()

# Constants for environment variable names
HW_SEED_VAR = "HW_SEED"
HW_LOG_LEVEL_VAR = "HW_LOG_LEVEL"
HW_TOL_ZERO_VAR = "HW_TOL_ZERO"
HW_TOL_POS_VAR = "HW_TOL_POS"
HW_LP_TOL_VAR = "HW_LP_TOL"
HW_PRODUCT_RESTARTS_VAR = "HW_PRODUCT_RESTARTS"
HW_MAXPROB_RESTARTS_VAR = "HW_MAXPROB_RESTARTS"


def _env(name, default, cast):
    raw = os.getenv(name)

    if raw is None or raw == "":
        return default

    try:
        return cast(raw)
    except ValueError:
        # validate_env rejects the value before any command runs
        logging.warning(f"Ignoring malformed {name}={raw!r}; using {default!r}")
        return default


# Configuration class
class Config:
    SEED: int = _env(HW_SEED_VAR, 0, int)
    LOG_LEVEL: str = _env(HW_LOG_LEVEL_VAR, "WARNING", str).upper()
    TOL_ZERO: float = _env(HW_TOL_ZERO_VAR, 1e-9, float)
    TOL_POS: float = _env(HW_TOL_POS_VAR, 1e-12, float)
    LP_TOL: float = _env(HW_LP_TOL_VAR, 1e-7, float)
    PRODUCT_RESTARTS: int = _env(HW_PRODUCT_RESTARTS_VAR, 24, int)
    MAXPROB_RESTARTS: int = _env(HW_MAXPROB_RESTARTS_VAR, 200, int)

    @classmethod
    def validate_env(cls):
        typed_vars = {
            HW_SEED_VAR: int,
            HW_TOL_ZERO_VAR: float,
            HW_TOL_POS_VAR: float,
            HW_LP_TOL_VAR: float,
            HW_PRODUCT_RESTARTS_VAR: int,
            HW_MAXPROB_RESTARTS_VAR: int,
        }

        malformed_vars = []
        for var, cast in typed_vars.items():
            raw = os.getenv(var)
            if not raw:
                continue
            try:
                cast(raw)
            except ValueError:
                malformed_vars.append(var)

        level = os.getenv(HW_LOG_LEVEL_VAR)
        if level and not isinstance(logging.getLevelName(level.upper()), int):
            malformed_vars.append(HW_LOG_LEVEL_VAR)

        if malformed_vars:
            raise MalformedEnvironmentError(
                f"Malformed environment variables: {', '.join(malformed_vars)}",
                verboseMessage={var: os.getenv(var) for var in malformed_vars},
            )


# Define color format for log messages
formatter = ColoredFormatter(
    "%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
    log_colors={
        "DEBUG": "cyan",
        "INFO": "green",
        "WARNING": "yellow",
        "ERROR": "red",
    },
)

# Logs go to stderr so stdout reports stay deterministic
handler = logging.StreamHandler()
handler.setFormatter(formatter)


def configure_logging(level=None):
    """Attach the colored stderr handler to the root logger."""
    logging.basicConfig(level=level or Config.LOG_LEVEL, handlers=[handler], force=True)
