"""
Runtime configuration read from environment variables.

The CLI calls load_dotenv() before the first load_settings(), so values may
also come from a local .env file.
"""

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")


def _env_flag(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.lower() in ("1", "true", "yes")


@dataclass(frozen=True)
class Settings:
    """
    Budgets and defaults shared by the library and the CLI.

    Attributes:
        grid_budget: Maximum number of cells the grid oracle may allocate
        exhaustive_budget: Maximum number of subsets exhaustive HSSP may enumerate
        ie_max_points: Largest front the inclusion-exclusion oracle accepts
        workers: Worker-pool size for verify/bench (1 runs in-process)
        log_level: Logging level name used by the CLI
        trace: Whether HSSP solvers record per-step traces by default
    """
    grid_budget: int = 100_000_000
    exhaustive_budget: int = 2_000_000
    ie_max_points: int = 20
    workers: int = 1
    log_level: str = "WARNING"
    trace: bool = True


def load_settings() -> Settings:
    """Build Settings from HVX_* environment variables, falling back to defaults."""
    defaults = Settings()
    return Settings(
        grid_budget=_env_int("HVX_GRID_BUDGET", defaults.grid_budget),
        exhaustive_budget=_env_int("HVX_EXHAUSTIVE_BUDGET", defaults.exhaustive_budget),
        ie_max_points=_env_int("HVX_IE_MAX_POINTS", defaults.ie_max_points),
        workers=max(1, _env_int("HVX_WORKERS", defaults.workers)),
        log_level=os.getenv("HVX_LOG_LEVEL", defaults.log_level).upper(),
        trace=_env_flag("HVX_TRACE", defaults.trace),
    )
