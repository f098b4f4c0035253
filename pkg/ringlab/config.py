# ringlab/config.py
"""
Runtime settings: defaults, optional key-value config file, RINGLAB_* env vars
"""
import os
import logging
from typing import Optional, Dict, Any

from dotenv import load_dotenv, dotenv_values
from pydantic import BaseModel, Field

load_dotenv()

logger = logging.getLogger(__name__)

ENV_PREFIX = "RINGLAB_"


class Settings(BaseModel):
    """All tunables of the library, CLI and API"""

    # ===================== SIZE BUDGETS =====================
    table_threshold: int = Field(4096, gt=0)  # above this, rings stay rule-backed
    rule_budget: int = Field(2 ** 20, gt=0)
    exhaustive_validation_limit: int = Field(256, gt=0)
    validation_samples: int = Field(100_000, gt=0)
    realize_alpha_limit: int = Field(4, gt=0)
    lattice_join_cap: int = Field(2 ** 16, gt=0)
    iso_exact_limit: int = Field(64, gt=0)
    power_cycle_limit: int = Field(100_000, gt=0)

    # ===================== TIME BUDGETS (seconds) =====================
    instance_seconds: float = Field(5.0, ge=0)  # per field or matrix check
    corpus_seconds: float = Field(60.0, ge=0)  # unitalization corpus

    # ===================== WITNESS BOUNDS =====================
    localized_degree: int = Field(6, ge=0)
    localized_coefficient: int = Field(32, ge=0)
    merge_degree: int = Field(4, ge=0)
    merge_coefficient: int = Field(10, ge=0)
    witness_search_limit: int = Field(200_000, gt=0)

    # ===================== OUTPUT =====================
    seed: int = 0
    output_format: str = "json"
    log_level: str = "WARNING"


def _read_overrides(source: Dict[str, Optional[str]], require_prefix: bool = False) -> Dict[str, Any]:
    """Pick RINGLAB_* (or, in config files, bare field) keys that name a settings field"""
    overrides: Dict[str, Any] = {}
    for key, value in source.items():
        if value is None:
            continue
        if key.upper().startswith(ENV_PREFIX):
            name = key[len(ENV_PREFIX):]
        elif require_prefix:
            continue
        else:
            name = key
        name = name.lower()
        if name in Settings.model_fields:
            overrides[name] = value
    return overrides


def load_settings(config_path: Optional[str] = None, **flags: Any) -> Settings:
    """
    Build settings from defaults < config file < environment < explicit flags
    """
    values: Dict[str, Any] = {}

    path = config_path or os.getenv(f"{ENV_PREFIX}CONFIG")
    if path:
        if not os.path.exists(path):
            raise FileNotFoundError(f"Config file not found: {path}")
        values.update(_read_overrides(dotenv_values(path)))
        logger.info(f"Loaded config file {path}")

    values.update(_read_overrides(dict(os.environ), require_prefix=True))
    values.update({k: v for k, v in flags.items() if v is not None})

    return Settings(**values)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def use_settings(settings: Settings) -> Settings:
    """Replace the process-wide settings (CLI flags, API requests, tests)"""
    global _settings
    _settings = settings
    return settings
