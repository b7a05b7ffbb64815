"""
Harness settings for artinlab.

Defaults live on the Settings dataclass, are overlaid by the shipped
config/artinlab.yaml, then by ARTINLAB_* environment variables. CLI flags
override whatever load_settings() returns.
"""

import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "artinlab.yaml"


@dataclass
class Settings:
    """Harness defaults for searches, constants and experiments."""
    search_bound: int = 10**6
    prime_limit: int = 10**6
    d_limit: int = 2**14
    m_max: int = 30
    theta: float = 0.24
    eta: float = 0.4
    delta_max_prime: int = 10**4
    threads: int = 1
    block_size: int = 2**16
    strict_exhaustion: bool = False
    log_level: str = "WARNING"

    # Experiment tolerances (finite-size harness defaults)
    mean_rel_tol: float = 0.01
    sweep_low: float = 0.8
    sweep_high: float = 1.2


def _parse_bool(value: object) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("true", "1", "yes")


# env var -> (field, parser)
_ENV_OVERRIDES = {
    "ARTINLAB_SEARCH_BOUND": ("search_bound", int),
    "ARTINLAB_PRIME_LIMIT": ("prime_limit", int),
    "ARTINLAB_THREADS": ("threads", int),
    "ARTINLAB_STRICT_EXHAUSTION": ("strict_exhaustion", _parse_bool),
    "ARTINLAB_LOG_LEVEL": ("log_level", str.upper),
}


def _apply_yaml(settings: Settings, config_path: Path) -> None:
    try:
        with open(config_path) as f:
            yaml_config = yaml.safe_load(f) or {}

        known = {f.name for f in fields(Settings)}
        for section in ("search", "constants", "experiments", "runtime"):
            for key, value in (yaml_config.get(section) or {}).items():
                if key not in known:
                    logger.warning(f"Unknown setting '{section}.{key}' in {config_path}")
                    continue
                current = getattr(settings, key)
                parse = _parse_bool if isinstance(current, bool) else type(current)
                setattr(settings, key, parse(value))
    except Exception as e:
        logger.warning(f"Failed to load artinlab config from {config_path}: {e}")


def load_settings(config_path: Optional[Path] = None) -> Settings:
    """Load settings from the shipped YAML defaults and ARTINLAB_* variables."""
    settings = Settings()

    config_path = config_path or DEFAULT_CONFIG_PATH
    if config_path.exists():
        _apply_yaml(settings, config_path)

    for env_name, (field_name, parse) in _ENV_OVERRIDES.items():
        raw = os.getenv(env_name)
        if not raw:
            continue
        try:
            setattr(settings, field_name, parse(raw))
        except ValueError:
            logger.warning(f"Ignoring malformed {env_name}={raw!r}")

    return settings
