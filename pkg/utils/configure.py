"""
Access to configure.yml.

Every accessor returns None for a missing key so call sites can write
`X = get_correction_config("KEY") or default`.
"""

import os
from functools import lru_cache
from typing import Any, Optional

import yaml

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_FILE = os.path.join(REPO_ROOT, "configure.yml")


@lru_cache(maxsize=None)
def load_config(path: str = CONFIG_FILE) -> dict:
    """
    Load the YAML configuration.

    Args:
        path: Path of the configuration file

    Returns:
        Parsed configuration, empty when the file is missing
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return yaml.safe_load(f) or {}
    except FileNotFoundError:
        return {}


def _section_value(section: str, key: str) -> Optional[Any]:
    values = load_config().get(section) or {}
    return values.get(key)


def resolve_path(path: str) -> str:
    """Resolve a repository-relative path from the configuration."""
    return path if os.path.isabs(path) else os.path.join(REPO_ROOT, path)


def get_workplace() -> str:
    workplace = load_config().get("WORKPLACE") or "workplace"
    return resolve_path(workplace)


def is_dump_enabled() -> bool:
    return bool(load_config().get("ENABLE_DUMP", True))


def get_correction_config(key: str) -> Optional[Any]:
    return _section_value("CORRECTION", key)


def get_benchmark_config_path(key: str) -> Optional[str]:
    path = _section_value("BENCHMARK", key)
    return resolve_path(path) if path else None


def get_verification_config(key: str) -> Optional[Any]:
    return _section_value("VERIFICATION", key)


def get_verification_config_path(key: str) -> Optional[str]:
    path = _section_value("VERIFICATION", key)
    return resolve_path(path) if path else None


def get_output_file_name(key: str) -> Optional[str]:
    return _section_value("OUTPUT_FILES", key)


def get_thread_count() -> int:
    """
    Worker threads for correction assembly.

    Read from the environment variable named by CORRECTION.THREAD_ENV_VAR;
    defaults to the available parallelism.
    """
    env_var = get_correction_config("THREAD_ENV_VAR") or "ISOCENTER_THREADS"
    raw = os.environ.get(env_var)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{env_var} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1
