import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from .constants import DEFAULT_CONFIG_PATH, THREADS_ENV_VAR
from .errors import ConfigurationError

logger = logging.getLogger(__name__)

# ${VAR} or ${VAR:-default}
_ENV_REFERENCE = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)(?::-([^}]*))?\}")


class ConfigLoader:
    """
    YAML configuration with ${VAR} references resolved from the environment.

    The .env file is read once per loader; variables already set in the
    environment are left alone.
    """

    def __init__(self, config_path: Union[str, Path] = DEFAULT_CONFIG_PATH):
        self.config_path = Path(config_path)
        self._config: Optional[Dict[str, Any]] = None
        load_dotenv()

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], source: Union[str, Path] = "<defaults>") -> "ConfigLoader":
        loader = cls(source)
        loader._config = dict(data)
        return loader

    def load(self) -> Dict[str, Any]:
        try:
            with open(self.config_path, "r") as f:
                text = _ENV_REFERENCE.sub(_resolve_reference, f.read())
        except FileNotFoundError:
            logger.debug(f"Config file not found: {self.config_path}")
            raise
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in {self.config_path}: {e}") from e
        if data is not None and not isinstance(data, dict):
            raise ConfigurationError(f"{self.config_path} must hold a mapping of sections")
        self._config = data or {}
        logger.debug(f"Configuration loaded from {self.config_path}")
        return self._config

    @property
    def config(self) -> Dict[str, Any]:
        if self._config is None:
            self.load()
        return self._config

    def get(self, key_path: str, default: Any = None) -> Any:
        """Dotted lookup, e.g. get('simulation.epsilon_r')."""
        value: Any = self.config
        for key in key_path.split("."):
            if not isinstance(value, dict):
                return default
            value = value.get(key)
        return default if value is None else value

    def section(self, name: str) -> Dict[str, Any]:
        value = self.config.get(name) or {}
        if not isinstance(value, dict):
            raise ConfigurationError(f"config section '{name}' must be a mapping")
        return value


def _resolve_reference(match: "re.Match") -> str:
    name, default = match.group(1), match.group(2)
    value = os.getenv(name)
    if value is not None:
        return value
    return default if default is not None else match.group(0)


_config_loader: Optional[ConfigLoader] = None


def get_config() -> ConfigLoader:
    """Process-wide loader for the default config path."""
    global _config_loader
    if _config_loader is None:
        _config_loader = ConfigLoader()
    return _config_loader


def build_sim_config(base: Optional[Mapping[str, Any]] = None,
                     overrides: Optional[Mapping[str, Any]] = None):
    """
    Merge the `simulation` section of a config with explicit overrides.

    Overrides whose value is None are ignored. Any value that breaks a SimConfig
    invariant raises ConfigurationError.
    """
    from ..models.schemas import SimConfig

    values = dict(base or {})
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    try:
        return SimConfig(**values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigurationError(f"invalid simulation settings: {problems}") from e


def resolve_threads(configured: Any = 0) -> int:
    """
    Number of worker threads for the engine.

    QCAFORGE_THREADS wins over the configured value; 0 means one per CPU.
    """
    raw = os.getenv(THREADS_ENV_VAR)
    value = raw if raw not in (None, "") else configured
    try:
        threads = int(value if value is not None else 0)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be an integer, got {value!r}")
    if threads < 0:
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be >= 0, got {threads}")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads
