#!/usr/bin/env python3
"""
Configuration Manager
Builds the run configuration from defaults, environment, CLI flags and an
optional YAML key-value file, then validates it.
"""

import logging
from dataclasses import dataclass, field, fields, asdict
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml

from . import config
from ..utils.error_handling import ConfigError

SELECT = "select"

ThresholdSetting = Union[str, Tuple[float, ...]]


def _data_path(name: str) -> Path:
    return Path(config.DATA_DIR) / name


def _config_path(name: str) -> Path:
    return Path(config.CONFIG_DIR) / name


@dataclass
class RunConfig:
    """Every knob of one pipeline run"""
    links_path: Path = field(default_factory=lambda: _data_path(config.LINKS_FILE))
    tags_path: Path = field(default_factory=lambda: _data_path(config.TAGS_FILE))
    basics_path: Path = field(default_factory=lambda: _data_path(config.BASICS_FILE))
    overrides_path: Optional[Path] = field(default_factory=lambda: _config_path(config.ID_OVERRIDES_FILE))
    stem_overrides_path: Optional[Path] = field(default_factory=lambda: _config_path(config.STEM_OVERRIDES_FILE))
    person_stoplist_path: Optional[Path] = field(default_factory=lambda: _config_path(config.PERSON_NAME_STOPLIST_FILE))
    noinfo_stoplist_path: Optional[Path] = field(default_factory=lambda: _config_path(config.NO_INFORMATION_STOPLIST_FILE))
    output_dir: Path = field(default_factory=lambda: Path(config.OUTPUT_DIR))

    thresholds: ThresholdSetting = SELECT
    min_users: int = config.MIN_USERS
    min_films: int = config.MIN_FILMS
    min_tags: int = config.MIN_TAGS
    neighbors: int = config.NEIGHBOR_COUNT
    folds: int = config.FOLD_COUNT
    repetitions: int = config.REPETITIONS
    seed: int = config.DEFAULT_SEED
    workers: int = config.WORKERS
    refine: bool = True

    positive_genre: str = config.POSITIVE_GENRE
    era_cutoff: int = config.ERA_CUTOFF
    top_k: int = config.TOP_K
    indicator_tags: Tuple[str, ...] = config.NOIR_INDICATOR_TAGS

    stop_after: Optional[str] = None
    debug: bool = False
    profile: bool = False

    @property
    def selects_thresholds(self) -> bool:
        return self.thresholds == SELECT

    def to_dict(self) -> Dict[str, Any]:
        """Plain YAML/JSON friendly view"""
        data = asdict(self)
        for key, value in data.items():
            if isinstance(value, Path):
                data[key] = str(value)
            elif isinstance(value, tuple):
                data[key] = list(value)
        return data


PATH_FIELDS = {
    'links_path', 'tags_path', 'basics_path', 'overrides_path', 'stem_overrides_path',
    'person_stoplist_path', 'noinfo_stoplist_path', 'output_dir',
}
REQUIRED_INPUTS = ('links_path', 'tags_path', 'basics_path')
OPTIONAL_INPUTS = ('overrides_path', 'stem_overrides_path', 'person_stoplist_path', 'noinfo_stoplist_path')
POSITIVE_INTS = ('min_users', 'min_films', 'min_tags', 'neighbors', 'folds', 'repetitions', 'workers', 'top_k')


class ConfigurationManager:
    """Manages run configuration with validation and defaults"""

    def __init__(self, config_file: Optional[Union[str, Path]] = None):
        self.config_file = Path(config_file) if config_file else None
        self.logger = logging.getLogger(__name__)

    def load_config_file(self) -> Dict[str, Any]:
        """Load the YAML key-value file; an absent setting means no overrides"""
        if self.config_file is None:
            return {}
        if not self.config_file.exists():
            raise ConfigError(f"Config file '{self.config_file}' not found")

        try:
            with open(self.config_file, 'r', encoding='utf-8') as file:
                content = yaml.safe_load(file) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Error parsing config file {self.config_file}: {e}") from e

        if not isinstance(content, dict):
            raise ConfigError(f"Config file {self.config_file} must hold key: value pairs")

        self.logger.info(f"Loaded {len(content)} settings from {self.config_file}")
        return content

    def build(self, cli_overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
        """
        Layer CLI flags and then the config file over the defaults

        Args:
            cli_overrides: Flag values; None entries mean "not given"

        Returns:
            Validated RunConfig
        """
        run_config = RunConfig()
        for source in (cli_overrides or {}, self.load_config_file()):
            for key, value in source.items():
                if value is None:
                    continue
                self._apply(run_config, key, value)

        self.validate(run_config)
        return run_config

    def _apply(self, run_config: RunConfig, key: str, value: Any):
        known = {f.name for f in fields(RunConfig)}
        normalized_key = key.replace('-', '_')
        if normalized_key not in known:
            raise ConfigError(f"Unknown configuration key '{key}'")

        if normalized_key in PATH_FIELDS:
            value = Path(value) if value != "" else None
        elif normalized_key == 'thresholds':
            value = parse_thresholds(value)
        elif normalized_key == 'indicator_tags':
            if isinstance(value, str):
                value = tuple(part.strip() for part in value.split(',') if part.strip())
            else:
                value = tuple(str(v) for v in value)
        elif normalized_key in POSITIVE_INTS or normalized_key in ('seed', 'era_cutoff'):
            value = self._to_int(normalized_key, value)
        elif normalized_key in ('refine', 'debug', 'profile'):
            value = self._to_bool(normalized_key, value)
        setattr(run_config, normalized_key, value)

    @staticmethod
    def _to_int(key: str, value: Any) -> int:
        if isinstance(value, bool) or isinstance(value, float):
            raise ConfigError(f"'{key}' must be an integer, got {value!r}")
        try:
            return int(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"'{key}' must be an integer, got {value!r}") from e

    @staticmethod
    def _to_bool(key: str, value: Any) -> bool:
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.strip().lower() in ('true', 'yes', '1'):
            return True
        if isinstance(value, str) and value.strip().lower() in ('false', 'no', '0'):
            return False
        raise ConfigError(f"'{key}' must be true or false, got {value!r}")

    def validate(self, run_config: RunConfig):
        """Raise ConfigError describing the first invalid setting"""
        for name in REQUIRED_INPUTS:
            path = getattr(run_config, name)
            if path is None or not Path(path).exists():
                raise ConfigError(f"Input file for '{name}' not found: {path}")

        for name in OPTIONAL_INPUTS:
            path = getattr(run_config, name)
            if path is not None and not Path(path).exists():
                raise ConfigError(f"File for '{name}' not found: {path}")

        for name in POSITIVE_INTS:
            if getattr(run_config, name) <= 0:
                raise ConfigError(f"'{name}' must be positive, got {getattr(run_config, name)}")

        if not run_config.selects_thresholds and len(run_config.thresholds) != run_config.neighbors + 1:
            raise ConfigError(
                f"thresholds need {run_config.neighbors + 1} numbers for {run_config.neighbors} neighbors, "
                f"got {len(run_config.thresholds)}"
            )

        if run_config.folds < 2:
            raise ConfigError(f"'folds' must be at least 2, got {run_config.folds}")

        if run_config.stop_after is not None and run_config.stop_after not in config.STAGES:
            raise ConfigError(
                f"'stop_after' must be one of {', '.join(config.STAGES)}, got {run_config.stop_after!r}"
            )

        if not run_config.positive_genre:
            raise ConfigError("'positive_genre' must not be empty")

    def write_effective_config(self, run_config: RunConfig, output_path: Path) -> Path:
        """Record the configuration a run actually used"""
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, 'w', encoding='utf-8') as f:
            yaml.dump(
                run_config.to_dict(),
                f,
                default_flow_style=False,
                allow_unicode=True,
                sort_keys=True
            )
        return output_path


def parse_thresholds(value: Any) -> ThresholdSetting:
    """
    Accept 'select', '1.26,0.43,0.43,0.43', or a list of numbers

    Returns:
        'select' or a validated tuple of floats
    """
    from ..oneclass_knn.types import ThresholdVector
    from ..utils.error_handling import ContractViolation

    if isinstance(value, str):
        text = value.strip()
        if text.lower() == SELECT:
            return SELECT
        parts = [p for p in text.replace(' ', '').split(',') if p]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise ConfigError(f"thresholds must be 'select' or a list of numbers, got {value!r}")

    if len(parts) < 2:
        raise ConfigError(f"thresholds need a ratio bound and at least one distance bound, got {len(parts)} numbers")
    try:
        numbers = tuple(float(p) for p in parts)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"thresholds must be numeric: {value!r}") from e

    try:
        ThresholdVector.from_values(numbers)
    except ContractViolation as e:
        raise ConfigError(f"invalid threshold vector {numbers}: {e.message}") from e
    return numbers
