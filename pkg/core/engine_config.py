"""
Engine Configuration - Desk-scale caps and run defaults
Loaded from an optional YAML file; every cap has a working default
"""

import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .errors import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EngineConfig:
    """Caps that keep brute-force enumerations at desk scale"""
    max_group_order: int = 10**7          # enumerated_order / set stabilizers
    max_subset_enumeration: int = 10**6   # homogeneity_orbits on s-subsets
    max_tsubset_checks: int = 10**7       # verify_design over t-subsets
    max_permgroup_degree: int = 10**4     # standard_generators
    default_t: int = 7
    default_jobs: int = 1
    sweep_chunk_size: int = 64            # degrees handed to a worker at once

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidInputError(f"config '{f.name}' must be a positive integer, got {value!r}")


DEFAULT_CONFIG = EngineConfig()


def load_config(path: Optional[Union[str, Path]] = None) -> EngineConfig:
    """Load an EngineConfig from YAML, falling back to the defaults"""
    if path is None:
        return DEFAULT_CONFIG

    path = Path(path)
    if not path.is_file():
        raise InvalidInputError(f"config file not found: {path}")

    try:
        with open(path, 'r') as f:
            raw = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise InvalidInputError(f"config file {path} is not valid YAML: {e}")

    if not isinstance(raw, dict):
        raise InvalidInputError(f"config file {path} must hold a mapping")

    known = {f.name for f in fields(EngineConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise InvalidInputError(f"unknown config keys in {path}: {', '.join(unknown)}")

    overrides: Dict[str, Any] = dict(raw)
    config = replace(DEFAULT_CONFIG, **overrides)
    logger.info(f"[Config] Loaded {path}: {overrides}")
    return config
