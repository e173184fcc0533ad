#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Option defaults and the acceptance grid."""

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import jsonschema
import yaml

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).parent / "config.yaml"
GRID_PATH = Path(__file__).parent / "grids.yaml"

FORMATS = ("table", "json")
METHODS = ("naive", "fast", "both")
# statements whose sides are exact rationals; never skipped by max-n
EXACT_TARGETS = ("lemma:l2_1", "lemma:l2_4", "lemma:l2_5")

_SCALAR = {"type": ["integer", "string"]}
GRID_SCHEMA = {
    "type": "object",
    "properties": {
        "suites": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "target": {
                        "type": "string",
                        "pattern": r"^(theorem[12]|(corollary|literature|lemma):[a-z0-9_]+)$",
                    },
                    "points": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "properties": {"method": {"enum": list(METHODS)}},
                            "additionalProperties": {
                                "anyOf": [
                                    _SCALAR,
                                    {"type": "array", "items": _SCALAR, "minItems": 1},
                                ]
                            },
                        },
                    },
                },
                "required": ["target", "points"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["suites"],
}


class ConfigError(ValueError):
    """Raised when an option file cannot be read or is malformed."""


class GridValidationError(ConfigError):
    """Raised when a grid document does not match GRID_SCHEMA.

    Solution: fix the offending suite; `GRID_SCHEMA` lists the accepted shapes.
    """

    def __init__(self, path: Union[str, Path], reason: str, *args):
        msg = f"invalid grid {str(path)!r}: {reason}"
        super().__init__(msg, *args)


def _read_yaml(path: Union[str, Path]) -> Any:
    try:
        return yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot load {str(path)!r}: {e}") from e


def load_options(path: Union[str, Path] = CONFIG_PATH) -> Dict[str, Any]:
    """Option name -> default, from an `options:` document."""
    data = _read_yaml(path)
    if not isinstance(data, dict) or not isinstance(data.get("options"), dict):
        raise ConfigError(f"{str(path)!r} has no `options` mapping")
    return {name: option.get("default") for name, option in data["options"].items()}


@dataclass
class Settings:
    """Effective options: file defaults overlaid with command-line flags."""

    naive_threshold: int = 2000
    max_n: int = 2000
    jobs: int = 1
    format: str = "table"

    @classmethod
    def load(
        cls, overrides: Optional[Mapping[str, Any]] = None, path: Union[str, Path] = CONFIG_PATH
    ) -> "Settings":
        """Build from the option file; `None` overrides keep the file default."""
        options = {name.replace("-", "_"): value for name, value in load_options(path).items()}
        for name, value in (overrides or {}).items():
            if value is not None:
                options[name.replace("-", "_")] = value
        unknown = set(options) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown options {sorted(unknown)}")
        return cls(**options)

    @property
    def is_valid(self) -> bool:
        def _check_positive(value: Any, name: str):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                logger.error(f"`{name}` must be a positive integer, not {value!r}")
                return False
            return True

        valid = [
            _check_positive(self.naive_threshold, "naive-threshold"),
            _check_positive(self.max_n, "max-n"),
            _check_positive(self.jobs, "jobs"),
        ]
        if self.format not in FORMATS:
            logger.error(f"`format` must be one of {', '.join(FORMATS)}, not {self.format!r}")
            valid.append(False)
        return all(valid)


@dataclass(frozen=True)
class GridPoint:
    """One verification to run: a target and its parameters."""

    target: str
    params: Tuple[Tuple[str, Any], ...]
    method: Optional[str] = None

    @property
    def param_dict(self) -> Dict[str, Any]:
        """Parameters as a mapping, in grid order."""
        return dict(self.params)

    @property
    def size(self) -> int:
        """The bound compared against max-n; 0 for exact identities."""
        if self.target in EXACT_TARGETS:
            return 0
        p = self.param_dict
        if "n" in p:
            return int(p["n"]) * 2 ** int(p.get("r0", 0))
        if "p1" in p:
            return int(p["p1"]) ** int(p.get("r1", 1)) * int(p["p2"]) ** int(p.get("r2", 1))
        if "p" in p:
            return int(p["p"]) ** int(p.get("r", 1))
        return 0


def _validate_data(data, schema, path):
    try:
        jsonschema.validate(instance=data, schema=schema)
    except jsonschema.ValidationError as e:
        raise GridValidationError(path, e.message) from e


def _expand(target: str, point: Mapping[str, Any]) -> List[GridPoint]:
    method = point.get("method")
    keys = [k for k in point if k != "method"]
    axes = [v if isinstance(v, list) else [v] for v in (point[k] for k in keys)]
    return [
        GridPoint(target, tuple(zip(keys, combo)), method) for combo in itertools.product(*axes)
    ]


def load_grid(
    path: Union[str, Path] = GRID_PATH,
    max_n: Optional[int] = None,
    target: Optional[str] = None,
) -> List[GridPoint]:
    """Expand a grid file into points, in file order.

    `max_n` drops points whose size exceeds it; `target` keeps only that target.
    """
    data = _read_yaml(path)
    _validate_data(data, GRID_SCHEMA, path)

    points = [
        p
        for suite in data["suites"]
        if target is None or suite["target"] == target
        for raw in suite["points"]
        for p in _expand(suite["target"], raw)
    ]
    if max_n is not None:
        kept = [p for p in points if p.size <= max_n]
        if len(kept) < len(points):
            logger.info(f"max-n {max_n}: skipping {len(points) - len(kept)} grid points")
        points = kept
    logger.debug(f"loaded {len(points)} grid points from {path}")
    return points
