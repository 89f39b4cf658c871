"""Run configuration: defaults, key=value config file, IDSTAT_* environment
variables, and explicit overrides, applied in that order."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import InputError
from .statmech import MAX_LEVELS, MAX_PARTICLES

MODES = ("dimensionless", "si")
OUTPUT_FORMATS = ("json", "csv", "pretty")

ENV_PREFIX = "IDSTAT_"

_FIELDS = ("mode", "max_n", "max_levels", "output", "seed")


@dataclass(frozen=True)
class RunConfig:
    """Execution settings shared by the command-line entry points."""

    mode: str = "dimensionless"
    max_n: int = MAX_PARTICLES
    max_levels: int = MAX_LEVELS
    output: str = "pretty"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.output not in OUTPUT_FORMATS:
            raise InputError(
                f"output must be one of {OUTPUT_FORMATS}, got {self.output!r}"
            )
        if not 1 <= self.max_n <= MAX_PARTICLES:
            raise InputError(f"max_n must be in 1..{MAX_PARTICLES}, got {self.max_n}")
        if not 1 <= self.max_levels <= MAX_LEVELS:
            raise InputError(
                f"max_levels must be in 1..{MAX_LEVELS}, got {self.max_levels}"
            )
        if self.seed < 0:
            raise InputError(f"seed must be nonnegative, got {self.seed}")


def _coerce(key: str, value: str):
    value = value.strip()
    if key in ("max_n", "max_levels", "seed"):
        try:
            return int(value)
        except ValueError:
            raise InputError(f"config key {key} needs an integer, got {value!r}") from None
    return value


def parse_config_file(path: str) -> dict:
    """key=value lines; blank lines and # comments ignored."""
    settings: dict = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _FIELDS:
            raise InputError(f"{path}:{lineno}: unknown config key {key!r}")
        settings[key] = _coerce(key, value)
    return settings


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    settings: dict = {}
    for key in _FIELDS:
        raw = environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            settings[key] = _coerce(key, raw)
    return settings


def load_config(
    config_path: str | None = None,
    environ=None,
    overrides: dict | None = None,
) -> RunConfig:
    """Defaults, then config file, then environment, then explicit overrides."""
    cfg = RunConfig()
    if config_path is not None:
        cfg = replace(cfg, **parse_config_file(config_path))
    env = env_overrides(environ)
    if env:
        cfg = replace(cfg, **env)
    if overrides:
        clean = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(clean) - set(_FIELDS)
        if unknown:
            raise InputError(f"unknown config overrides: {sorted(unknown)}")
        if clean:
            cfg = replace(cfg, **clean)
    return cfg
