# src/reports/run_config.py

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import dotenv_values

from src.utils.config_loader import config
from src.utils.errors import ConfigError

OUTPUT_FORMATS = ("json-lines", "csv", "human")


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; built from defaults, an optional key=value file, then flags."""

    seed: int = 0
    tol_abs: float = 1e-12
    tol_rel: float = 1e-9
    grid_cap: int = 2**26
    enum_cap: int = 10**7
    delta: float = 0.05
    constant_C: float = 1.0
    constant_gamma: float = math.e
    output_format: str = "json-lines"
    workers: int = 1
    budget: int = 1
    candidates_per_unit: int = 64
    quick: bool = False
    log_level: str = config.LOG_LEVEL
    store_reports: bool = True
    growth_slope: float = 0.1
    trend_tol: float = 0.05

    def validate(self) -> "RunConfig":
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed", "must be a 64-bit unsigned integer")
        for key in ("grid_cap", "enum_cap", "workers", "budget", "candidates_per_unit"):
            if getattr(self, key) < 1:
                raise ConfigError(key, "must be positive")
        for key in ("tol_abs", "tol_rel", "constant_C", "constant_gamma", "growth_slope", "trend_tol"):
            if not getattr(self, key) > 0:
                raise ConfigError(key, "must be > 0")
        if not 0 < self.delta < 0.5:
            raise ConfigError("delta", "must lie in (0, 0.5)")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError("output_format", f"expected one of {', '.join(OUTPUT_FORMATS)}")
        return self

    def with_overrides(self, overrides: Dict[str, Any]) -> "RunConfig":
        known = {f.name: f for f in fields(self)}
        parsed = {}
        for key, raw in overrides.items():
            if raw is None:
                continue
            if key not in known:
                raise ConfigError(key, "unknown setting")
            parsed[key] = _coerce(key, raw, type(getattr(self, key)))
        return replace(self, **parsed).validate()

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None, **overrides) -> "RunConfig":
        base = cls()
        if path is not None:
            path = Path(path)
            if not path.exists():
                raise ConfigError("config", f"file {path} not found")
            base = base.with_overrides(dict(dotenv_values(path)))
        return base.with_overrides(overrides)


def _coerce(key: str, raw: Any, target: type) -> Any:
    if isinstance(raw, target) and not (target is int and isinstance(raw, bool)):
        return raw
    text = str(raw).strip()
    try:
        if target is bool:
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if target is int:
            try:
                return int(text)
            except ValueError:
                value = float(text)
                if not value.is_integer():
                    raise
                return int(value)
        if target is float:
            return float(text)
        return text
    except ValueError:
        raise ConfigError(key, f"cannot parse '{raw}' as {target.__name__}")
