"""Training configuration and its flat ``key = value`` text format."""

import math
import typing
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from topojscc.data.synthetic import SYNTHETIC_PREFIX
from topojscc.errors import ConfigError


@dataclass(frozen=True)
class TrainConfig:
    """Everything one training run depends on."""
    rho: float = 0.25
    channel: str = "awgn"
    csi: bool = False
    lambda_img: float = 1e-4
    lambda_lat: float = 1e-5
    anneal_t: float = 10.0
    batch_size: int = 32
    learning_rate: float = 1e-4
    max_epochs: int = 100
    patience: int = 10
    seed: int = 0
    dataset: str = "synthetic:rings"
    synthetic_count: int = 512
    synthetic_shapes: int = 2
    image_size: int = 32
    validation_fraction: float = 0.1
    training_snrs: tuple[float, ...] = field(default=(0.0, 5.0, 10.0, 15.0, 20.0))
    power: float = 1.0
    topo_p: float = 2.0
    track_topology: bool = True
    workers: int = 1

    @property
    def is_synthetic(self) -> bool:
        return self.dataset.startswith(SYNTHETIC_PREFIX)

    @property
    def synthetic_kind(self) -> str:
        return self.dataset[len(SYNTHETIC_PREFIX):]

    def with_overrides(self, **overrides) -> "TrainConfig":
        """Copy with the non-None overrides applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def _format_float(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, tuple):
        return ",".join(_format_float(v) for v in value)
    if isinstance(value, str) and ("#" in value or value != value.strip()):
        quote = "'" if "\"" in value else "\""
        return f"{quote}{value}{quote}"
    return str(value)


def _coerce(name: str, kind, text: str):
    if kind is bool:
        lowered = text.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ValueError(f"expected true/false, got '{text}'")
    if kind is int:
        return int(text)
    if kind is float:
        return float(text)
    if typing.get_origin(kind) is tuple:
        values = tuple(float(v) for v in text.split(",") if v.strip())
        if not values:
            raise ValueError("expected a comma-separated list of numbers")
        return values
    if not text:
        raise ValueError("empty value")
    return text


def _strip_comment(line: str) -> str:
    """Drop a ``#`` comment that is not inside single or double quotes."""
    quote = None
    for i, ch in enumerate(line):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            return line[:i]
    return line


def _unquote(value: str) -> str:
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1]
    return value


_FIELDS = {f.name: f for f in fields(TrainConfig)}


def parse_config_text(text: str, base: TrainConfig | None = None) -> TrainConfig:
    """Parse ``key = value`` lines; ``#`` outside quotes starts a comment.

    Raises:
        ConfigError: unknown key, duplicate key, missing ``=`` or bad value.
    """
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELDS:
            raise ConfigError(f"config line {lineno}: unknown key '{key}'")
        if key in values:
            raise ConfigError(f"config line {lineno}: duplicate key '{key}'")
        try:
            values[key] = _coerce(key, _FIELDS[key].type, _unquote(value))
        except ValueError as e:
            raise ConfigError(f"config line {lineno}: bad value for '{key}': {e}") from None
    return replace(base or TrainConfig(), **values)


def load_config(path: str | Path, base: TrainConfig | None = None) -> TrainConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"config file {path} could not be read: {e.strerror}") from e
    return parse_config_text(text, base)


def dump_config(config: TrainConfig) -> str:
    """Canonical text form; ``parse_config_text(dump_config(c)) == c``."""
    return "".join(f"{f.name} = {_format(getattr(config, f.name))}\n" for f in fields(config))


def save_config(path: str | Path, config: TrainConfig) -> Path:
    path = Path(path)
    path.write_text(dump_config(config))
    return path
