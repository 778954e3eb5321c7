from __future__ import annotations
from dataclasses import dataclass
import os

def _get_env(name: str, default: str) -> str:
    v = os.getenv(name)
    return default if v is None or v == "" else v

def _get_int(name: str, default: int) -> int:
    v = _get_env(name, str(default))
    try:
        return int(v)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {v!r}") from None

@dataclass(frozen=True)
class ToolConfig:
    workers: int
    log_level: str

def load_config() -> ToolConfig:
    workers = _get_int("K3TAU_WORKERS", 1)
    if workers < 1:
        raise ValueError(f"K3TAU_WORKERS must be at least 1, got {workers}")
    return ToolConfig(
        workers=workers,
        log_level=_get_env("K3TAU_LOG_LEVEL", "INFO").strip().upper(),
    )
