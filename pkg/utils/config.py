import os
from dataclasses import dataclass

from dotenv import load_dotenv

from core.errors import ConfigError

DEFAULT_EDGE_GUARD = 64
DEFAULT_VERTEX_GUARD = 32
DEFAULT_CYCLE_GUARD = 20000


@dataclass(frozen=True)
class Settings:
    """환경 변수(.env 포함)에서 읽은 실행 설정"""
    edge_guard: int = DEFAULT_EDGE_GUARD
    vertex_guard: int = DEFAULT_VERTEX_GUARD
    cycle_guard: int = DEFAULT_CYCLE_GUARD
    workers: int = 1

    def guards(self) -> dict:
        return {"edge": self.edge_guard, "vertex": self.vertex_guard, "cycle": self.cycle_guard}


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def load_settings() -> Settings:
    """환경 변수에서 크기 제한 읽기 (호출할 때마다 다시 읽음)"""
    load_dotenv()
    return Settings(
        edge_guard=_int_from_env("RESLAB_EDGE_GUARD", DEFAULT_EDGE_GUARD),
        vertex_guard=_int_from_env("RESLAB_VERTEX_GUARD", DEFAULT_VERTEX_GUARD),
        cycle_guard=_int_from_env("RESLAB_CYCLE_GUARD", DEFAULT_CYCLE_GUARD),
        workers=_int_from_env("RESLAB_WORKERS", 1),
    )
