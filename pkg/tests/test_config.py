import logging

import pytest

from core.errors import ConfigError, SizeLimitExceeded
from utils.config import DEFAULT_CYCLE_GUARD, DEFAULT_EDGE_GUARD, DEFAULT_VERTEX_GUARD, load_settings
from utils.logging_config import setup_logger

ENV_VARS = ("RESLAB_EDGE_GUARD", "RESLAB_VERTEX_GUARD", "RESLAB_CYCLE_GUARD", "RESLAB_WORKERS")


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    # keep a stray .env in the working directory out of the picture
    monkeypatch.setattr("utils.config.load_dotenv", lambda *args, **kwargs: False)
    return monkeypatch


class TestSettings:
    def test_defaults(self, clean_env):
        settings = load_settings()
        assert settings.guards() == {"edge": DEFAULT_EDGE_GUARD, "vertex": DEFAULT_VERTEX_GUARD,
                                     "cycle": DEFAULT_CYCLE_GUARD}
        assert settings.workers == 1

    def test_environment_overrides(self, clean_env):
        clean_env.setenv("RESLAB_EDGE_GUARD", "80")
        clean_env.setenv("RESLAB_WORKERS", "4")
        settings = load_settings()
        assert settings.edge_guard == 80
        assert settings.workers == 4

    def test_blank_value_means_default(self, clean_env):
        clean_env.setenv("RESLAB_CYCLE_GUARD", "  ")
        assert load_settings().cycle_guard == DEFAULT_CYCLE_GUARD

    @pytest.mark.parametrize("raw", ["many", "0", "-3"])
    def test_bad_values(self, clean_env, raw):
        clean_env.setenv("RESLAB_VERTEX_GUARD", raw)
        with pytest.raises(ConfigError, match="RESLAB_VERTEX_GUARD"):
            load_settings()

    def test_size_limit_message(self):
        error = SizeLimitExceeded("graph 'x'", 70, 64, "RESLAB_EDGE_GUARD")
        assert str(error) == "graph 'x' has size 70, above the guard 64 (override with RESLAB_EDGE_GUARD)"
        assert (error.size, error.guard) == (70, 64)


class TestLogger:
    def test_single_shared_logger(self):
        """Repeated setup returns the same logger without stacking handlers"""
        first = setup_logger()
        handlers = list(first.handlers)
        second = setup_logger()
        assert first is second
        assert first.name == "reslab"
        assert second.handlers == handlers
        assert not first.propagate

    def test_level(self):
        assert setup_logger().level in (logging.DEBUG, logging.INFO, logging.WARNING, logging.ERROR)
