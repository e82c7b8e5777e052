import json
import logging

from balanced_tamari.config import Settings, get_settings
from balanced_tamari.utils.logger import get_logger, setup_logger


class TestSettings:

    def test_defaults(self, monkeypatch):
        for name in (
            "LOG_LEVEL",
            "LOG_FILE",
            "TAMARI_MAX_LATTICE_NODES",
            "TAMARI_MAX_ENUM_NODES",
            "TAMARI_MAX_BALANCED_NODES",
            "TAMARI_MAX_VERIFY_NODES",
            "TAMARI_MAX_GRAMMAR_STEPS",
        ):
            monkeypatch.delenv(name, raising=False)
        settings = Settings.from_env()
        assert settings == Settings()
        assert settings.max_lattice_nodes == 13
        assert settings.max_grammar_steps == 6
        assert (settings.max_enum_nodes, settings.max_balanced_nodes) == (15, 20)

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "debug")
        monkeypatch.setenv("TAMARI_MAX_VERIFY_NODES", "9")
        settings = get_settings()
        assert settings.log_level == "DEBUG"
        assert settings.max_verify_nodes == 9

    def test_cached(self):
        assert get_settings() is get_settings()


class TestLogger:

    def test_console_only(self):
        logger = setup_logger("balanced_tamari.test_console", level="debug")
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 1

    def test_no_duplicate_handlers(self):
        first = setup_logger("balanced_tamari.test_repeat", level="INFO")
        second = setup_logger("balanced_tamari.test_repeat", level="ERROR")
        assert first is second
        assert len(second.handlers) == 1
        assert second.handlers[0].level == logging.ERROR

    def test_json_file(self, tmp_path):
        path = tmp_path / "logs" / "run.log"
        logger = setup_logger("balanced_tamari.test_file", log_file=str(path), level="INFO")
        logger.info("closure done")
        for handler in logger.handlers:
            handler.flush()
        record = json.loads(path.read_text().splitlines()[0])
        assert record["level"] == "INFO"
        assert record["message"] == "closure done"
        assert record["logger"] == "balanced_tamari.test_file"
        for handler in list(logger.handlers):
            handler.close()
            logger.removeHandler(handler)

    def test_get_logger_reads_settings(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "WARNING")
        monkeypatch.delenv("LOG_FILE", raising=False)
        logger = get_logger("balanced_tamari.test_settings")
        assert logger.level == logging.WARNING
