import logging
from pathlib import Path

from utils import logger, paths


def test_home_from_environment(journal_home):
    assert paths.get_app_dir() == journal_home
    assert paths.get_journal_file_path() == journal_home / "fhsf_journal.json"


def test_default_home(monkeypatch):
    monkeypatch.delenv("FHSF_HOME", raising=False)
    assert (paths.get_app_dir() / "config.py").is_file()


def test_config_path(monkeypatch):
    monkeypatch.delenv("FHSF_CONFIG", raising=False)
    assert paths.get_config_file_path() is None
    monkeypatch.setenv("FHSF_CONFIG", "env.conf")
    assert paths.get_config_file_path() == Path("env.conf")
    assert paths.get_config_file_path("flag.conf") == Path("flag.conf")


def test_logger_writes_daily_file(tmp_path):
    root = logging.getLogger()
    saved, level = root.handlers[:], root.level
    root.handlers = []
    try:
        log_file = logger.setup_logger(debug=True, logs_dir=tmp_path / "logs")
        logging.debug("проверка")
        logging.getLogger("numba.core").debug("шум компилятора")
        for handler in root.handlers:
            handler.flush()
        assert list((tmp_path / "logs").glob("*.log")) == [log_file]
        text = log_file.read_text(encoding="utf-8")
        assert "Запуск FHSF" in text
        assert "DEBUG - проверка" in text
        assert "шум компилятора" not in text
    finally:
        for handler in root.handlers:
            handler.close()
        root.handlers = saved
        root.setLevel(level)
        for name in ("numba", "PIL"):
            logging.getLogger(name).setLevel(logging.NOTSET)
