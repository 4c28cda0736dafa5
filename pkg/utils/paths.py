import os
import sys
from pathlib import Path
from typing import Optional

from config import ENV_CONFIG, ENV_HOME, JOURNAL_FILENAME, LOGS_DIR


def get_app_dir() -> Path:
    """
    Возвращает папку приложения: FHSF_HOME, если задана,
    иначе папку исполняемого файла.
    """
    home = os.getenv(ENV_HOME)
    if home:
        return Path(home).expanduser()
    if getattr(sys, "frozen", False):
        # Запуск из собранного файла (PyInstaller)
        return Path(sys.executable).parent
    else:
        return Path(__file__).parent.parent.resolve()


def get_journal_file_path() -> Path:
    return get_app_dir() / JOURNAL_FILENAME


def get_logs_dir() -> Path:
    return Path(LOGS_DIR)


def get_config_file_path(explicit: Optional[str] = None) -> Optional[Path]:
    """Путь к файлу конфигурации: флаг --config, затем переменная FHSF_CONFIG."""
    value = explicit or os.getenv(ENV_CONFIG)
    return Path(value).expanduser() if value else None
