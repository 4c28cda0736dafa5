import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from config import (
    CSV_DELIMITER,
    CSV_ENCODING,
    DATE_FORMAT_JOURNAL,
    ERROR_EXPORT_HISTORY_IO,
    ERROR_LOAD_HISTORY,
    ERROR_SAVE_HISTORY,
    HISTORY_COLUMNS,
)
from utils.paths import get_journal_file_path


def load_history(path: Optional[Path] = None) -> List[Dict[str, Any]]:
    """Загружает журнал запусков из JSON-файла."""
    journal_file = path or get_journal_file_path()
    if not journal_file.exists():
        return []
    try:
        with open(journal_file, "r", encoding="utf-8") as f:
            data = json.load(f)
            return data if isinstance(data, list) else []
    except (json.JSONDecodeError, IOError) as e:
        logging.error(ERROR_LOAD_HISTORY.format(e))
        return []


def save_history(history: List[Dict[str, Any]], path: Optional[Path] = None):
    """Сохраняет журнал запусков в JSON-файл."""
    journal_file = path or get_journal_file_path()
    try:
        with open(journal_file, "w", encoding="utf-8") as f:
            json.dump(history, f, ensure_ascii=False, indent=2)
    except IOError as e:
        logging.error(ERROR_SAVE_HISTORY.format(e))
        raise


def create_history_entry(
    command: str,
    inputs: Sequence[str],
    params: Dict[str, Any],
    rows: List[Dict[str, Any]],
) -> Dict[str, Any]:
    """Создаёт запись журнала для запуска bench или tune."""
    now = datetime.now()
    summary = f"{command}:{','.join(inputs)}:{sorted(params.items())}"
    return {
        "id": now.strftime("%Y%m%d_%H%M%S") + f"_{hash(summary) % 10000:04d}",
        "timestamp": now.isoformat(),
        "command": command,
        "inputs": list(inputs),
        "params": params,
        "rows": rows,
    }


def append_entry(entry: Dict[str, Any], path: Optional[Path] = None) -> None:
    history = load_history(path)
    history.append(entry)
    save_history(history, path)


def _format_timestamp(entry: Dict[str, Any]) -> str:
    try:
        return datetime.fromisoformat(entry["timestamp"]).strftime(DATE_FORMAT_JOURNAL)
    except (KeyError, TypeError, ValueError):
        return str(entry.get("timestamp", ""))


def history_rows(history: List[Dict[str, Any]]) -> List[List[str]]:
    rows = []
    for entry in history:
        params = ", ".join(f"{k}={v}" for k, v in entry.get("params", {}).items())
        rows.append([
            _format_timestamp(entry),
            str(entry.get("command", "")),
            ", ".join(entry.get("inputs", [])),
            params,
            str(len(entry.get("rows", []))),
        ])
    return rows


def export_history_csv(
    history: List[Dict[str, Any]], path: Union[str, Path]
) -> None:
    path = Path(path)
    if path.suffix.lower() != ".csv":
        path = path.with_name(path.name + ".csv")
    try:
        with open(path, "w", encoding=CSV_ENCODING) as f:
            f.write(CSV_DELIMITER.join(HISTORY_COLUMNS) + "\n")
            for row in history_rows(history):
                f.write(CSV_DELIMITER.join(row) + "\n")
    except IOError as e:
        logging.error(ERROR_EXPORT_HISTORY_IO.format(e))
        raise
