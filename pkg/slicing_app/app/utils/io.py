"""
Чтение и запись YAML-документов, дайджест сценария и табличный вывод
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Optional, Type, TypeVar

import pandas as pd
import yaml
from pydantic import BaseModel, ValidationError

from app.schemas.decision import Decision, Solution
from app.utils.errors import ScenarioError

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def load_yaml(path) -> dict:
    """Загружает YAML (JSON тоже подходит) и возвращает словарь"""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError as e:
        raise ScenarioError(f"Файл не найден: {path}") from e
    except yaml.YAMLError as e:
        raise ScenarioError(f"Ошибка разбора YAML {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ScenarioError(f"Ожидался словарь верхнего уровня в {path}")
    return data


def load_model(path, model: Type[ModelT]) -> ModelT:
    """Загружает документ и валидирует его pydantic-моделью"""
    data = load_yaml(path)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"Невалидный документ {path}:\n{e}") from e


def dump_model(model: BaseModel, path) -> Path:
    """Сохраняет модель в YAML; float сериализуются через repr без потерь"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(model.model_dump(mode="json"), f, sort_keys=False, allow_unicode=True)
    logger.info(f"💾 Сохранено: {path}")
    return path


def canonical_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))


def scenario_digest(model: Optional[BaseModel]) -> str:
    """SHA-256 канонической формы: не зависит от порядка ключей во входном файле"""
    if model is None:
        return ""
    return hashlib.sha256(canonical_json(model).encode("utf-8")).hexdigest()


def write_table(df: pd.DataFrame, out_dir, stem: str, fmt: str = "csv", header: Optional[str] = None) -> Path:
    """
    Записывает таблицу в CSV или JSON Lines.

    header пишется в CSV строкой-комментарием '# ...' перед заголовком.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "json-lines":
        path = out_dir / f"{stem}.jsonl"
        if df.empty:
            path.write_text("", encoding="utf-8")
        else:
            df.to_json(path, orient="records", lines=True)
    else:
        path = out_dir / f"{stem}.csv"
        with open(path, "w", encoding="utf-8", newline="") as f:
            if header:
                f.write(f"# {header}\n")
            df.to_csv(f, index=False)
    logger.info(f"📄 Таблица {stem}: {len(df)} строк -> {path}")
    return path


def load_decision(path) -> Decision:
    """
    Решение из файла: документ Decision или Solution (берётся его поле decision)
    """
    data = load_yaml(path)
    model = Solution if "decision" in data else Decision
    try:
        parsed = model.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"Невалидное решение {path}:\n{e}") from e
    return parsed.decision if isinstance(parsed, Solution) else parsed
