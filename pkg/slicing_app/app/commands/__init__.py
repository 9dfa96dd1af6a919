"""
Команды CLI: каждая команда регистрирует свой подпарсер и обработчик
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from app.config import settings
from app.schemas.scenario import Scenario
from app.utils.errors import EXIT_OK, ScenarioError
from app.utils.io import load_model

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    """Итог команды: артефакты, сценарий для дайджеста и код завершения"""
    outputs: List[Path] = field(default_factory=list)
    scenario: Optional[Scenario] = None
    exit_code: int = EXIT_OK


def require_scenario(args) -> Scenario:
    if not args.scenario:
        raise ScenarioError(f"Команде {args.command} нужен --scenario")
    scenario = load_model(args.scenario, Scenario)
    logger.info(f"📂 Сценарий {scenario.name}: {len(scenario.topology.nodes)} узлов, {len(scenario.slices)} срезов")
    return scenario


def out_dir(args) -> Path:
    return Path(args.out_dir or settings.out_dir)


def output_format(args) -> str:
    return args.format or settings.output_format
