"""
Конфигурация приложения с использованием Pydantic Settings
"""
import logging
from typing import Literal, Optional
try:
    from pydantic_settings import BaseSettings
except ImportError:
    # Fallback for older pydantic versions
    from pydantic import BaseSettings
from dotenv import load_dotenv

from app.utils.constants import PROPAGATION_SPEEDS

# Загружаем переменные окружения из .env файла (если есть)
load_dotenv()

logger = logging.getLogger(__name__)

LIGHT_SPEED_MPS = PROPAGATION_SPEEDS["vacuum"]


class Settings(BaseSettings):
    """Настройки расчётов и CLI из переменных окружения (префикс RANSLICE_)"""

    # Логирование
    log_level: str = "INFO"

    # Вывод
    out_dir: str = "output"
    output_format: Literal["csv", "json-lines"] = "csv"

    # Оптимизатор
    grid_step: float = 0.01
    exhaustive_budget: int = 2_000_000  # листья перебора
    bnb_budget: int = 5_000_000  # узлы дерева ветвей и границ
    workers: int = 1
    allocation: Literal["pareto", "greedy"] = "pareto"
    frontier_budget: int = 200_000  # вычислений задержки на один набор минимальных долей

    # Модель задержки
    light_speed_mps: float = LIGHT_SPEED_MPS  # для сценариев без propagation_medium
    packetized_bounds: bool = False
    hop_limit: Optional[int] = None

    # Симулятор
    default_seed: int = 1
    sim_duration_s: float = 10.0
    sim_warmup_s: float = 0.0
    wrr_resolution: int = 16

    class Config:
        env_file = ".env"
        env_prefix = "RANSLICE_"
        case_sensitive = False
        env_file_encoding = 'utf-8'


# Создаём экземпляр настроек
settings = Settings()

logger.debug(
    f"Настройки: grid_step={settings.grid_step}, workers={settings.workers}, "
    f"c={settings.light_speed_mps:.3g} м/с, seed={settings.default_seed}"
)
