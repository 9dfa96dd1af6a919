"""
Pydantic схемы отчёта о запуске команды и итогов симуляции
"""
from typing import List, Optional
from pydantic import BaseModel, Field


class RunReport(BaseModel):
    """Отчёт о запуске: команда, дайджест сценария, артефакты"""
    command: str
    scenario_digest: str = Field("", description="SHA-256 канонической формы сценария")
    outputs: List[str] = Field(default_factory=list)
    wall_clock_s: float = 0.0
    version: str
    exit_code: int = 0


class FlowSimulation(BaseModel):
    """Итог одного потока: наблюдаемый максимум и обе аналитические границы"""
    flow: str
    slice: str
    vdu: int
    count: int
    max_s: Optional[float] = None
    mean_s: Optional[float] = None
    scheduler_bound_s: Optional[float] = Field(None, description="Граница по кривым обслуживания WRR")
    gps_bound_s: Optional[float] = Field(None, description="Граница tree_delay при идеальном разделении φ")
    exceedances: int = 0
    gps_exceedances: int = 0


class SimulationSummary(BaseModel):
    """Сводка прогона simulate"""
    model: str
    seed: int
    prng: str
    duration_s: float
    max_delay_s: float
    exceedances: int = 0
    gps_exceedances: int = 0
    overflows: int = 0
    conformance_violations: int = 0
    flows: List[FlowSimulation] = Field(default_factory=list)
