"""
Pydantic схемы файла финансовой отчётности и результата анализа денежного потока
"""
from pydantic import BaseModel, Field

from app.utils.constants import ECON_DEFAULTS


class CashFlowInput(BaseModel):
    """Выручка и затраты беспроводного сегмента оператора за период"""
    wireless_revenue: float = Field(..., gt=0)
    wireless_cost: float = Field(..., gt=0)
    arpu_per_month: float = Field(..., gt=0)
    months: int = Field(3, ge=1)
    total_connections: float = Field(..., gt=0)
    # Параметры сети для γ
    vdus: int = Field(4, ge=1)
    vnfs: int = Field(6, ge=1)
    eta: float = Field(ECON_DEFAULTS["eta"], gt=0, le=1)
    f_max: int = Field(ECON_DEFAULTS["f_max"], ge=1)


class CashFlowReport(BaseModel):
    """Точка безубыточности, ζ и γ"""
    f_be: float
    zeta: float
    gamma: float
    max_deployment_cost: float
