"""
Денежный поток: выручка на UE, стоимость размещения VNF и прибыль
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from app.schemas.cashflow import CashFlowInput, CashFlowReport
from app.utils.constants import ECON_DEFAULTS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EconParams:
    """η = C_CU/C_DU, γ = выручка на UE / C_DU, ζ = F_BE / F_max"""
    eta: float = ECON_DEFAULTS["eta"]
    gamma: float = 0.118
    zeta: float = ECON_DEFAULTS["zeta"]
    f_max: int = ECON_DEFAULTS["f_max"]
    c_du: float = ECON_DEFAULTS["c_du"]

    def __post_init__(self):
        if not 0 < self.eta <= 1:
            raise ValueError(f"η вне (0, 1]: {self.eta}")
        if not 0 < self.zeta <= 1:
            raise ValueError(f"ζ вне (0, 1]: {self.zeta}")
        if self.f_max < 1 or not self.gamma > 0 or not self.c_du > 0:
            raise ValueError("F_max ≥ 1, γ > 0 и C_DU > 0 обязательны")

    @property
    def revenue_per_ue(self) -> float:
        return self.gamma * self.c_du

    @classmethod
    def from_schema(cls, schema, vdus: int, vnfs: int) -> "EconParams":
        """Параметры из сценария; γ вычисляется, если не задан явно"""
        g = schema.gamma
        if g is None:
            g = gamma(vdus, vnfs, schema.eta, schema.zeta, schema.f_max)
        return cls(eta=schema.eta, gamma=g, zeta=schema.zeta, f_max=schema.f_max, c_du=schema.c_du)


def gamma(vdus: int, vnfs: int, eta: float, zeta: float, f_max: int) -> float:
    """γ = U(G + η − 1) / (ζ F_max)"""
    denominator = zeta * f_max
    if not denominator > 0:
        raise ValueError("ζ·F_max должно быть > 0")
    return vdus * (vnfs + eta - 1) / denominator


def break_even_connections(cf: CashFlowInput) -> float:
    """F_BE = затраты / (ARPU · месяцев)"""
    return cf.wireless_cost / (cf.arpu_per_month * cf.months)


def zeta_from_cashflow(cf: CashFlowInput) -> float:
    """ζ = F_BE / число подключений"""
    return break_even_connections(cf) / cf.total_connections


def deployment_cost(placements: Iterable[Sequence[bool]], eta: float, c_du: float = 1.0) -> float:
    """Ψ_C: C_DU за каждую VNF на DU и ηC_DU за каждую VNF на CU"""
    terms = []
    for placement in placements:
        for at_cu in placement:
            terms.append(eta * c_du if at_cu else c_du)
    return math.fsum(terms)


def revenue(admitted: Mapping[int, int], econ: EconParams) -> float:
    """Ψ_R = γ C_DU ΣF"""
    if any(f < 0 for f in admitted.values()):
        raise ValueError("Число допущенных UE не может быть отрицательным")
    return econ.revenue_per_ue * sum(admitted.values())


def profit(admitted: Mapping[int, int], placements: Iterable[Sequence[bool]], econ: EconParams) -> float:
    """Π = Ψ_R − Ψ_C"""
    return revenue(admitted, econ) - deployment_cost(placements, econ.eta, econ.c_du)


def max_deployment_cost(vdus: int, vnfs: int, eta: float, c_du: float = 1.0) -> float:
    """
    Верхняя граница стоимости при минимально возможной централизации.

    Первая VNF цепочки всегда на CU (O1), остальные G − 1 на DU:
    Ψ_C^max = U(G + η − 1)C_DU.
    """
    return vdus * (vnfs - 1 + eta) * c_du


def cashflow_report(cf: CashFlowInput) -> CashFlowReport:
    """F_BE, ζ и γ по финансовой отчётности"""
    f_be = break_even_connections(cf)
    zeta = f_be / cf.total_connections
    g = gamma(cf.vdus, cf.vnfs, cf.eta, zeta, cf.f_max)
    report = CashFlowReport(
        f_be=f_be,
        zeta=zeta,
        gamma=g,
        max_deployment_cost=max_deployment_cost(cf.vdus, cf.vnfs, cf.eta),
    )
    logger.info(f"💰 F_BE={f_be:.4f}, ζ={zeta:.4f}, γ={g:.4f}")
    return report
