"""
Мин-плюс алгебра над кривыми leaky-bucket и rate-latency

Кривая поступления α(t) = ρt + σ, кривая обслуживания β(t) = R[t − T]^+.
Все операции чистые: одинаковые входы дают побитово одинаковый результат.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from app.utils.errors import EXIT_INFEASIBLE, SlicingError

logger = logging.getLogger(__name__)


class InstabilityError(SlicingError):
    """Скорость поступления превышает скорость обслуживания"""
    exit_code = EXIT_INFEASIBLE


class SaturationError(SlicingError):
    """Перекрёстный трафик занимает всю выделенную скорость узла"""
    exit_code = EXIT_INFEASIBLE

    def __init__(self, message: str, node=None):
        super().__init__(message)
        self.node = node


class EmptyCurveListError(SlicingError):
    """Конкатенация пустого списка кривых"""
    pass


@dataclass(frozen=True)
class ArrivalCurve:
    """Кривая поступления leaky-bucket: rate (бит/с), burst (бит)"""
    rate: float
    burst: float

    def __post_init__(self):
        if self.rate < 0 or self.burst < 0 or math.isnan(self.rate) or math.isnan(self.burst):
            raise ValueError(f"Некорректная кривая поступления: ρ={self.rate}, σ={self.burst}")

    def __add__(self, other: "ArrivalCurve") -> "ArrivalCurve":
        return ArrivalCurve(self.rate + other.rate, self.burst + other.burst)

    def scaled(self, factor: float) -> "ArrivalCurve":
        """Кривая с умноженными ρ и σ (накладные расходы на пакет)"""
        return ArrivalCurve(self.rate * factor, self.burst * factor)


ZERO_ARRIVAL = ArrivalCurve(0.0, 0.0)


@dataclass(frozen=True)
class ServiceCurve:
    """Кривая обслуживания rate-latency: rate (бит/с), latency (с)"""
    rate: float
    latency: float

    def __post_init__(self):
        if not self.rate > 0 or self.latency < 0:
            raise ValueError(f"Некорректная кривая обслуживания: R={self.rate}, T={self.latency}")


@dataclass(frozen=True)
class PacketizerConfig:
    """Пакетизатор с максимальным размером пакета max_packet_size (бит)"""
    max_packet_size: float

    def __post_init__(self):
        if self.max_packet_size < 0:
            raise ValueError(f"Отрицательный l_max: {self.max_packet_size}")


def _check_stable(a: ArrivalCurve, s: ServiceCurve) -> None:
    if a.rate > s.rate:
        raise InstabilityError(f"Нестабильная система: ρ={a.rate} > R={s.rate}")


def delay_bound_single(a: ArrivalCurve, s: ServiceCurve) -> float:
    """Горизонтальное отклонение α и β для одного потока в одном сервере: T + σ/R"""
    _check_stable(a, s)
    return s.latency + a.burst / s.rate


def backlog_bound(a: ArrivalCurve, s: ServiceCurve) -> float:
    """Вертикальное отклонение α и β: σ + ρT (достигается при t = T)"""
    _check_stable(a, s)
    return a.burst + a.rate * s.latency


def concatenate(curves: Iterable[ServiceCurve]) -> ServiceCurve:
    """Последовательное соединение серверов: минимум скоростей, сумма задержек"""
    curves = list(curves)
    if not curves:
        raise EmptyCurveListError("Нельзя конкатенировать пустой список кривых")
    return ServiceCurve(
        rate=min(c.rate for c in curves),
        latency=math.fsum(c.latency for c in curves),
    )


def additive_delay(a: ArrivalCurve, s: ServiceCurve, hops: int) -> float:
    """
    Аддитивная оценка для V одинаковых серверов: всплеск учитывается на каждом узле.

    V·T + V(σ + ((V−1)/2)ρT)/R
    """
    if hops < 1:
        raise ValueError(f"Число узлов должно быть >= 1, получено {hops}")
    _check_stable(a, s)
    v = hops
    return v * s.latency + v * (a.burst + (v - 1) / 2 * a.rate * s.latency) / s.rate


def leftover_fifo(s: ServiceCurve, cross: ArrivalCurve) -> ServiceCurve:
    """Остаточная кривая обслуживания FIFO-сервера: (R − ρ_c, T + σ_c/R)"""
    if cross.rate >= s.rate:
        raise SaturationError(
            f"Перекрёстный трафик ρ={cross.rate} занимает всю скорость R={s.rate}"
        )
    return ServiceCurve(
        rate=s.rate - cross.rate,
        latency=s.latency + cross.burst / s.rate,
    )


def updated_burst(a: ArrivalCurve, upstream_latencies: Sequence[float]) -> float:
    """Рост всплеска после прохождения узлов выше по пути: σ + ρ·ΣT"""
    if any(t < 0 for t in upstream_latencies):
        raise ValueError("Задержки узлов должны быть неотрицательными")
    return a.burst + a.rate * math.fsum(upstream_latencies)


def output_arrival(a: ArrivalCurve, s: ServiceCurve) -> ArrivalCurve:
    """Деконволюция α ⊘ β для leaky-bucket и rate-latency: (ρ, σ + ρT)"""
    _check_stable(a, s)
    return ArrivalCurve(a.rate, a.burst + a.rate * s.latency)


def packetize(s: ServiceCurve, p: PacketizerConfig) -> ServiceCurve:
    """Rate-latency форма [β − l_max]^+: (R, T + l_max/R)"""
    return ServiceCurve(s.rate, s.latency + p.max_packet_size / s.rate)
