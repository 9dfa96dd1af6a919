"""
Оценка сквозной задержки потока в нарезанной транспортной сети

Очередная задержка считается по FIFO-SFA: остаточные кривые обслуживания
на каждом узле маршрута, конкатенация и рост всплеска перекрёстных потоков
на узлах выше по маршруту. К ней добавляются задержка обработки VNF на
DU/CU и задержка распространения.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.services.minplus import (
    ArrivalCurve,
    PacketizerConfig,
    SaturationError,
    ServiceCurve,
    delay_bound_single,
    leftover_fifo,
    packetize,
    updated_burst,
)
from app.services.split_catalog import (
    PacketClass,
    SplitCatalog,
    SplitOption,
    VnfProfile,
    overhead_multiplier,
    placement_vector,
)
from app.services.topology import (
    FlowSpec,
    InconsistentPathError,
    RoutedFlow,
    RoutePath,
    ShareTable,
    Topology,
    allocated_rate,
    propagation_delay,
)
from app.schemas.decision import FlowDelay

logger = logging.getLogger(__name__)

CrossFlow = Tuple[ArrivalCurve, Sequence[int]]


@dataclass(frozen=True)
class CrossTraffic:
    """Перекрёстный трафик в очереди FoI на узле: Σρ и Σ обновлённых всплесков"""
    node: int
    rate: float
    burst: float
    flows: int = 0


@dataclass(frozen=True)
class DelayBreakdown:
    """Очередь + обработка (DU, CU) + распространение"""
    queueing: float
    processing_du: float = 0.0
    processing_cu: float = 0.0
    propagation: float = 0.0

    def __post_init__(self):
        if min(self.queueing, self.processing_du, self.processing_cu, self.propagation) < 0:
            raise ValueError("Компоненты задержки должны быть неотрицательными")

    @property
    def processing(self) -> float:
        return self.processing_du + self.processing_cu

    @property
    def total(self) -> float:
        return self.queueing + self.processing + self.propagation


@dataclass(frozen=True)
class ProcessingParams:
    """Обработка VNF: Z секунд на X бит/с, K_u ядер на vDU, K_0 ядер на CU"""
    z_s: float
    x_bps: float
    k_u: int
    k_0: int

    @classmethod
    def from_schema(cls, schema) -> "ProcessingParams":
        return cls(schema.z_s, schema.x_bps, schema.k_u, schema.k_0)


def _sliced_bound(
    foi: ArrivalCurve,
    rates: Sequence[float],
    latencies: Sequence[float],
    cross: Sequence[Sequence[ArrivalCurve]],
    node_ids: Sequence,
) -> float:
    bottleneck = math.inf
    terms = []
    elapsed = 0.0
    for v, (rate, latency, flows) in enumerate(zip(rates, latencies, cross)):
        if not rate > 0:
            raise SaturationError(f"Узел {node_ids[v]}: выделенная скорость равна 0", node=node_ids[v])
        rho_y = math.fsum(a.rate for a in flows)
        sigma_y = math.fsum(a.burst for a in flows)
        residual = rate - rho_y
        if not residual > 0:
            raise SaturationError(
                f"Узел {node_ids[v]}: перекрёстный трафик {rho_y:.6g} бит/с насыщает {rate:.6g} бит/с",
                node=node_ids[v],
            )
        bottleneck = min(bottleneck, residual)
        terms.append(latency)
        terms.append((rho_y * elapsed + sigma_y) / rate)
        elapsed += latency
    if not terms:
        raise InconsistentPathError("Пустой маршрут")
    terms.append(foi.burst / bottleneck)
    return math.fsum(terms)


def tandem_delay(foi: ArrivalCurve, cross: Sequence[ArrivalCurve], nodes: Sequence[ServiceCurve]) -> float:
    """
    Оценка для тандема узлов, которые FoI делит с одним и тем же набором потоков.

    ΣT_v + σ_0/(R_net − ρ_y) + Σ_v (ρ_y·Σ_{j<v}T_j + σ_y)/R_v, R_net = min R_v
    """
    return _sliced_bound(
        foi,
        [s.rate for s in nodes],
        [s.latency for s in nodes],
        [list(cross)] * len(nodes),
        list(range(len(nodes))),
    )


def sliced_tandem_delay(
    foi: ArrivalCurve,
    cross: Sequence[Sequence[ArrivalCurve]],
    nodes: Sequence[ServiceCurve],
    shares: Sequence[float],
) -> float:
    """
    Тандем с долями GPS: на узле v срезу выделено φ_v·R_v, а перекрёстные
    потоки cross[v] могут отличаться от узла к узлу.
    """
    if not (len(cross) == len(nodes) == len(shares)):
        raise ValueError("Длины cross, nodes и shares должны совпадать")
    return _sliced_bound(
        foi,
        [phi * s.rate for s, phi in zip(nodes, shares)],
        [s.latency for s in nodes],
        cross,
        list(range(len(nodes))),
    )


def cross_traffic_along(
    path: Sequence[int],
    cross: Sequence[CrossFlow],
    latencies: Mapping[int, float],
) -> List[CrossTraffic]:
    """Агрегаты перекрёстного трафика на каждом узле маршрута FoI"""
    result = []
    for v in path:
        rates, bursts = [], []
        for arrival, fpath in cross:
            fpath = tuple(fpath)
            if v not in fpath:
                continue
            if len(set(fpath)) != len(fpath):
                raise InconsistentPathError(f"Маршрут перекрёстного потока {fpath} содержит цикл")
            prefix = fpath[: fpath.index(v)]
            try:
                upstream = [latencies[n] for n in prefix]
            except KeyError as e:
                raise InconsistentPathError(f"Нет задержки для узла {e.args[0]} маршрута {fpath}") from None
            rates.append(arrival.rate)
            bursts.append(updated_burst(arrival, upstream))
        result.append(CrossTraffic(v, math.fsum(rates), math.fsum(bursts), len(rates)))
    return result


def tree_delay_over_curves(
    foi: ArrivalCurve,
    path: Sequence[int],
    curves: Mapping[int, ServiceCurve],
    cross: Sequence[CrossFlow],
    latencies: Optional[Mapping[int, float]] = None,
) -> float:
    """
    σ_0/min_v(R_v − ρ_{y,v}) + Σ_v (T_v + Σ *σ_{f,v}/R_v)

    *σ_{f,v} = σ_f + ρ_f·Σ T по узлам маршрута f до v.
    """
    if not path:
        raise InconsistentPathError("Пустой маршрут")
    if latencies is None:
        latencies = {n: c.latency for n, c in curves.items()}
    aggregates = cross_traffic_along(path, cross, latencies)
    bottleneck = math.inf
    terms = []
    for agg in aggregates:
        s = curves[agg.node]
        residual = s.rate - agg.rate
        if not residual > 0:
            raise SaturationError(
                f"Узел {agg.node}: перекрёстный трафик {agg.rate:.6g} бит/с насыщает {s.rate:.6g} бит/с",
                node=agg.node,
            )
        bottleneck = min(bottleneck, residual)
        terms.append(s.latency)
        terms.append(agg.burst / s.rate)
    terms.append(foi.burst / bottleneck)
    return math.fsum(terms)


def additive_tandem_delay(
    foi: ArrivalCurve,
    path: Sequence[int],
    curves: Mapping[int, ServiceCurve],
    cross: Sequence[CrossFlow],
    latencies: Optional[Mapping[int, float]] = None,
) -> float:
    """Аддитивная оценка: сумма одноузловых задержек с ростом всплеска FoI на каждом узле"""
    if latencies is None:
        latencies = {n: c.latency for n, c in curves.items()}
    aggregates = cross_traffic_along(path, cross, latencies)
    total = []
    burst = foi.burst
    for agg in aggregates:
        leftover = leftover_fifo(curves[agg.node], ArrivalCurve(agg.rate, agg.burst))
        total.append(delay_bound_single(ArrivalCurve(foi.rate, burst), leftover))
        burst += foi.rate * leftover.latency
    return math.fsum(total)


def slice_curves(
    key,
    path: RoutePath,
    shares: ShareTable,
    topology: Topology,
    packetizer: Optional[PacketizerConfig] = None,
) -> Dict[int, ServiceCurve]:
    """Кривые обслуживания очереди среза на узлах маршрута: (φ_v R_v, T_v)"""
    curves = {}
    for v in path.nodes:
        node = topology.node(v)
        rate = allocated_rate(node, key, shares)
        if not rate > 0:
            raise SaturationError(f"Узел {v}: срезу {key} не выделена доля", node=v)
        curve = ServiceCurve(rate, node.latency)
        curves[v] = packetize(curve, packetizer) if packetizer else curve
    return curves


def tree_delay(
    foi: FlowSpec,
    flows: Iterable[RoutedFlow],
    shares: ShareTable,
    path: RoutePath,
    topology: Topology,
    packetizer: Optional[PacketizerConfig] = None,
    method: str = "tree",
) -> float:
    """
    Очередная задержка FoI; перекрёстные потоки берутся из той же очереди (s, u).

    Args:
        foi: поток интереса
        flows: все потоки сети (с накладными расходами разбиения)
        shares: доли φ узлов
        path: маршрут FoI от CU до vDU
        topology: транспортная сеть
        packetizer: наибольший пакет очереди; None - жидкостная модель
        method: "tree" или "additive" (сумма границ по узлам)

    Returns:
        Граница задержки в очередях, с

    Raises:
        SaturationError: узлу маршрута не выделена доля
        InstabilityError: нагрузка очереди превышает φR
    """
    curves = slice_curves(foi.key, path, shares, topology, packetizer)
    latencies = {n.id: n.latency for n in topology.nodes.values()}
    cross = [
        (rf.flow.arrival, rf.path.nodes)
        for rf in flows
        if rf.flow.key == foi.key and rf.flow.id != foi.id
    ]
    if method == "additive":
        return additive_tandem_delay(foi.arrival, path.nodes, curves, cross, latencies)
    return tree_delay_over_curves(foi.arrival, path.nodes, curves, cross, latencies)


def processing_components(
    load_bps: float,
    placement: Sequence[bool],
    vnfs: Sequence[VnfProfile],
    params: ProcessingParams,
) -> Tuple[float, float]:
    """
    Задержка обработки (DU, CU): (Z/X)·Σρ·Σ_g z_g/K, где K = K_0 для VNF на CU
    и K_u для VNF на DU.
    """
    if load_bps < 0:
        raise ValueError("Нагрузка не может быть отрицательной")
    factor = params.z_s / params.x_bps * load_bps
    du = math.fsum(v.processing_fraction / 100.0 for v, at_cu in zip(vnfs, placement) if not at_cu)
    cu = math.fsum(v.processing_fraction / 100.0 for v, at_cu in zip(vnfs, placement) if at_cu)
    return factor * du / params.k_u, factor * cu / params.k_0


def processing_delay(
    rates: Iterable[float],
    placement: Sequence[bool],
    vnfs: Sequence[VnfProfile],
    params: ProcessingParams,
) -> float:
    du, cu = processing_components(math.fsum(rates), placement, vnfs, params)
    return du + cu


@dataclass
class EvaluationContext:
    """Всё, что нужно для оценки задержки потоков при заданном решении"""
    topology: Topology
    shares: ShareTable
    flows: Tuple[RoutedFlow, ...]
    catalog: SplitCatalog
    processing: ProcessingParams
    splits: Dict[int, SplitOption] = field(default_factory=dict)
    slice_kinds: Dict[str, str] = field(default_factory=dict)
    slice_sla: Dict[str, Optional[float]] = field(default_factory=dict)
    light_speed: float = 3e8
    apply_overhead: bool = True
    packetized: bool = False

    def multiplier(self, flow: FlowSpec) -> float:
        split = self.splits.get(flow.key.vdu)
        if not self.apply_overhead or split is None:
            return 1.0
        kind = self.slice_kinds.get(flow.key.slice, PacketClass.URLLC.value)
        return overhead_multiplier(split, PacketClass(kind))

    @cached_property
    def effective_flows(self) -> Dict[str, RoutedFlow]:
        """Потоки с накладными расходами разбиения своего vDU"""
        return {
            rf.flow.id: RoutedFlow(rf.flow.scaled(self.multiplier(rf.flow)), rf.path)
            for rf in self.flows
        }

    def requirement(self, flow: FlowSpec) -> Optional[float]:
        """Обязательная граница задержки: SLA среза и требование разбиения"""
        limits = []
        sla = self.slice_sla.get(flow.key.slice)
        if sla is not None:
            limits.append(sla)
        split = self.splits.get(flow.key.vdu)
        if split is not None and split.delay_requirement is not None:
            limits.append(split.delay_requirement)
        return min(limits) if limits else None


def end_to_end_delay(foi: RoutedFlow, ctx: EvaluationContext, method: str = "tree") -> DelayBreakdown:
    """
    d = d_net + d_RAN + d_PD для одного потока.

    Args:
        foi: поток интереса с маршрутом
        ctx: контекст оценки решения
        method: метод оценки очередей, см. tree_delay

    Returns:
        DelayBreakdown по составляющим
    """
    effective = ctx.effective_flows
    eff_foi = effective[foi.flow.id]
    packetizer = None
    if ctx.packetized:
        packetizer = PacketizerConfig(foi.flow.packet_bits * ctx.multiplier(foi.flow))
    queueing = tree_delay(
        eff_foi.flow, effective.values(), ctx.shares, foi.path, ctx.topology, packetizer, method
    )
    du = cu = 0.0
    split = ctx.splits.get(foi.flow.key.vdu)
    if split is not None:
        load = math.fsum(rf.flow.rate for rf in ctx.flows if rf.flow.key == foi.flow.key)
        du, cu = processing_components(load, placement_vector(split), ctx.catalog.vnfs, ctx.processing)
    propagation = propagation_delay(foi.path, ctx.light_speed)
    return DelayBreakdown(queueing=queueing, processing_du=du, processing_cu=cu, propagation=propagation)


def analyze_flows(ctx: EvaluationContext, method: str = "tree") -> List[FlowDelay]:
    """Строки отчёта analyze: по одной на поток"""
    rows = []
    for rf in ctx.flows:
        d = end_to_end_delay(rf, ctx, method)
        requirement = ctx.requirement(rf.flow)
        rows.append(FlowDelay(
            flow=rf.flow.id,
            slice=rf.flow.key.slice,
            vdu=rf.flow.key.vdu,
            path=rf.path.label,
            d_net=d.queueing,
            d_du=d.processing_du,
            d_cu=d.processing_cu,
            d_ran=d.processing,
            d_pd=d.propagation,
            total=d.total,
            requirement=requirement,
            margin=None if requirement is None else requirement - d.total,
        ))
    logger.info(f"⏱️ Оценено потоков: {len(rows)} (метод {method})")
    return rows
