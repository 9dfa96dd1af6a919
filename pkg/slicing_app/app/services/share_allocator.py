"""
Распределение долей φ для одного vDU

Для фиксированной структуры (разбиение, маршрут каждого среза, число
допущенных URLLC UE) строит доли узлов на сетке, при которых выполняются
ограничения скорости, ёмкости разбиения и задержки срезов этого vDU.
Доли хранятся как целое число единиц сетки: φ = k / units.

Режим "pareto" перечисляет все минимальные по Парето векторы долей и
поэтому точен на сетке; режим "greedy" строит один вектор жадно и
годится для больших сеток, где перечисление не помещается в бюджет.
"""
import logging
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Literal, Mapping, Optional, Sequence, Tuple

from app.services.delay_engine import DelayBreakdown, ProcessingParams, processing_components, tree_delay_over_curves
from app.services.economics import EconParams, deployment_cost
from app.services.minplus import ArrivalCurve, PacketizerConfig, SaturationError, ServiceCurve, packetize
from app.services.split_catalog import (
    PacketClass,
    SplitOption,
    VnfProfile,
    overhead_multiplier,
    placement_vector,
)
from app.services.topology import RoutePath, TransportNode, propagation_delay
from app.utils.constants import CENTRALIZATION_RANK
from app.utils.errors import EXIT_BUDGET_EXCEEDED, SlicingError

logger = logging.getLogger(__name__)

Units = Dict[int, int]
Allocation = Literal["pareto", "greedy"]
ALLOCATION_MODES = ("pareto", "greedy")


class FrontierBudgetError(SlicingError):
    """Перечисление минимальных векторов долей не уложилось в бюджет вычислений задержки"""
    exit_code = EXIT_BUDGET_EXCEEDED


def grid_units(grid_step: float) -> int:
    """Число единиц сетки в доле 1; шаг должен делить 1 нацело"""
    if not 0 < grid_step <= 1:
        raise ValueError(f"Шаг сетки вне (0, 1]: {grid_step}")
    units = round(1.0 / grid_step)
    if abs(units * grid_step - 1.0) > 1e-9:
        raise ValueError(f"Шаг сетки {grid_step} не делит 1 нацело")
    return units


def min_units(demand: float, capacity: float, units: int) -> int:
    """Наименьшее k, при котором (k / units)·R ≥ demand"""
    if demand <= 0:
        return 0
    k = max(0, math.ceil(demand * units / capacity))
    while k <= units and (k / units) * capacity < demand:
        k += 1
    while k > 0 and ((k - 1) / units) * capacity >= demand:
        k -= 1
    return k


@dataclass(frozen=True)
class SliceDemand:
    """Трафик одного среза vDU: поток на UE (URLLC) или агрегат (eMBB)"""
    name: str
    kind: str
    rate: float
    burst: float
    packet_bytes: int
    d_sla: Optional[float] = None

    def requirement(self, split: SplitOption) -> float:
        limits = [split.delay_requirement]
        if self.d_sla is not None:
            limits.append(self.d_sla)
        return min(limits)


@dataclass(frozen=True)
class VduProblem:
    """Всё, от чего зависит таблица вариантов одного vDU"""
    vdu: int
    nodes: Tuple[TransportNode, ...]
    urllc_paths: Tuple[RoutePath, ...]
    embb_paths: Tuple[RoutePath, ...]
    urllc: SliceDemand
    embb: Optional[SliceDemand]
    splits: Tuple[SplitOption, ...]
    capacities: Tuple[float, ...]
    vnfs: Tuple[VnfProfile, ...]
    cap: int
    units: int
    econ: EconParams
    processing: ProcessingParams
    light_speed: float
    apply_overhead: bool = True
    packetized: bool = False
    allocation: Allocation = "pareto"
    frontier_budget: int = 200_000

    def node(self, node_id: int) -> TransportNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)


@dataclass(frozen=True)
class VduOption:
    """Допустимый вариант vDU: структура, доли в единицах сетки, прибыль"""
    vdu: int
    split: SplitOption
    urllc_path: Optional[RoutePath]
    embb_path: Optional[RoutePath]
    admitted: int
    urllc_units: Tuple[Tuple[int, int], ...]
    embb_units: Tuple[Tuple[int, int], ...]
    profit: float
    cost: float
    route_edges: FrozenSet[Tuple[int, int]]
    encoding: Tuple[int, ...]

    @property
    def usage(self) -> Tuple[Tuple[int, int], ...]:
        total: Dict[int, int] = {}
        for node, k in self.urllc_units + self.embb_units:
            total[node] = total.get(node, 0) + k
        return tuple(sorted(total.items()))

    @property
    def sort_key(self):
        return (-self.profit, self.cost, self.encoding)


def _multiplier(problem: VduProblem, split: SplitOption, kind: str) -> float:
    if not problem.apply_overhead:
        return 1.0
    return overhead_multiplier(split, PacketClass(kind))


def _slice_delay(
    problem: VduProblem,
    demand: SliceDemand,
    flows: int,
    multiplier: float,
    path: RoutePath,
    units: Mapping[int, int],
    processing: Tuple[float, float],
) -> float:
    """Полная задержка одного потока среза при долях units; inf при нестабильности"""
    arrival = ArrivalCurve(demand.rate * multiplier, demand.burst * multiplier)
    curves = {}
    for v in path.nodes:
        node = problem.node(v)
        rate = (units.get(v, 0) / problem.units) * node.capacity
        if not rate > 0:
            return math.inf
        curve = ServiceCurve(rate, node.latency)
        if problem.packetized:
            curve = packetize(curve, PacketizerConfig(demand.packet_bytes * 8.0 * multiplier))
        curves[v] = curve
    latencies = {n.id: n.latency for n in problem.nodes}
    cross = [(arrival, path.nodes)] * (flows - 1)
    try:
        queueing = tree_delay_over_curves(arrival, path.nodes, curves, cross, latencies)
    except SaturationError:
        return math.inf
    d = DelayBreakdown(
        queueing=queueing,
        processing_du=processing[0],
        processing_cu=processing[1],
        propagation=propagation_delay(path, problem.light_speed),
    )
    return d.total


class _DelayCheck:
    """Запоминающая проверка задержки среза для векторов единиц по узлам маршрута"""

    def __init__(
        self,
        problem: VduProblem,
        demand: SliceDemand,
        flows: int,
        multiplier: float,
        path: RoutePath,
        requirement: float,
        processing: Tuple[float, float],
    ):
        self.problem = problem
        self.demand = demand
        self.flows = flows
        self.multiplier = multiplier
        self.path = path
        self.requirement = requirement
        self.processing = processing
        self.evaluations = 0
        self._memo: Dict[Tuple[int, ...], bool] = {}

    def __call__(self, vector: Tuple[int, ...]) -> bool:
        cached = self._memo.get(vector)
        if cached is not None:
            return cached
        self.evaluations += 1
        if self.evaluations > self.problem.frontier_budget:
            raise FrontierBudgetError(
                f"vDU {self.problem.vdu}: более {self.problem.frontier_budget} вычислений задержки "
                f"среза {self.demand.name} на маршруте {list(self.path.nodes)}; "
                f"укрупните сетку или используйте allocation=greedy"
            )
        units = dict(zip(self.path.nodes, vector))
        delay = _slice_delay(self.problem, self.demand, self.flows, self.multiplier, self.path, units, self.processing)
        ok = delay <= self.requirement
        self._memo[vector] = ok
        return ok


def pareto_units(check: Callable[[Tuple[int, ...]], bool], lo: Sequence[int], hi: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    Все минимальные по Парето векторы k между lo и hi, при которых check
    выполняется. Задержка не растёт с ростом любой доли, поэтому перебор
    по узлам останавливается на первом k, допустимом уже при нижних
    границах остальных узлов.
    """
    lo, hi = tuple(lo), tuple(hi)
    if any(a > b for a, b in zip(lo, hi)) or not check(hi):
        return []
    last = len(lo) - 1
    found: List[Tuple[int, ...]] = []

    def descend(prefix: Tuple[int, ...], i: int) -> None:
        if i == last:
            for k in range(lo[i], hi[i] + 1):
                if check(prefix + (k,)):
                    found.append(prefix + (k,))
                    return
            return
        for k in range(lo[i], hi[i] + 1):
            if not check(prefix + (k,) + hi[i + 1:]):
                continue
            descend(prefix + (k,), i + 1)
            if check(prefix + (k,) + lo[i + 1:]):
                break

    descend((), 0)
    minimal = []
    for vector in found:
        reducible = any(
            vector[i] > lo[i] and check(vector[:i] + (vector[i] - 1,) + vector[i + 1:])
            for i in range(len(vector))
        )
        if not reducible:
            minimal.append(vector)
    return minimal


def _fit_delay(
    problem: VduProblem,
    demand: SliceDemand,
    flows: int,
    multiplier: float,
    path: RoutePath,
    start: Units,
    reserved: Mapping[int, int],
    requirement: float,
    processing: Tuple[float, float],
) -> Optional[Units]:
    """
    Жадно добавляет по единице на узел маршрута, дающий наименьшую задержку,
    пока задержка не уложится в требование. None, если узлы исчерпаны.
    """
    units = dict(start)
    current = _slice_delay(problem, demand, flows, multiplier, path, units, processing)
    while current > requirement:
        best = None
        for v in path.nodes:
            if units.get(v, 0) + reserved.get(v, 0) + 1 > problem.units:
                continue
            trial = dict(units)
            trial[v] = trial.get(v, 0) + 1
            d = _slice_delay(problem, demand, flows, multiplier, path, trial, processing)
            if best is None or d < best[0]:
                best = (d, v)
        if best is None:
            return None
        current, v = best
        units[v] = units.get(v, 0) + 1
    return units


def _rate_units(problem: VduProblem, path: RoutePath, demand: float) -> Units:
    return {v: min_units(demand, problem.node(v).capacity, problem.units) for v in path.nodes}


def _top_up_capacity(
    problem: VduProblem,
    capacity: float,
    urllc: Units,
    embb: Units,
    embb_nodes: Sequence[int],
) -> Tuple[Units, Units]:
    """Добирает долю vDU до ёмкости разбиения на каждом занятом им узле"""
    urllc, embb = dict(urllc), dict(embb)
    for v in sorted(set(urllc) | set(embb)):
        total = urllc.get(v, 0) + embb.get(v, 0)
        if total == 0:
            continue
        need = min_units(capacity, problem.node(v).capacity, problem.units)
        deficit = need - total
        if deficit <= 0:
            continue
        if v in embb_nodes:
            embb[v] = embb.get(v, 0) + deficit
        else:
            urllc[v] = urllc.get(v, 0) + deficit
    return urllc, embb


def _packed(units: Units) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((v, k) for v, k in units.items() if k > 0))


def _fits(urllc: Units, embb: Units, limit: int) -> bool:
    nodes = set(urllc) | set(embb)
    return all(urllc.get(v, 0) + embb.get(v, 0) <= limit for v in nodes)


def _slice_frontier(
    problem: VduProblem,
    demand: SliceDemand,
    flows: int,
    multiplier: float,
    path: RoutePath,
    floor: Units,
    requirement: float,
    processing: Tuple[float, float],
) -> List[Units]:
    lo = tuple(floor[v] for v in path.nodes)
    hi = tuple(problem.units for _ in path.nodes)
    check = _DelayCheck(problem, demand, flows, multiplier, path, requirement, processing)
    vectors = pareto_units(check, lo, hi)
    logger.debug(
        f"vDU {problem.vdu} {demand.name} F={flows}: {len(vectors)} минимальных векторов, "
        f"{check.evaluations} вычислений задержки"
    )
    return [dict(zip(path.nodes, vector)) for vector in vectors]


def _embb_frontier(problem: VduProblem, split: SplitOption, path: RoutePath) -> List[Units]:
    """Векторы долей eMBB: все минимальные (pareto) или один жадный (greedy)"""
    embb = problem.embb
    m = _multiplier(problem, split, embb.kind)
    floor = _rate_units(problem, path, embb.rate * m)
    if any(k > problem.units for k in floor.values()):
        return []
    processing = processing_components(embb.rate, placement_vector(split), problem.vnfs, problem.processing)
    requirement = embb.requirement(split)
    if problem.allocation == "pareto":
        return _slice_frontier(problem, embb, 1, m, path, floor, requirement, processing)
    fitted = _fit_delay(problem, embb, 1, m, path, floor, {}, requirement, processing)
    return [fitted] if fitted is not None else []


def _urllc_frontiers(
    problem: VduProblem,
    split: SplitOption,
    path: RoutePath,
    reserved: Units,
) -> List[List[Units]]:
    """
    Векторы долей URLLC по числу допущенных UE: элемент f содержит варианты
    для F = f. Список обрывается на первом F, для которого вариантов нет.
    """
    m = _multiplier(problem, split, problem.urllc.kind)
    requirement = problem.urllc.requirement(split)
    placement = placement_vector(split)
    frontiers: List[List[Units]] = [[{}]]
    previous: Units = {}
    for f in range(1, problem.cap + 1):
        floor = _rate_units(problem, path, f * problem.urllc.rate * m)
        if any(k > problem.units for k in floor.values()):
            break
        load = math.fsum([problem.urllc.rate] * f)
        processing = processing_components(load, placement, problem.vnfs, problem.processing)
        if problem.allocation == "pareto":
            frontier = _slice_frontier(problem, problem.urllc, f, m, path, floor, requirement, processing)
        else:
            start = {v: max(previous.get(v, 0), k) for v, k in floor.items()}
            if not _fits(start, reserved, problem.units):
                break
            fitted = _fit_delay(problem, problem.urllc, f, m, path, start, reserved, requirement, processing)
            frontier = [fitted] if fitted is not None else []
        if not frontier:
            break
        frontiers.append(frontier)
        previous = frontier[0]
    return frontiers


def _options_for_structure(
    problem: VduProblem,
    split: SplitOption,
    capacity: float,
    iu: int,
    ie: Optional[int],
    urllc_frontiers: List[List[Units]],
    embb_frontier: List[Units],
) -> List[VduOption]:
    urllc_path = problem.urllc_paths[iu]
    embb_path = problem.embb_paths[ie] if ie is not None else None
    embb_nodes = embb_path.nodes if embb_path is not None else ()
    cost = deployment_cost([placement_vector(split)], problem.econ.eta, problem.econ.c_du)
    rank = CENTRALIZATION_RANK.get(split.id, len(CENTRALIZATION_RANK))

    options = []
    seen = set()
    for f, frontier in enumerate(urllc_frontiers):
        if f == 0 and iu > 0:
            # при F = 0 маршрут URLLC не влияет на вариант
            continue
        produced = False
        for urllc_units in frontier:
            for embb_units in embb_frontier:
                final_urllc, final_embb = _top_up_capacity(problem, capacity, urllc_units, embb_units, embb_nodes)
                if not _fits(final_urllc, final_embb, problem.units):
                    continue
                packed_urllc, packed_embb = _packed(final_urllc), _packed(final_embb)
                if (f, packed_urllc, packed_embb) in seen:
                    continue
                seen.add((f, packed_urllc, packed_embb))
                produced = True
                edges = set()
                if packed_urllc:
                    edges.update(urllc_path.edges)
                if packed_embb:
                    edges.update(embb_path.edges)
                option = VduOption(
                    vdu=problem.vdu,
                    split=split,
                    urllc_path=urllc_path if f > 0 else None,
                    embb_path=embb_path,
                    admitted=f,
                    urllc_units=packed_urllc,
                    embb_units=packed_embb,
                    profit=problem.econ.revenue_per_ue * f - cost,
                    cost=cost,
                    route_edges=frozenset(edges),
                    encoding=(),
                )
                flat = tuple(x for pair in option.usage for x in pair)
                total = sum(k for _, k in option.usage)
                encoding = (rank, iu, -1 if ie is None else ie, f, total) + flat
                options.append(replace(option, encoding=encoding))
        # больше UE требует не меньших долей: если F не поместился, не поместится и F + 1
        if not produced:
            break
    return options


@lru_cache(maxsize=4096)
def vdu_options(problem: VduProblem) -> Tuple[VduOption, ...]:
    """
    Все допустимые варианты vDU.

    Args:
        problem: подзадача одного vDU

    Returns:
        Варианты, отсортированные по (−прибыль, стоимость, кодировка)

    Raises:
        FrontierBudgetError: перечисление в режиме pareto превысило frontier_budget
    """
    options = []
    embb_indices = range(len(problem.embb_paths)) if problem.embb is not None else [None]
    for split, capacity in zip(problem.splits, problem.capacities):
        embb_frontiers = {
            ie: (_embb_frontier(problem, split, problem.embb_paths[ie]) if ie is not None else [{}])
            for ie in embb_indices
        }
        for iu in range(len(problem.urllc_paths)):
            urllc_path = problem.urllc_paths[iu]
            shared = None
            for ie in embb_indices:
                if not embb_frontiers[ie]:
                    continue
                if problem.allocation == "pareto":
                    # в точном режиме векторы URLLC не зависят от маршрута eMBB
                    if shared is None:
                        shared = _urllc_frontiers(problem, split, urllc_path, {})
                    frontiers = shared
                else:
                    frontiers = _urllc_frontiers(problem, split, urllc_path, embb_frontiers[ie][0])
                options.extend(_options_for_structure(
                    problem, split, capacity, iu, ie, frontiers, embb_frontiers[ie]
                ))
    options.sort(key=lambda o: o.sort_key)
    logger.debug(f"vDU {problem.vdu}: {len(options)} вариантов ({problem.allocation})")
    return tuple(options)


def dominates(a: VduOption, b: VduOption) -> bool:
    """a не хуже b по прибыли и ресурсам и строго лучше в порядке выбора"""
    if a.sort_key >= b.sort_key:
        return False
    if not a.route_edges <= b.route_edges:
        return False
    used_b = dict(b.usage)
    return all(k <= used_b.get(v, 0) for v, k in a.usage)


def prune_dominated(options: Sequence[VduOption]) -> List[VduOption]:
    """Отбрасывает варианты, которые можно заменить лучшим без потери допустимости"""
    kept: List[VduOption] = []
    for opt in sorted(options, key=lambda o: o.sort_key):
        if not any(dominates(k, opt) for k in kept):
            kept.append(opt)
    return kept
