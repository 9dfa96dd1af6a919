"""
Транспортная сеть: узлы, маршруты CU -> vDU, доли GPS и задержка распространения
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from app.schemas.scenario import TopologySchema
from app.services.minplus import ArrivalCurve
from app.utils.errors import EXIT_INFEASIBLE, SlicingError

logger = logging.getLogger(__name__)


class UnreachableNodeError(SlicingError):
    """Нет маршрута от CU до vDU"""
    pass


class CycleDetectedError(SlicingError):
    """Маршруты образуют цикл: сеть не feed-forward"""
    exit_code = EXIT_INFEASIBLE

    def __init__(self, message: str, cycle: Sequence[int] = ()):
        super().__init__(message)
        self.cycle = tuple(cycle)


class ZeroWeightsError(SlicingError):
    """Все веса узла нулевые"""
    pass


class InconsistentPathError(SlicingError):
    """Маршрут не согласован с топологией"""
    pass


@dataclass(frozen=True)
class TransportNode:
    """Узел транспортной сети с кривой обслуживания (R_v, T_v)"""
    id: int
    capacity: float
    latency: float = 0.0

    def __post_init__(self):
        if not self.capacity > 0 or self.latency < 0:
            raise ValueError(f"Некорректный узел {self.id}: R={self.capacity}, T={self.latency}")


@dataclass(frozen=True, order=True)
class SliceKey:
    """Срез s, обслуживающий vDU u; ключ очереди на каждом узле"""
    slice: str
    vdu: int

    def __str__(self) -> str:
        return f"{self.slice}@{self.vdu}"


@dataclass(frozen=True)
class RoutePath:
    """Упорядоченный маршрут от CU к vDU с длинами связей"""
    nodes: Tuple[int, ...]
    distances: Tuple[float, ...] = ()

    def __post_init__(self):
        if not self.nodes:
            raise InconsistentPathError("Пустой маршрут")
        if len(self.distances) != len(self.nodes) - 1:
            raise InconsistentPathError(f"Маршрут {self.nodes}: число длин не равно числу связей")
        if len(set(self.nodes)) != len(self.nodes):
            raise InconsistentPathError(f"Маршрут {self.nodes} содержит цикл")
        if any(d < 0 for d in self.distances):
            raise InconsistentPathError(f"Маршрут {self.nodes}: отрицательная длина связи")

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(zip(self.nodes, self.nodes[1:]))

    @property
    def length_m(self) -> float:
        return math.fsum(self.distances)

    def prefix(self, node: int) -> Tuple[int, ...]:
        """Узлы маршрута строго до node"""
        try:
            return self.nodes[: self.nodes.index(node)]
        except ValueError:
            raise InconsistentPathError(f"Узел {node} не лежит на маршруте {self.label}") from None

    def concat(self, other: "RoutePath") -> "RoutePath":
        if other.nodes[0] != self.nodes[-1]:
            raise InconsistentPathError(f"Маршруты {self.label} и {other.label} не стыкуются")
        return RoutePath(self.nodes + other.nodes[1:], self.distances + other.distances)

    @property
    def label(self) -> str:
        return ">".join(str(n) for n in self.nodes)


class ShareTable:
    """Доли φ_v^{s,u} пропускной способности узлов; отсутствующая доля равна 0"""

    def __init__(self, shares: Optional[Mapping[Tuple[int, SliceKey], float]] = None):
        self._shares: Dict[Tuple[int, SliceKey], float] = {}
        for (node, key), value in (shares or {}).items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"Доля {value} узла {node} для {key} вне [0, 1]")
            if value > 0:
                self._shares[(node, key)] = value

    def share(self, node: int, key: SliceKey) -> float:
        return self._shares.get((node, key), 0.0)

    def node_total(self, node: int) -> float:
        return math.fsum(v for (n, _), v in self._shares.items() if n == node)

    def nodes(self) -> List[int]:
        return sorted({n for n, _ in self._shares})

    def keys_at(self, node: int) -> List[SliceKey]:
        return sorted(k for n, k in self._shares if n == node)

    def items(self):
        return sorted(self._shares.items(), key=lambda item: (item[0][0], item[0][1]))

    def __len__(self) -> int:
        return len(self._shares)


@dataclass(frozen=True)
class FlowSpec:
    """Поток f_i среза (s, u): leaky-bucket (ρ, σ) и размер пакета в байтах"""
    id: str
    key: SliceKey
    rate: float
    burst: float
    packet_size: int

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError(f"Поток {self.id}: скорость должна быть > 0")
        if self.burst < self.packet_size * 8:
            raise ValueError(f"Поток {self.id}: всплеск меньше одного пакета")

    @property
    def arrival(self) -> ArrivalCurve:
        return ArrivalCurve(self.rate, self.burst)

    @property
    def packet_bits(self) -> float:
        return self.packet_size * 8.0

    def scaled(self, factor: float) -> "FlowSpec":
        """Поток с накладными расходами: ρ и σ умножены на factor ≥ 1"""
        if factor < 1.0:
            raise ValueError(f"Множитель накладных расходов {factor} < 1")
        return FlowSpec(self.id, self.key, self.rate * factor, self.burst * factor, self.packet_size)


@dataclass(frozen=True)
class RoutedFlow:
    """Поток вместе со своим маршрутом"""
    flow: FlowSpec
    path: RoutePath


@dataclass
class Topology:
    """Граф транспортной сети с ролями узлов"""
    nodes: Dict[int, TransportNode]
    links: Dict[FrozenSet[int], float] = field(default_factory=dict)
    cu: Optional[int] = None
    dus: Tuple[int, ...] = ()
    vdus: Tuple[int, ...] = ()
    rus: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_schema(cls, schema: TopologySchema) -> "Topology":
        nodes = {n.id: TransportNode(n.id, n.capacity_bps, n.latency_s) for n in schema.nodes}
        links = {frozenset((l.a, l.b)): l.distance_m for l in schema.links}
        return cls(
            nodes=nodes,
            links=links,
            cu=schema.roles.cu,
            dus=tuple(schema.roles.dus),
            vdus=tuple(schema.roles.vdus),
            rus=dict(schema.roles.rus),
        )

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        for pair, distance in self.links.items():
            a, b = sorted(pair)
            g.add_edge(a, b, distance=distance)
        return g

    def node(self, node_id: int) -> TransportNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise InconsistentPathError(f"Неизвестный узел {node_id}") from None

    def distance(self, a: int, b: int) -> float:
        try:
            return self.links[frozenset((a, b))]
        except KeyError:
            raise InconsistentPathError(f"Узлы {a} и {b} не соединены") from None

    def make_path(self, nodes: Iterable[int]) -> RoutePath:
        """Маршрут по списку узлов с проверкой смежности"""
        nodes = tuple(nodes)
        for n in nodes:
            self.node(n)
        distances = tuple(self.distance(a, b) for a, b in zip(nodes, nodes[1:]))
        return RoutePath(nodes, distances)


def enumerate_paths(topology: Topology, cu: int, vdu: int, hop_limit: Optional[int] = None) -> List[RoutePath]:
    """
    Все простые маршруты CU -> vDU.

    Порядок детерминирован: сначала меньше переходов, затем лексикографически по узлам.
    """
    if cu not in topology.nodes or vdu not in topology.nodes:
        raise UnreachableNodeError(f"Узел {cu} или {vdu} отсутствует в топологии")
    if cu == vdu:
        return [RoutePath((cu,), ())]
    raw = nx.all_simple_paths(topology.graph, cu, vdu, cutoff=hop_limit)
    node_lists = sorted((tuple(p) for p in raw), key=lambda p: (len(p), p))
    if not node_lists:
        raise UnreachableNodeError(f"vDU {vdu} недостижим из CU {cu}")
    paths = [topology.make_path(p) for p in node_lists]
    logger.debug(f"Маршруты {cu} -> {vdu}: {[p.label for p in paths]}")
    return paths


def weights_to_shares(weights: Mapping[Hashable, float]) -> Dict[Hashable, float]:
    """φ = w / Σw для очередей одного узла"""
    if any(w < 0 for w in weights.values()):
        raise ValueError("Веса должны быть неотрицательными")
    total = math.fsum(weights.values())
    if total <= 0:
        raise ZeroWeightsError("Все веса узла нулевые")
    return {k: w / total for k, w in weights.items()}


def shares_to_weights(shares: Mapping[Hashable, float], resolution: int = 16) -> Dict[Hashable, int]:
    """Целые веса w ∝ φ: наибольшая доля получает resolution, ненулевые не меньше 1"""
    positive = {k: v for k, v in shares.items() if v > 0}
    if not positive:
        raise ZeroWeightsError("Нет ненулевых долей")
    top = max(positive.values())
    return {
        k: (max(1, round(resolution * v / top)) if v > 0 else 0)
        for k, v in shares.items()
    }


def allocated_rate(node: TransportNode, key: SliceKey, shares: ShareTable) -> float:
    """R_v^{s,u} = φ_v^{s,u}·R_v"""
    return shares.share(node.id, key) * node.capacity


def propagation_delay(path: RoutePath, c: float) -> float:
    """Σ длин связей / c; не зависит от номера потока"""
    if not c > 0:
        raise ValueError(f"Скорость распространения должна быть > 0: {c}")
    return path.length_m / c


def downlink_edges(topology: Topology) -> List[Tuple[int, int]]:
    """Ориентация связей от CU: по числу переходов, затем по идентификатору"""
    hops = {}
    if topology.cu is not None and topology.cu in topology.nodes:
        hops = nx.single_source_shortest_path_length(topology.graph, topology.cu)
    edges = []
    for pair in topology.links:
        a, b = sorted(pair, key=lambda n: (hops.get(n, math.inf), n))
        edges.append((a, b))
    return sorted(edges)


@lru_cache(maxsize=65536)
def find_route_cycle(edges: FrozenSet[Tuple[int, int]]) -> Optional[Tuple[int, ...]]:
    """Цикл в ориентированном графе маршрутов или None"""
    g = nx.DiGraph()
    g.add_edges_from(edges)
    try:
        cycle = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        return None
    return tuple(u for u, _ in cycle)


def validate_feedforward(topology: Topology, routes: Optional[Iterable[RoutePath]] = None) -> bool:
    """
    Проверяет ацикличность ориентированного графа маршрутизации.

    Без routes используется нисходящая ориентация связей от CU.
    """
    if routes is None:
        edges = frozenset(downlink_edges(topology))
    else:
        edges = frozenset(e for r in routes for e in r.edges)
    cycle = find_route_cycle(edges)
    if cycle is not None:
        raise CycleDetectedError(f"Обнаружен цикл маршрутов: {' -> '.join(map(str, cycle))}", cycle)
    return True
