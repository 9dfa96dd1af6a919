"""
Дискретно-событийный симулятор нарезанной транспортной сети

Очередь FIFO на каждую пару (срез, vDU) в каждом узле, планировщик WRR
на узле, источники token bucket или пуассоновские. Время целочисленное,
в наносекундах. Задержка пакета: от постановки в очередь CU до доставки
на vDU.
"""
import logging
import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Deque, Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import simpy

from app.config import settings
from app.dependencies import build_context
from app.schemas.decision import Decision
from app.schemas.report import FlowSimulation, SimulationSummary
from app.schemas.scenario import Scenario
from app.services.delay_engine import EvaluationContext, tree_delay, tree_delay_over_curves
from app.services.minplus import (
    ArrivalCurve,
    InstabilityError,
    PacketizerConfig,
    SaturationError,
    ServiceCurve,
    backlog_bound,
    updated_burst,
)
from app.services.topology import (
    RoutedFlow,
    ShareTable,
    SliceKey,
    Topology,
    ZeroWeightsError,
    shares_to_weights,
)
from app.utils.statistics import summarize_delays

logger = logging.getLogger(__name__)

NS_PER_S = 1_000_000_000
PRNG_ALGORITHM = "PCG64"

TrafficModel = Literal["token_bucket", "poisson"]
SchedulerKind = Literal["wrr", "rr"]
QueueId = Tuple[int, SliceKey]


def ceil_ns(seconds: float) -> int:
    """Секунды в целые наносекунды с округлением вверх; шум float не даёт лишней наносекунды"""
    return max(0, math.ceil(seconds * NS_PER_S - 1e-6))


@dataclass(frozen=True)
class TrafficSource:
    """Источник пакетов одного потока; rate и burst уже с накладными расходами разбиения"""
    flow_id: str
    key: SliceKey
    model: TrafficModel
    rate: float
    burst: float
    packet_bits: float
    path: Tuple[int, ...]

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError(f"Источник {self.flow_id}: скорость должна быть > 0")
        if self.model == "token_bucket" and self.packet_bits > self.burst + 1e-6:
            raise ValueError(f"Источник {self.flow_id}: пакет больше всплеска")


@dataclass
class Packet:
    flow_id: str
    key: SliceKey
    bits: float
    created: int
    path: Tuple[int, ...]
    hop: int = 0


class TokenBucketMeter:
    """Онлайн-проверка A(τ, t) ≤ ρ(t − τ) + σ"""

    def __init__(self, rate: float, burst: float):
        self.rate = rate
        self.burst = burst
        self.level = burst
        self.last: Optional[int] = None
        self.violations = 0

    def observe(self, now: int, bits: float) -> bool:
        if self.last is not None:
            self.level = min(self.burst, self.level + self.rate * (now - self.last) / NS_PER_S)
        self.last = now
        ok = self.level + 1e-6 >= bits
        if not ok:
            self.violations += 1
        self.level -= bits
        return ok


class WrrScheduler:
    """
    Классический WRR узла: очереди обходятся по порядку ключей, очередь q
    за свой ход отправляет до w_q пакетов, которые были в ней в начале хода.
    Сервер не простаивает при непустых очередях.
    """

    def __init__(
        self,
        env: simpy.Environment,
        node_id: int,
        capacity: float,
        weights: Dict[SliceKey, int],
        forward: Callable[[Packet, int], None],
        buffers: Optional[Dict[SliceKey, int]] = None,
    ):
        if not weights:
            raise ZeroWeightsError(f"Узел {node_id}: нет очередей")
        self.env = env
        self.node_id = node_id
        self.capacity = capacity
        self.weights = dict(weights)
        self.order = sorted(weights)
        self.queues: Dict[SliceKey, Deque[Packet]] = {k: deque() for k in self.order}
        self.backlog = {k: 0.0 for k in self.order}
        self.max_backlog = {k: 0.0 for k in self.order}
        self.served_bits = {k: 0.0 for k in self.order}
        self.buffers = buffers or {}
        self.overflows = 0
        self.forward = forward
        self._wakeup = env.event()
        env.process(self.serve())

    def service_ns(self, bits: float) -> int:
        return ceil_ns(bits / self.capacity)

    def enqueue(self, packet: Packet) -> None:
        queue = self.queues[packet.key]
        limit = self.buffers.get(packet.key)
        if limit is not None and len(queue) >= limit:
            self.overflows += 1
        queue.append(packet)
        self.backlog[packet.key] += packet.bits
        self.max_backlog[packet.key] = max(self.max_backlog[packet.key], self.backlog[packet.key])
        if not self._wakeup.triggered:
            self._wakeup.succeed()

    def serve(self):
        while True:
            if not any(self.queues.values()):
                self._wakeup = self.env.event()
                yield self._wakeup
                continue
            for key in self.order:
                queue = self.queues[key]
                for _ in range(min(self.weights[key], len(queue))):
                    packet = queue.popleft()
                    yield self.env.timeout(self.service_ns(packet.bits))
                    self.backlog[key] -= packet.bits
                    self.served_bits[key] += packet.bits
                    self.forward(packet, self.node_id)


@dataclass
class DelayStats:
    """Итоги прогона: задержки по потокам, границы, очереди, переполнения"""
    model: str
    seed: int
    flows: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    bounds: Dict[str, float] = field(default_factory=dict)
    exceedances: Dict[str, int] = field(default_factory=dict)
    gps_bounds: Dict[str, float] = field(default_factory=dict)
    gps_exceedances: Dict[str, int] = field(default_factory=dict)
    max_backlog: Dict[str, float] = field(default_factory=dict)
    served_bits: Dict[str, float] = field(default_factory=dict)
    overflows: int = 0
    conformance_violations: int = 0
    prng: str = PRNG_ALGORITHM

    def frame(self) -> pd.DataFrame:
        rows = []
        for flow_id in sorted(self.flows):
            row = {"flow": flow_id}
            row.update(self.flows[flow_id])
            row["bound"] = self.bounds.get(flow_id)
            row["exceedances"] = self.exceedances.get(flow_id, 0)
            row["gps_bound"] = self.gps_bounds.get(flow_id)
            row["gps_exceedances"] = self.gps_exceedances.get(flow_id, 0)
            rows.append(row)
        return pd.DataFrame(rows)

    @property
    def max_delay(self) -> float:
        values = [s["max"] for s in self.flows.values() if s["count"] > 0]
        return max(values) if values else 0.0

    def header(self) -> str:
        return (
            f"model={self.model} seed={self.seed} prng={self.prng} "
            f"overflows={self.overflows} conformance_violations={self.conformance_violations}"
        )

    def summary(self, duration: float) -> SimulationSummary:
        """
        Сводка прогона для YAML-отчёта.

        Args:
            duration: длительность прогона, с

        Returns:
            SimulationSummary с итогами по потокам
        """
        flows = [
            FlowSimulation(
                flow=flow_id,
                slice=s["slice"],
                vdu=s["vdu"],
                count=s["count"],
                max_s=_finite(s["max"]),
                mean_s=_finite(s["mean"]),
                scheduler_bound_s=self.bounds.get(flow_id),
                gps_bound_s=self.gps_bounds.get(flow_id),
                exceedances=self.exceedances.get(flow_id, 0),
                gps_exceedances=self.gps_exceedances.get(flow_id, 0),
            )
            for flow_id, s in sorted(self.flows.items())
        ]
        return SimulationSummary(
            model=self.model,
            seed=self.seed,
            prng=self.prng,
            duration_s=duration,
            max_delay_s=self.max_delay,
            exceedances=sum(self.exceedances.values()),
            gps_exceedances=sum(self.gps_exceedances.values()),
            overflows=self.overflows,
            conformance_violations=self.conformance_violations,
            flows=flows,
        )


def _finite(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def queue_keys(flows: Iterable[RoutedFlow]) -> Dict[int, List[SliceKey]]:
    """Очереди каждого узла: ключи потоков, проходящих через узел"""
    keys: Dict[int, set] = {}
    for rf in flows:
        for v in rf.path.nodes:
            keys.setdefault(v, set()).add(rf.flow.key)
    return {v: sorted(ks) for v, ks in keys.items()}


def packet_bits_by_key(ctx: EvaluationContext) -> Dict[SliceKey, float]:
    """Наибольший пакет каждой очереди на транспорте, с накладными расходами"""
    sizes: Dict[SliceKey, float] = {}
    for rf in ctx.flows:
        bits = rf.flow.packet_bits * ctx.multiplier(rf.flow)
        sizes[rf.flow.key] = max(sizes.get(rf.flow.key, 0.0), bits)
    return sizes


def node_weights(
    node: int,
    keys: Sequence[SliceKey],
    shares: ShareTable,
    sizes: Dict[SliceKey, float],
    scheduler: SchedulerKind = "wrr",
    resolution: int = 16,
) -> Dict[SliceKey, int]:
    """Веса WRR в пакетах: w_q ∝ φ_q / L_q, чтобы доли бит следовали φ"""
    if scheduler == "rr":
        return {k: 1 for k in keys}
    per_bit = {k: shares.share(node, k) / sizes[k] for k in keys}
    missing = [str(k) for k, v in per_bit.items() if v <= 0]
    if missing:
        raise ZeroWeightsError(f"Узел {node}: нет доли для очередей {missing}")
    return shares_to_weights(per_bit, resolution)


def scheduler_curves(
    flows: Sequence[RoutedFlow],
    shares: ShareTable,
    topology: Topology,
    sizes: Dict[SliceKey, float],
    scheduler: SchedulerKind = "wrr",
    resolution: int = 16,
) -> Tuple[Dict[int, Dict[SliceKey, ServiceCurve]], Dict[int, Dict[SliceKey, int]]]:
    """
    Кривые обслуживания, которые WRR гарантирует очереди q узла v.

    W = Σ_j w_j s_j (нс) есть наибольшая длительность раунда; в каждом полном
    раунде очередь получает w_q L_q бит, отсюда (w_q L_q / W, W + T_v).
    """
    curves: Dict[int, Dict[SliceKey, ServiceCurve]] = {}
    weights: Dict[int, Dict[SliceKey, int]] = {}
    for v, keys in queue_keys(flows).items():
        node = topology.node(v)
        w = node_weights(v, keys, shares, sizes, scheduler, resolution)
        service = {k: ceil_ns(sizes[k] / node.capacity) for k in keys}
        round_ns = sum(w[k] * service[k] for k in keys)
        latency = (round_ns + ceil_ns(node.latency)) / NS_PER_S
        curves[v] = {
            k: ServiceCurve(w[k] * sizes[k] / round_ns * NS_PER_S, latency)
            for k in keys
        }
        weights[v] = w
    return curves, weights


def link_delays_ns(rf: RoutedFlow, light_speed: float) -> List[int]:
    return [ceil_ns(d / light_speed) for d in rf.path.distances]


def simulation_bound(
    foi: RoutedFlow,
    flows: Sequence[RoutedFlow],
    curves: Dict[int, Dict[SliceKey, ServiceCurve]],
    light_speed: float,
) -> float:
    """Граница задержки FoI по кривым планировщика плюс округлённое распространение"""
    key = foi.flow.key
    per_node = {v: curves[v][key] for v in foi.path.nodes}
    cross = [
        (rf.flow.arrival, rf.path.nodes)
        for rf in flows
        if rf.flow.key == key and rf.flow.id != foi.flow.id
    ]
    queueing = tree_delay_over_curves(foi.flow.arrival, foi.path.nodes, per_node, cross)
    return queueing + sum(link_delays_ns(foi, light_speed)) / NS_PER_S


def gps_bound(
    foi: RoutedFlow,
    flows: Sequence[RoutedFlow],
    ctx: EvaluationContext,
    packet_bits: Mapping[SliceKey, float],
) -> float:
    """
    Граница tree_delay по долям φ (кривые (φR, T)) плюс округлённое
    распространение. Кривые пакетизированы наибольшим пакетом очереди:
    пакет передаётся узлом целиком, и без этого слагаемого l/φR граница
    жидкостной модели ниже задержки store-and-forward уже на двух узлах.

    Args:
        foi: поток, для которого считается граница
        flows: все потоки с накладными расходами разбиения
        ctx: контекст оценки (доли, топология, скорость распространения)
        packet_bits: наибольший пакет каждой очереди, бит

    Returns:
        Граница задержки от CU до vDU, с
    """
    packetizer = PacketizerConfig(packet_bits[foi.flow.key])
    queueing = tree_delay(foi.flow, flows, ctx.shares, foi.path, ctx.topology, packetizer=packetizer)
    return queueing + sum(link_delays_ns(foi, ctx.light_speed)) / NS_PER_S


def queue_backlogs(ctx: EvaluationContext) -> Dict[QueueId, float]:
    """Граница бэклога каждой очереди: агрегат (Σρ, Σ*σ) против (φR, T_v)"""
    latencies = {n.id: n.latency for n in ctx.topology.nodes.values()}
    flows = list(ctx.effective_flows.values())
    result = {}
    for node, key in [k for k, _ in ctx.shares.items()]:
        members = [rf for rf in flows if rf.flow.key == key and node in rf.path.nodes]
        rate = math.fsum(rf.flow.rate for rf in members)
        burst = math.fsum(
            updated_burst(rf.flow.arrival, [latencies[n] for n in rf.path.prefix(node)])
            for rf in members
        )
        topo_node = ctx.topology.node(node)
        service = ServiceCurve(ctx.shares.share(node, key) * topo_node.capacity, topo_node.latency)
        result[(node, key)] = backlog_bound(ArrivalCurve(rate, burst), service)
    return result


def size_buffers(scenario: Scenario, decision: Decision) -> Dict[QueueId, int]:
    """Размер буфера каждой очереди в пакетах: бэклог вверх до целых пакетов, не меньше 1"""
    ctx = build_context(scenario, decision)
    sizes = packet_bits_by_key(ctx)
    buffers = {}
    for (node, key), bits in queue_backlogs(ctx).items():
        size = sizes.get(key)
        packets = math.ceil(bits / size - 1e-9) if size else 0
        buffers[(node, key)] = max(1, packets)
    logger.info(f"📦 Буферы: {len(buffers)} очередей, всего {sum(buffers.values())} пакетов")
    return buffers


class _Network:
    """Узлы, источники и приёмник одного прогона"""

    def __init__(
        self,
        env: simpy.Environment,
        ctx: EvaluationContext,
        weights: Dict[int, Dict[SliceKey, int]],
        buffers: Dict[QueueId, int],
        warmup_ns: int,
    ):
        self.env = env
        self.ctx = ctx
        self.warmup_ns = warmup_ns
        self.delays: Dict[str, List[int]] = {}
        self.link_ns: Dict[Tuple[int, int], int] = {}
        self.pipeline_ns = {n.id: ceil_ns(n.latency) for n in ctx.topology.nodes.values()}
        self.schedulers: Dict[int, WrrScheduler] = {}
        for v, w in weights.items():
            node = ctx.topology.node(v)
            node_buffers = {k: b for (n, k), b in buffers.items() if n == v}
            self.schedulers[v] = WrrScheduler(env, v, node.capacity, w, self.forward, node_buffers)
        for rf in ctx.flows:
            for (a, b), d in zip(rf.path.edges, rf.path.distances):
                self.link_ns[(a, b)] = ceil_ns(d / ctx.light_speed)

    def inject(self, packet: Packet) -> None:
        self.schedulers[packet.path[0]].enqueue(packet)

    def forward(self, packet: Packet, node: int) -> None:
        delay = self.pipeline_ns[node]
        last = packet.hop == len(packet.path) - 1
        if not last:
            delay += self.link_ns[(node, packet.path[packet.hop + 1])]
        self.env.process(self._deliver(packet, delay, last))

    def _deliver(self, packet: Packet, delay: int, last: bool):
        yield self.env.timeout(delay)
        if last:
            if packet.created >= self.warmup_ns:
                self.delays.setdefault(packet.flow_id, []).append(self.env.now - packet.created)
            return
        packet.hop += 1
        self.schedulers[packet.path[packet.hop]].enqueue(packet)


def _token_bucket_source(env, net: _Network, src: TrafficSource, rng: np.random.Generator, horizon: int, meter: TokenBucketMeter):
    period = max(1, ceil_ns(src.packet_bits / src.rate))
    yield env.timeout(int(rng.integers(0, period)))
    tokens = src.burst
    last = env.now
    while env.now < horizon:
        tokens = min(src.burst, tokens + src.rate * (env.now - last) / NS_PER_S)
        last = env.now
        if tokens + 1e-6 < src.packet_bits:
            wait = math.ceil((src.packet_bits - tokens) / src.rate * NS_PER_S)
            yield env.timeout(max(1, wait))
            continue
        tokens -= src.packet_bits
        meter.observe(env.now, src.packet_bits)
        net.inject(Packet(src.flow_id, src.key, src.packet_bits, env.now, src.path))


def _poisson_source(env, net: _Network, src: TrafficSource, rng: np.random.Generator, horizon: int, meter: TokenBucketMeter):
    mean_gap = src.packet_bits / src.rate
    while True:
        gap = max(1, int(round(rng.exponential(mean_gap) * NS_PER_S)))
        yield env.timeout(gap)
        if env.now >= horizon:
            return
        meter.observe(env.now, src.packet_bits)
        net.inject(Packet(src.flow_id, src.key, src.packet_bits, env.now, src.path))


def sources_from_context(ctx: EvaluationContext, model: TrafficModel) -> List[TrafficSource]:
    return [
        TrafficSource(
            flow_id=rf.flow.id,
            key=rf.flow.key,
            model=model,
            rate=rf.flow.rate,
            burst=rf.flow.burst,
            packet_bits=rf.flow.packet_bits * ctx.multiplier(rf.flow),
            path=rf.path.nodes,
        )
        for rf in sorted(ctx.effective_flows.values(), key=lambda rf: rf.flow.id)
    ]


def run(
    scenario: Scenario,
    decision: Decision,
    model: TrafficModel = "token_bucket",
    seed: Optional[int] = None,
    duration: Optional[float] = None,
    warmup: Optional[float] = None,
    scheduler: SchedulerKind = "wrr",
    buffers: Optional[Dict[QueueId, int]] = None,
) -> DelayStats:
    """
    Один прогон. Детерминирован при фиксированном seed.

    Пакеты на транспортных узлах несут накладные расходы разбиения своего vDU.

    Args:
        scenario: сценарий с топологией и потоками
        decision: доли, разбиения и число UE
        model: "token_bucket" (соответствует огибающей) или "poisson"
        seed: зерно PCG64, по умолчанию settings.default_seed
        duration: длительность, с
        warmup: пакеты, отправленные раньше, не учитываются
        scheduler: "wrr" или "rr"
        buffers: размеры буферов в пакетах, по умолчанию по границе бэклога

    Returns:
        DelayStats: задержки, обе границы и превышения по потокам
    """
    seed = seed if seed is not None else settings.default_seed
    duration = duration if duration is not None else settings.sim_duration_s
    warmup = warmup if warmup is not None else settings.sim_warmup_s
    if not duration > 0:
        raise ValueError(f"Длительность должна быть > 0: {duration}")

    ctx = build_context(scenario, decision)
    flows = list(ctx.effective_flows.values())
    stats = DelayStats(model=model, seed=seed)
    if not flows:
        return stats
    sizes = packet_bits_by_key(ctx)
    curves, weights = scheduler_curves(flows, ctx.shares, ctx.topology, sizes, scheduler, settings.wrr_resolution)
    if buffers is None:
        try:
            buffers = size_buffers(scenario, decision)
        except InstabilityError as e:
            logger.warning(f"⚠️ Буферы не ограничены: {e}")
            buffers = {}

    env = simpy.Environment()
    net = _Network(env, ctx, weights, buffers, ceil_ns(warmup))
    horizon = ceil_ns(duration)
    sources = sources_from_context(ctx, model)
    streams = np.random.SeedSequence(seed).spawn(len(sources))
    meters = {}
    for src, stream in zip(sources, streams):
        rng = np.random.Generator(np.random.PCG64(stream))
        meter = TokenBucketMeter(src.rate, src.burst)
        meters[src.flow_id] = meter
        process = _token_bucket_source if model == "token_bucket" else _poisson_source
        env.process(process(env, net, src, rng, horizon, meter))
    env.run(until=horizon)

    for rf in flows:
        samples = net.delays.get(rf.flow.id, [])
        summary = summarize_delays([d / NS_PER_S for d in samples])
        summary["slice"] = rf.flow.key.slice
        summary["vdu"] = rf.flow.key.vdu
        stats.flows[rf.flow.id] = summary
        try:
            bound = simulation_bound(rf, flows, curves, ctx.light_speed)
            gps = gps_bound(rf, flows, ctx, sizes)
        except (InstabilityError, SaturationError, ArithmeticError) as e:
            logger.warning(f"⚠️ Нет границы для {rf.flow.id}: {e}")
            continue
        stats.bounds[rf.flow.id] = bound
        stats.exceedances[rf.flow.id] = _count_above(samples, bound)
        stats.gps_bounds[rf.flow.id] = gps
        stats.gps_exceedances[rf.flow.id] = _count_above(samples, gps)
    for v, sched in net.schedulers.items():
        for key in sched.order:
            stats.max_backlog[f"v{v}:{key}"] = sched.max_backlog[key]
            stats.served_bits[f"v{v}:{key}"] = sched.served_bits[key]
        stats.overflows += sched.overflows
    stats.conformance_violations = sum(m.violations for m in meters.values())

    exceeded = sum(stats.exceedances.values())
    level = logging.ERROR if model == "token_bucket" else logging.WARNING
    if exceeded:
        logger.log(level, f"⚠️ Превышений границы планировщика: {exceeded} (модель {model})")
    gps_exceeded = sum(stats.gps_exceedances.values())
    if gps_exceeded:
        logger.log(level, f"⚠️ Превышений границы tree_delay: {gps_exceeded} (модель {model})")
    if stats.overflows:
        logger.warning(f"⚠️ Переполнений буферов: {stats.overflows}")
    logger.info(f"🎲 Прогон seed={seed}: максимум задержки {stats.max_delay * 1e6:.3f} мкс")
    return stats


def _count_above(samples_ns: Sequence[int], bound: float) -> int:
    limit_ns = bound * NS_PER_S
    return sum(1 for d in samples_ns if d > limit_ns + 1e-6)


def with_admitted(decision: Decision, vdu: int, n: int) -> Decision:
    admitted = dict(decision.admitted)
    admitted[vdu] = n
    return decision.model_copy(update={"admitted": admitted})


def _sweep_point(args) -> Tuple[int, int, float]:
    scenario, decision, vdu, n, seed, model, duration, scheduler = args
    stats = run(scenario, with_admitted(decision, vdu, n), model, seed, duration, scheduler=scheduler)
    values = [s["max"] for s in stats.flows.values() if s["vdu"] == vdu and s["count"] > 0]
    return n, seed, max(values) if values else 0.0


def sweep_ue_count(
    scenario: Scenario,
    decision: Decision,
    vdu: int,
    n_range: Iterable[int],
    seeds: Sequence[int] = (1,),
    model: TrafficModel = "poisson",
    duration: Optional[float] = None,
    scheduler: SchedulerKind = "wrr",
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """Максимальная задержка на vDU по числу UE: симуляция и аналитические границы"""
    n_values = list(n_range)
    workers = workers if workers is not None else settings.workers
    jobs = [
        (scenario, decision, vdu, n, seed, model, duration, scheduler)
        for n in n_values for seed in seeds
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(job) for job in jobs]

    simulated: Dict[int, float] = {}
    for n, _, value in results:
        simulated[n] = max(simulated.get(n, 0.0), value)

    rows = []
    for n in n_values:
        ctx = build_context(scenario, with_admitted(decision, vdu, n))
        flows = list(ctx.effective_flows.values())
        own = [rf for rf in flows if rf.flow.key.vdu == vdu and ctx.slice_kinds.get(rf.flow.key.slice) == "urllc"]
        sizes = packet_bits_by_key(ctx)
        curves, _ = scheduler_curves(flows, ctx.shares, ctx.topology, sizes, scheduler, settings.wrr_resolution)
        rows.append({
            "n": n,
            "simulated_max_s": simulated.get(n, 0.0),
            "scheduler_bound_s": _max_bound(lambda rf: simulation_bound(rf, flows, curves, ctx.light_speed), own),
            "gps_bound_s": _max_bound(lambda rf: gps_bound(rf, flows, ctx, sizes), own),
        })
    logger.info(f"📈 Развёртка по числу UE на vDU {vdu}: {len(rows)} точек")
    return pd.DataFrame(rows)


def _max_bound(bound: Callable[[RoutedFlow], float], flows: Sequence[RoutedFlow]) -> float:
    """Наибольшая граница по потокам; inf, если очередь нестабильна"""
    try:
        return max((bound(rf) for rf in flows), default=0.0)
    except (InstabilityError, SaturationError):
        return math.inf
