"""
Тесты дискретно-событийного симулятора
"""
import math

import numpy as np
import pytest

from app.dependencies import build_context
from app.schemas.decision import Decision
from app.services.delay_engine import tree_delay
from app.services import simulator
from app.services.simulator import (
    TokenBucketMeter,
    ceil_ns,
    node_weights,
    queue_keys,
    run,
    scheduler_curves,
    size_buffers,
    sweep_ue_count,
    with_admitted,
)
from app.services.topology import ShareTable, SliceKey, ZeroWeightsError

URLLC_2 = SliceKey("urllc", 2)


@pytest.fixture
def single_flow(make_chain):
    """Цепочка 1-2, R = 1.2 Гбит/с, T = 10 мкс, один поток пакетов по 1500 B"""
    scenario = make_chain(
        [1.2e9, 1.2e9],
        latencies=[1e-5, 1e-5],
        flows=[{
            "id": "f1", "slice": "urllc", "vdu": 2,
            "rate_bps": 1.2e8, "burst_bits": 12000, "packet_bytes": 1500, "path": [1, 2],
        }],
    )
    decision = Decision.model_validate({
        "shares": [
            {"node": 1, "slice": "urllc", "vdu": 2, "share": 1.0},
            {"node": 2, "slice": "urllc", "vdu": 2, "share": 1.0},
        ],
    })
    return scenario, decision


@pytest.fixture
def admitted_chain(make_chain):
    """Цепочка 1-2 без явных потоков: число UE берётся из решения"""
    scenario = make_chain([1e9, 1e9], latencies=[1e-5, 1e-5])
    decision = Decision.model_validate({
        "admitted": {2: 1},
        "shares": [
            {"node": 1, "slice": "urllc", "vdu": 2, "share": 0.5},
            {"node": 2, "slice": "urllc", "vdu": 2, "share": 0.5},
        ],
    })
    return scenario, decision


class TestPrimitives:
    """Тесты вспомогательных функций"""

    def test_ceil_ns(self):
        """Тест округления времени вверх до наносекунд"""
        assert ceil_ns(1e-5) == 10_000
        assert ceil_ns(1.5e-9) == 2
        assert ceil_ns(0.0) == 0
        assert ceil_ns(-1.0) == 0

    def test_meter(self):
        """Тест онлайн-проверки token bucket"""
        meter = TokenBucketMeter(1e6, 2000)
        assert meter.observe(0, 1000)
        assert meter.observe(0, 1000)
        assert not meter.observe(0, 1000)
        assert meter.violations == 1
        assert meter.observe(2_000_000, 1000)
        assert meter.violations == 1

    def test_weights_follow_bits(self):
        """Тест весов WRR: w ∝ φ / L"""
        a, b = SliceKey("urllc", 1), SliceKey("embb", 1)
        shares = ShareTable({(1, a): 0.5, (1, b): 0.25})
        weights = node_weights(1, [a, b], shares, {a: 1024.0, b: 12000.0}, resolution=16)
        assert weights == {a: 16, b: 1}

    def test_round_robin_weights(self):
        """Тест: при RR все очереди получают вес 1"""
        a, b = SliceKey("urllc", 1), SliceKey("embb", 1)
        weights = node_weights(1, [a, b], ShareTable(), {a: 1024.0, b: 12000.0}, scheduler="rr")
        assert weights == {a: 1, b: 1}

    def test_missing_share(self):
        """Тест: очередь без доли на узле отклоняется"""
        a, b = SliceKey("urllc", 1), SliceKey("embb", 1)
        with pytest.raises(ZeroWeightsError):
            node_weights(1, [a, b], ShareTable({(1, a): 0.5}), {a: 1024.0, b: 12000.0})


class TestSingleFlow:
    """Тесты одного потока без перекрёстного трафика"""

    def test_exact_delay(self, single_flow):
        """Тест: каждый пакет идёт ровно 2·(10 мкс + 10 мкс)"""
        scenario, decision = single_flow
        stats = run(scenario, decision, "token_bucket", seed=3, duration=0.01)
        flow = stats.flows["f1"]
        assert flow["count"] > 50
        assert flow["max"] == pytest.approx(40e-6, abs=1e-12)
        assert flow["mean"] == pytest.approx(40e-6, abs=1e-12)
        assert stats.exceedances["f1"] == 0
        assert stats.conformance_violations == 0
        assert stats.overflows == 0

    def test_bound(self, single_flow):
        """Тест границы по кривым WRR: 2·(W + T) + σ/R"""
        scenario, decision = single_flow
        stats = run(scenario, decision, seed=1, duration=0.001)
        assert stats.bounds["f1"] == pytest.approx(2 * 170e-6 + 10e-6, rel=1e-12)

    def test_gps_bound(self, single_flow):
        """Тест границы tree_delay с пакетизатором: σ/R + 2·(T + l/R)"""
        scenario, decision = single_flow
        stats = run(scenario, decision, "token_bucket", seed=3, duration=0.01)
        assert stats.gps_bounds["f1"] == pytest.approx(50e-6, rel=1e-9)
        assert stats.gps_exceedances["f1"] == 0

    def test_deterministic(self, single_flow):
        """Тест: один seed даёт одинаковые результаты"""
        scenario, decision = single_flow
        first = run(scenario, decision, "poisson", seed=11, duration=0.01).frame()
        second = run(scenario, decision, "poisson", seed=11, duration=0.01).frame()
        assert first.equals(second)

    def test_warmup_excludes_packets(self, single_flow):
        """Тест: пакеты прогрева не учитываются"""
        scenario, decision = single_flow
        full = run(scenario, decision, seed=2, duration=0.01)
        warm = run(scenario, decision, seed=2, duration=0.01, warmup=0.005)
        assert 0 < warm.flows["f1"]["count"] < full.flows["f1"]["count"]

    def test_invalid_duration(self, single_flow):
        """Тест: нулевая длительность отклоняется"""
        scenario, decision = single_flow
        with pytest.raises(ValueError):
            run(scenario, decision, duration=0.0)

    def test_header(self, single_flow):
        """Тест заголовка прогона: seed и генератор"""
        scenario, decision = single_flow
        header = run(scenario, decision, seed=5, duration=0.001).header()
        assert "seed=5" in header
        assert "prng=PCG64" in header


class TestFiveNodeNetwork:
    """Тесты на пятиузловом тандеме с тремя потоками"""

    def test_buffers(self, tandem_scenario, tandem_decision):
        """Тест: бэклог каждой очереди округляется до 8 пакетов по 1024 бит"""
        buffers = size_buffers(tandem_scenario, tandem_decision)
        key = SliceKey("urllc", 5)
        assert buffers == {(v, key): 8 for v in range(1, 6)}

    def test_token_bucket_within_bound(self, tandem_scenario, tandem_decision):
        """Тест: источник token bucket не превышает границ планировщика"""
        stats = run(tandem_scenario, tandem_decision, "token_bucket", seed=1, duration=0.05)
        assert set(stats.bounds) == {"f1", "f2", "f3"}
        assert sum(stats.exceedances.values()) == 0
        assert stats.conformance_violations == 0
        for flow_id, summary in stats.flows.items():
            assert summary["count"] > 0
            assert summary["max"] <= stats.bounds[flow_id]

    def test_gps_bound_adds_packet_per_node(self, tandem_scenario, tandem_decision):
        """Тест: граница tree_delay = жидкостная граница + Σ l/(φR) по пяти узлам"""
        ctx = build_context(tandem_scenario, tandem_decision)
        f2 = next(rf for rf in ctx.flows if rf.flow.id == "f2")
        fluid = tree_delay(f2.flow, ctx.flows, ctx.shares, f2.path, ctx.topology)
        assert fluid == pytest.approx(1.0666e-3, rel=1e-3)
        stats = run(tandem_scenario, tandem_decision, "token_bucket", seed=1, duration=0.05)
        assert stats.gps_bounds["f2"] - fluid == pytest.approx(1.96608e-4, rel=1e-9)
        assert sum(stats.gps_exceedances.values()) == 0

    def test_summary(self, tandem_scenario, tandem_decision):
        """Тест YAML-сводки прогона"""
        stats = run(tandem_scenario, tandem_decision, "token_bucket", seed=2, duration=0.01)
        summary = stats.summary(0.01)
        assert summary.seed == 2
        assert summary.model == "token_bucket"
        assert summary.duration_s == 0.01
        assert [f.flow for f in summary.flows] == ["f1", "f2", "f3"]
        assert summary.exceedances == 0
        assert summary.gps_exceedances == 0
        assert summary.max_delay_s == pytest.approx(stats.max_delay)
        assert summary.flows[0].scheduler_bound_s == stats.bounds["f1"]

    def test_poisson_breaks_conformance(self, tandem_scenario, tandem_decision):
        """Тест: пуассоновский источник нарушает огибающую одного пакета"""
        stats = run(tandem_scenario, tandem_decision, "poisson", seed=1, duration=0.05)
        assert stats.conformance_violations > 0

    def test_round_robin(self, tandem_scenario, tandem_decision):
        """Тест прогона с планировщиком RR"""
        stats = run(tandem_scenario, tandem_decision, seed=1, duration=0.01, scheduler="rr")
        assert stats.flows["f1"]["count"] > 0
        assert math.isfinite(stats.bounds["f1"])

    def test_served_bits(self, tandem_scenario, tandem_decision):
        """Тест: по маршруту обслужено не больше бит, чем на предыдущем узле"""
        stats = run(tandem_scenario, tandem_decision, seed=4, duration=0.01)
        served = [stats.served_bits[f"v{v}:urllc@5"] for v in range(1, 6)]
        assert all(b > 0 for b in served)
        assert served == sorted(served, reverse=True)

    def test_frame(self, tandem_scenario, tandem_decision):
        """Тест таблицы итогов по потокам"""
        frame = run(tandem_scenario, tandem_decision, seed=1, duration=0.01).frame()
        assert list(frame["flow"]) == ["f1", "f2", "f3"]
        assert {"count", "max", "mean", "p99", "bound", "exceedances", "gps_bound", "gps_exceedances"} <= set(frame.columns)


class TestCurves:
    """Тесты кривых планировщика"""

    def test_queue_keys(self, single_flow):
        """Тест очередей узлов по маршрутам потоков"""
        ctx = build_context(*single_flow)
        assert queue_keys(ctx.flows) == {1: [URLLC_2], 2: [URLLC_2]}

    def test_single_queue_curve(self, single_flow):
        """Тест кривой WRR для единственной очереди узла"""
        ctx = build_context(*single_flow)
        curves, weights = scheduler_curves(list(ctx.flows), ctx.shares, ctx.topology, {URLLC_2: 12000.0})
        assert weights == {1: {URLLC_2: 16}, 2: {URLLC_2: 16}}
        assert curves[1][URLLC_2].rate == pytest.approx(1.2e9)
        assert curves[1][URLLC_2].latency == pytest.approx(170e-6)


class TestSweep:
    """Тесты развёртки по числу UE"""

    def test_with_admitted(self, admitted_chain):
        """Тест: копия решения с новым числом UE не меняет исходное"""
        _, decision = admitted_chain
        assert with_admitted(decision, 2, 5).admitted == {2: 5}
        assert decision.admitted == {2: 1}

    def test_sweep_columns(self, admitted_chain):
        """Тест развёртки: границы растут с числом UE"""
        scenario, decision = admitted_chain
        frame = sweep_ue_count(scenario, decision, 2, [1, 3], seeds=(1, 2), duration=0.02, workers=1)
        assert list(frame.columns) == ["n", "simulated_max_s", "scheduler_bound_s", "gps_bound_s"]
        assert list(frame["n"]) == [1, 3]
        assert (frame["simulated_max_s"] > 0).all()
        assert frame["gps_bound_s"].iloc[1] > frame["gps_bound_s"].iloc[0]
        assert frame["scheduler_bound_s"].iloc[1] > frame["scheduler_bound_s"].iloc[0]

    def test_missing_share_raises(self, admitted_chain):
        """Тест: прогон без доли на узле маршрута отклоняется"""
        scenario, decision = admitted_chain
        broken = decision.model_copy(update={"shares": decision.shares[:1]})
        with pytest.raises(ZeroWeightsError):
            simulator.run(scenario, broken, duration=0.001)


def random_tandem(make_chain, rng):
    """Случайный тандем из 2-5 узлов, одна очередь URLLC, 1-4 потока по всему маршруту"""
    size = int(rng.integers(2, 6))
    capacities = [float(c) for c in rng.choice([1e7, 2e7, 5e7, 1e8], size=size)]
    latencies = [float(t) for t in rng.uniform(0.0, 5e-5, size=size)]
    path = list(range(1, size + 1))
    flows = [
        {
            "id": f"f{i + 1}", "slice": "urllc", "vdu": size,
            "rate_bps": float(rng.uniform(1e5, 1e6)),
            "burst_bits": 1024.0 * int(rng.integers(1, 5)),
            "packet_bytes": 128, "path": path,
        }
        for i in range(int(rng.integers(1, 5)))
    ]
    load = sum(f["rate_bps"] for f in flows)
    shares = []
    for v, c in zip(path, capacities):
        k = next(k for k in range(1, 17) if k / 16 * c > 1.2 * load)
        shares.append({"node": v, "slice": "urllc", "vdu": size, "share": k / 16})
    scenario = make_chain(
        capacities,
        latencies=latencies,
        flows=flows,
        processing={"z_s": 0.0},
        splits={"apply_overhead": False},
    )
    return scenario, Decision.model_validate({"shares": shares})


@pytest.mark.slow
class TestRandomTandems:
    """Тесты: на случайных тандемах задержки не выходят за аналитические границы"""

    def test_no_exceedances(self, make_chain):
        """Тест: 100 тандемов по 5 seed, источник token bucket"""
        rng = np.random.default_rng(2024)
        for _ in range(100):
            scenario, decision = random_tandem(make_chain, rng)
            for seed in range(5):
                stats = run(scenario, decision, "token_bucket", seed=seed, duration=0.01)
                assert stats.conformance_violations == 0
                assert sum(stats.exceedances.values()) == 0
                assert sum(stats.gps_exceedances.values()) == 0
                assert set(stats.gps_bounds) == set(stats.flows)
