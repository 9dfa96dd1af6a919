"""
Unit тесты для оценки сквозной задержки
"""
import time

import pytest

from app.dependencies import build_context, build_shares, build_topology, propagation_speed
from app.schemas.decision import Decision
from app.services.delay_engine import (
    DelayBreakdown,
    ProcessingParams,
    analyze_flows,
    cross_traffic_along,
    end_to_end_delay,
    processing_components,
    processing_delay,
    sliced_tandem_delay,
    tandem_delay,
    tree_delay,
    tree_delay_over_curves,
)
from app.services.minplus import (
    ArrivalCurve,
    SaturationError,
    ServiceCurve,
    concatenate,
    delay_bound_single,
    leftover_fifo,
)
from app.services.split_catalog import SplitCatalog, placement_vector
from app.services.topology import FlowSpec, RoutedFlow, ShareTable, SliceKey
from tests.conftest import TANDEM_TOTAL_S

TANDEM_LATENCIES = {1: 40.96e-6, 2: 40.96e-6, 3: 36.384e-6, 4: 28.192e-6, 5: 24.096e-6}
TANDEM_PATH = (1, 2, 3, 4, 5)
F2_BURSTS = [4096, 4116.97152, 4137.94304, 4156.571648, 4171.005952]
F3_BURSTS = [2048, 2058.48576, 2068.97152, 2078.285824, 2085.502976]

REFERENCE_PROCESSING = ProcessingParams(z_s=750e-6, x_bps=1e9, k_u=16, k_0=32)

pytestmark = pytest.mark.unit


@pytest.fixture
def tandem_ctx(tandem_scenario, tandem_decision):
    return build_context(tandem_scenario, tandem_decision)


class TestFiveNodeTandem:
    """Тесты на пятиузловом примере с тремя потоками"""

    def test_tree_delay_golden(self, tandem_ctx):
        """Тест эталонной границы 1.43153667431 мс"""
        started = time.perf_counter()
        foi = tandem_ctx.flows[0]
        d = tree_delay(foi.flow, tandem_ctx.flows, tandem_ctx.shares, foi.path, tandem_ctx.topology)
        assert d == pytest.approx(TANDEM_TOTAL_S, rel=1e-9)
        assert time.perf_counter() - started < 1.0

    def test_updated_bursts(self):
        """Тест *σ перекрёстных потоков на каждом узле"""
        for bursts, (rate, sigma) in ((F2_BURSTS, (512e3, 4096)), (F3_BURSTS, (256e3, 2048))):
            aggregates = cross_traffic_along(
                TANDEM_PATH, [(ArrivalCurve(rate, sigma), TANDEM_PATH)], TANDEM_LATENCIES
            )
            for agg, expected in zip(aggregates, bursts):
                assert agg.burst == pytest.approx(expected, abs=1e-9)

    def test_cross_aggregates(self):
        """Тест суммарного перекрёстного трафика на узлах"""
        cross = [
            (ArrivalCurve(512e3, 4096), TANDEM_PATH),
            (ArrivalCurve(256e3, 2048), TANDEM_PATH),
        ]
        aggregates = cross_traffic_along(TANDEM_PATH, cross, TANDEM_LATENCIES)
        expected = [6144, 6175.45728, 6206.91456, 6234.857472, 6256.508928]
        assert [a.node for a in aggregates] == list(TANDEM_PATH)
        for agg, burst in zip(aggregates, expected):
            assert agg.rate == pytest.approx(768e3)
            assert agg.burst == pytest.approx(burst, abs=1e-9)
            assert agg.flows == 2

    def test_bottleneck(self, tandem_ctx):
        """Тест узкого места: минимум остаточных скоростей"""
        topology, shares = tandem_ctx.topology, tandem_ctx.shares
        key = SliceKey("urllc", 5)
        leftovers = [
            leftover_fifo(ServiceCurve(shares.share(v, key) * topology.node(v).capacity, 0.0), ArrivalCurve(768e3, 0.0))
            for v in TANDEM_PATH
        ]
        assert concatenate(leftovers).rate == pytest.approx(14.857e6, rel=1e-12)

    def test_end_to_end(self, tandem_ctx):
        """Тест полной задержки без обработки и распространения"""
        d = end_to_end_delay(tandem_ctx.flows[0], tandem_ctx)
        assert d.processing == 0.0
        assert d.propagation == 0.0
        assert d.total == pytest.approx(TANDEM_TOTAL_S, rel=1e-9)

    def test_analyze_rows(self, tandem_ctx):
        """Тест строк отчёта analyze"""
        rows = analyze_flows(tandem_ctx)
        assert [r.flow for r in rows] == ["f1", "f2", "f3"]
        assert rows[0].total == pytest.approx(TANDEM_TOTAL_S, rel=1e-9)
        assert rows[0].requirement == pytest.approx(2e-3)
        assert rows[0].margin == pytest.approx(2e-3 - TANDEM_TOTAL_S, rel=1e-9)

    def test_additive_is_looser(self, tandem_ctx):
        """Тест: аддитивная оценка не меньше древовидной"""
        foi = tandem_ctx.flows[0]
        args = (foi.flow, tandem_ctx.flows, tandem_ctx.shares, foi.path, tandem_ctx.topology)
        assert tree_delay(*args, method="additive") > tree_delay(*args)

    def test_sliced_tandem_matches(self):
        """Тест: тандем с долями совпадает с древовидной оценкой при общем маршруте"""
        nodes = [ServiceCurve(c, TANDEM_LATENCIES[v]) for v, c in zip(TANDEM_PATH, [0.05e9, 0.1e9, 0.25e9, 0.25e9, 0.25e9])]
        cross = [[ArrivalCurve(512e3, 4096), ArrivalCurve(256e3, 2048)]] * 5
        d = sliced_tandem_delay(ArrivalCurve(1.024e6, 1024), cross, nodes, [0.5, 0.25, 0.25, 0.125, 0.0625])
        assert d == pytest.approx(TANDEM_TOTAL_S, rel=1e-9)


class TestTandemFormulas:
    """Тесты частных случаев оценки"""

    def test_two_servers(self):
        """Тест раскрытой формулы для двух серверов"""
        foi, y = ArrivalCurve(1e5, 800), ArrivalCurve(2e5, 1600)
        s0, s1 = ServiceCurve(1e6, 1e-3), ServiceCurve(2e6, 5e-4)
        expected = (
            s0.latency + s1.latency
            + foi.burst / min(s0.rate - y.rate, s1.rate - y.rate)
            + y.burst / s0.rate
            + (y.rate * s0.latency + y.burst) / s1.rate
        )
        assert tandem_delay(foi, [y], [s0, s1]) == pytest.approx(expected, rel=1e-12)

    def test_no_cross_identical_nodes(self):
        """Тест: без перекрёстного трафика V·T + σ/R"""
        foi, s = ArrivalCurve(1e5, 800), ServiceCurve(1e6, 1e-4)
        assert tandem_delay(foi, [], [s] * 4) == pytest.approx(4e-4 + 800 / 1e6, rel=1e-12)

    def test_single_node_leftover(self):
        """Тест одного узла: граница на остаточной кривой"""
        foi, y, s = ArrivalCurve(1e5, 800), ArrivalCurve(2e5, 1600), ServiceCurve(1e6, 1e-4)
        expected = delay_bound_single(foi, leftover_fifo(s, y))
        assert tandem_delay(foi, [y], [s]) == pytest.approx(expected, rel=1e-12)

    def test_uniform_shares(self):
        """Тест: доли 1 сводят задачу к тандему"""
        foi, y = ArrivalCurve(1e5, 800), ArrivalCurve(2e5, 1600)
        nodes = [ServiceCurve(1e6, 1e-4), ServiceCurve(3e6, 2e-4)]
        assert sliced_tandem_delay(foi, [[y], [y]], nodes, [1.0, 1.0]) == pytest.approx(tandem_delay(foi, [y], nodes))

    def test_zero_share_saturates(self):
        """Тест нулевой доли FoI на узле"""
        foi = ArrivalCurve(1e5, 800)
        with pytest.raises(SaturationError) as info:
            sliced_tandem_delay(foi, [[], []], [ServiceCurve(1e6, 0.0)] * 2, [1.0, 0.0])
        assert info.value.node == 1

    def test_saturated_cross(self):
        """Тест перекрёстного трафика, равного выделенной скорости"""
        with pytest.raises(SaturationError):
            tandem_delay(ArrivalCurve(1.0, 8.0), [ArrivalCurve(1e6, 8.0)], [ServiceCurve(1e6, 0.0)])

    def test_no_cross_tree(self):
        """Тест дерева без перекрёстного трафика: ΣT + σ/min R"""
        curves = {1: ServiceCurve(2e6, 1e-4), 2: ServiceCurve(1e6, 2e-4)}
        d = tree_delay_over_curves(ArrivalCurve(1e5, 1000), (1, 2), curves, [])
        assert d == pytest.approx(3e-4 + 1000 / 1e6, rel=1e-12)

    def test_monotone_in_cross_and_shares(self, make_chain):
        """Тест монотонности: больше потоков или меньше доля, не меньше задержка"""
        scenario = make_chain([1e9, 1e9, 1e9], latencies=[1e-5, 1e-5, 1e-5])
        topology = build_topology(scenario)
        key = SliceKey("urllc", 3)
        path = topology.make_path([1, 2, 3])
        flows = [RoutedFlow(FlowSpec(f"f{i}", key, 1e6, 1024, 128), path) for i in range(4)]
        shares = ShareTable({(v, key): 0.5 for v in (1, 2, 3)})
        smaller = ShareTable({(1, key): 0.5, (2, key): 0.25, (3, key): 0.5})
        base = tree_delay(flows[0].flow, flows[:2], shares, path, topology)
        assert tree_delay(flows[0].flow, flows, shares, path, topology) >= base
        assert tree_delay(flows[0].flow, flows[:2], smaller, path, topology) >= base


class TestProcessing:
    """Тесты задержки обработки VNF"""

    def test_o9_all_cu(self):
        """Тест 60 UE при O9"""
        split = SplitCatalog().get("O9")
        d = processing_delay([1.024e6] * 60, placement_vector(split), SplitCatalog().vnfs, REFERENCE_PROCESSING)
        assert d == pytest.approx(1.356e-6, rel=1e-3)

    def test_o6_split(self):
        """Тест 60 UE при O6: часть на DU, часть на CU"""
        catalog = SplitCatalog()
        du, cu = processing_components(61.44e6, placement_vector(catalog.get("O6")), catalog.vnfs, REFERENCE_PROCESSING)
        assert du > 0 and cu > 0
        assert du + cu == pytest.approx(2.21e-6, rel=2e-3)

    def test_zero_load(self):
        """Тест нулевой нагрузки"""
        catalog = SplitCatalog()
        assert processing_delay([], placement_vector(catalog.get("O1")), catalog.vnfs, REFERENCE_PROCESSING) == 0.0

    def test_negative_load(self):
        """Тест отрицательной нагрузки"""
        catalog = SplitCatalog()
        with pytest.raises(ValueError):
            processing_components(-1.0, placement_vector(catalog.get("O1")), catalog.vnfs, REFERENCE_PROCESSING)

    def test_breakdown_total(self):
        """Тест сумм компонент"""
        d = DelayBreakdown(queueing=1e-4, processing_du=2e-6, processing_cu=1e-6, propagation=5e-5)
        assert d.processing == pytest.approx(3e-6)
        assert d.total == pytest.approx(1.53e-4)
        with pytest.raises(ValueError):
            DelayBreakdown(queueing=-1.0)


class TestReferenceDecision:
    """Тесты на опорном решении опорной топологии"""

    def test_vdu2_within_sla(self, relaxed_scenario, reference_decision):
        """Тест: vDU 2, 60 UE, граница не превышает 1 мс"""
        ctx = build_context(relaxed_scenario, reference_decision)
        flows = [rf for rf in ctx.flows if rf.flow.key == SliceKey("urllc", 2)]
        assert len(flows) == 60
        d = end_to_end_delay(flows[0], ctx)
        assert d.total <= 1e-3
        assert d.propagation == pytest.approx(4 * 5000 / 3e8)

    def test_all_urllc_within_sla(self, relaxed_scenario, reference_decision):
        """Тест: все потоки URLLC укладываются в 1 мс"""
        rows = analyze_flows(build_context(relaxed_scenario, reference_decision))
        urllc = [r for r in rows if r.slice == "urllc"]
        assert len(urllc) == 200
        assert all(r.total <= 1e-3 for r in urllc)

    def test_shares_table(self, reference_decision):
        """Тест таблицы долей решения"""
        shares = build_shares(reference_decision)
        assert shares.share(1, SliceKey("urllc", 1)) == pytest.approx(0.70)
        assert shares.share(8, SliceKey("urllc", 1)) == 0.0


class TestPropagationMedium:
    """Тесты скорости распространения по среде сценария"""

    @staticmethod
    def two_nodes(make_chain, **extra):
        scenario = make_chain(
            [1e9, 1e9],
            distance_m=2000.0,
            flows=[{
                "id": "f1", "slice": "urllc", "vdu": 2,
                "rate_bps": 1e6, "burst_bits": 1024, "packet_bytes": 128, "path": [1, 2],
            }],
            **extra,
        )
        decision = Decision.model_validate({
            "shares": [
                {"node": 1, "slice": "urllc", "vdu": 2, "share": 0.5},
                {"node": 2, "slice": "urllc", "vdu": 2, "share": 0.5},
            ],
        })
        return scenario, decision

    def test_fiber(self, make_chain):
        """Тест: 2 км оптоволокна дают 10 мкс"""
        scenario, decision = self.two_nodes(make_chain, propagation_medium="fiber")
        assert propagation_speed(scenario) == 2e8
        ctx = build_context(scenario, decision)
        d = end_to_end_delay(ctx.flows[0], ctx)
        assert d.propagation == pytest.approx(1e-5)

    def test_default_medium(self, make_chain):
        """Тест: без среды используется скорость из настроек (вакуум)"""
        scenario, decision = self.two_nodes(make_chain)
        assert scenario.propagation_medium is None
        ctx = build_context(scenario, decision)
        d = end_to_end_delay(ctx.flows[0], ctx)
        assert d.propagation == pytest.approx(2000.0 / 3e8)
