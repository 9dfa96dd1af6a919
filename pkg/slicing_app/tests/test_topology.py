"""
Unit тесты для топологии, маршрутов и долей
"""
import pytest

from app.dependencies import build_shares, build_topology
from app.services.topology import (
    CycleDetectedError,
    InconsistentPathError,
    RoutePath,
    ShareTable,
    SliceKey,
    Topology,
    TransportNode,
    UnreachableNodeError,
    ZeroWeightsError,
    allocated_rate,
    enumerate_paths,
    propagation_delay,
    shares_to_weights,
    validate_feedforward,
    weights_to_shares,
)

pytestmark = pytest.mark.unit


class TestPaths:
    """Тесты перечисления маршрутов"""

    def test_ring_two_paths(self, ring_scenario):
        """Тест: v10 -> v1 по кольцу в обе стороны"""
        topology = build_topology(ring_scenario)
        paths = enumerate_paths(topology, 10, 1)
        labels = [p.label for p in paths]
        assert labels[0] == "10>9>7>5>1"
        assert "10>9>8>7>5>1" in labels
        assert len(paths) == 2

    def test_hop_limit(self, ring_scenario):
        """Тест ограничения числа переходов"""
        topology = build_topology(ring_scenario)
        assert [p.label for p in enumerate_paths(topology, 10, 1, hop_limit=4)] == ["10>9>7>5>1"]

    def test_chain_single_path(self, make_chain):
        """Тест линейной цепочки"""
        topology = build_topology(make_chain([1e9, 1e9]))
        paths = enumerate_paths(topology, 1, 2)
        assert len(paths) == 1
        assert paths[0].nodes == (1, 2)

    def test_disconnected(self):
        """Тест недостижимого узла"""
        topology = Topology(nodes={1: TransportNode(1, 1e9), 2: TransportNode(2, 1e9)})
        with pytest.raises(UnreachableNodeError):
            enumerate_paths(topology, 1, 2)

    def test_route_invariants(self):
        """Тест валидации маршрута"""
        with pytest.raises(InconsistentPathError):
            RoutePath((1, 2, 1), (0.0, 0.0))
        with pytest.raises(InconsistentPathError):
            RoutePath((1, 2), ())
        path = RoutePath((1, 2, 3), (10.0, 20.0))
        assert path.prefix(3) == (1, 2)
        assert path.edges == ((1, 2), (2, 3))

    def test_non_adjacent(self, make_chain):
        """Тест маршрута через несмежные узлы"""
        topology = build_topology(make_chain([1e9, 1e9, 1e9]))
        with pytest.raises(InconsistentPathError):
            topology.make_path([1, 3])


class TestShares:
    """Тесты долей и весов"""

    def test_weights_to_shares(self):
        """Тест пропорциональности"""
        assert weights_to_shares({"a": 2, "b": 1, "c": 1}) == {"a": 0.5, "b": 0.25, "c": 0.25}
        shares = weights_to_shares({"u": 0.70, "e": 0.30})
        assert shares["u"] == pytest.approx(0.70)
        assert weights_to_shares({"only": 3}) == {"only": 1.0}

    def test_zero_weights(self):
        """Тест нулевых весов"""
        with pytest.raises(ZeroWeightsError):
            weights_to_shares({"a": 0, "b": 0})
        with pytest.raises(ValueError):
            weights_to_shares({"a": -1, "b": 2})

    def test_shares_to_weights(self):
        """Тест целых весов WRR"""
        assert shares_to_weights({"a": 0.5, "b": 0.25, "c": 0.0}, resolution=4) == {"a": 4, "b": 2, "c": 0}
        assert shares_to_weights({"a": 1.0, "b": 1e-6}, resolution=16)["b"] == 1

    def test_allocated_rate(self):
        """Тест φ·R"""
        key = SliceKey("urllc", 1)
        table = ShareTable({(1, key): 0.70, (5, key): 0.0625})
        assert allocated_rate(TransportNode(1, 1.2e9), key, table) == pytest.approx(0.84e9)
        assert allocated_rate(TransportNode(5, 0.25e9), key, table) == pytest.approx(0.015625e9)
        assert allocated_rate(TransportNode(2, 1e9), key, table) == 0.0

    def test_share_range(self):
        """Тест доли вне [0, 1]"""
        with pytest.raises(ValueError):
            ShareTable({(1, SliceKey("urllc", 1)): 1.5})

    def test_node_total(self, reference_decision):
        """Тест суммы долей узлов решения"""
        table = build_shares(reference_decision)
        for node in table.nodes():
            assert table.node_total(node) <= 1.0 + 1e-9


class TestPropagation:
    """Тесты задержки распространения"""

    def test_four_links(self):
        """Тест 4 связей по 5 км"""
        path = RoutePath((10, 9, 7, 5, 1), (5000.0,) * 4)
        assert propagation_delay(path, 3e8) == pytest.approx(66.667e-6, rel=1e-4)

    def test_zero_length(self):
        """Тест маршрута из одного узла"""
        assert propagation_delay(RoutePath((1,), ()), 3e8) == 0.0

    def test_one_link(self):
        """Тест одной связи"""
        assert propagation_delay(RoutePath((1, 2), (5000.0,)), 3e8) == pytest.approx(16.667e-6, rel=1e-4)


class TestFeedForward:
    """Тесты проверки ацикличности"""

    def test_ring_downlink(self, ring_scenario):
        """Тест нисходящей ориентации опорной топологии"""
        assert validate_feedforward(build_topology(ring_scenario))

    def test_mutual_edge(self):
        """Тест связи, используемой маршрутами в обе стороны"""
        topology = Topology(nodes={1: TransportNode(1, 1e9), 2: TransportNode(2, 1e9)}, links={frozenset((1, 2)): 0.0})
        routes = [topology.make_path([1, 2]), topology.make_path([2, 1])]
        with pytest.raises(CycleDetectedError) as info:
            validate_feedforward(topology, routes)
        assert set(info.value.cycle) == {1, 2}

    def test_empty(self):
        """Тест пустой топологии"""
        assert validate_feedforward(Topology(nodes={}))

    def test_from_schema_roles(self, ring_scenario):
        """Тест ролей узлов"""
        topology = Topology.from_schema(ring_scenario.topology)
        assert topology.cu == 10
        assert topology.vdus == (1, 2, 3, 4)
        assert topology.distance(9, 10) == 5000.0
