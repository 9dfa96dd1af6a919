"""
Unit тесты для констант каталога разбиений
"""
import pytest

from app.utils.constants import (
    CENTRALIZATION_RANK,
    CU_PREFIX_LENGTH,
    DELAY_PROFILES,
    EMBB_DEMAND_BPS,
    FIBER_SPEED_MPS,
    HLS_SPLITS,
    LLS_SPLITS,
    OVERHEAD_MULTIPLIERS,
    PROPAGATION_SPEEDS,
    RU_FFT_FRACTION,
    SPLIT_TAXONOMY,
    VNF_CHAIN,
)

pytestmark = pytest.mark.unit


class TestConstants:
    """Тесты согласованности таблиц"""

    def test_processing_fractions(self):
        """Тест: доли VNF и FFT на RU дают 100% с точностью округления"""
        total = sum(z for _, z in VNF_CHAIN) + RU_FFT_FRACTION
        assert total == pytest.approx(100.0, abs=0.05)

    def test_selectable_splits(self):
        """Тест: таблицы заданы для всех выбираемых разбиений"""
        assert set(HLS_SPLITS) == set(CU_PREFIX_LENGTH) == set(OVERHEAD_MULTIPLIERS) == set(CENTRALIZATION_RANK)
        assert set(HLS_SPLITS) | set(LLS_SPLITS) <= set(SPLIT_TAXONOMY)

    def test_cu_prefix_grows_with_centralization(self):
        """Тест: с централизацией на CU переходит больше VNF"""
        lengths = [CU_PREFIX_LENGTH[s] for s in HLS_SPLITS]
        assert lengths == sorted(lengths)
        assert lengths[0] == 1
        assert lengths[-1] == len(VNF_CHAIN)

    def test_multipliers(self):
        """Тест множителей накладных расходов: не меньше 1, у O1 ровно 1"""
        for small, large in OVERHEAD_MULTIPLIERS.values():
            assert small >= 1.0
            assert large >= 1.0
        assert OVERHEAD_MULTIPLIERS["O1"] == (1.0, 1.0)

    def test_delay_profiles(self):
        """Тест профилей требований к задержке разбиений"""
        for profile in DELAY_PROFILES.values():
            assert set(HLS_SPLITS) <= set(profile)
        assert DELAY_PROFILES["relaxed"]["O9"] == 2e-3
        assert DELAY_PROFILES["near_ideal"]["O9"] == 250e-6

    def test_embb_levels(self):
        """Тест: скорость eMBB растёт с долей RB"""
        rates = [EMBB_DEMAND_BPS[level] for level in sorted(EMBB_DEMAND_BPS)]
        assert rates == sorted(rates)
        assert EMBB_DEMAND_BPS[0.2] == pytest.approx(29.201e6)

    def test_propagation_speeds(self):
        """Тест: в оптоволокне сигнал идёт со скоростью 2/3 от скорости в вакууме"""
        assert FIBER_SPEED_MPS == 2e8
        assert PROPAGATION_SPEEDS["vacuum"] == 3e8
        assert FIBER_SPEED_MPS / PROPAGATION_SPEEDS["vacuum"] == pytest.approx(2 / 3)
