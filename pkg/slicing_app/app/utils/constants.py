"""
Константы проекта: параметры радиоинтерфейса, каталог функциональных
разбиений, доли обработки VNF и опорные данные для сценариев
"""

# Параметры радиоинтерфейса (NR numerology 0, 20 МГц, 100 RB)
RADIO_DEFAULTS = {
    "tbs_dl": 75376,          # бит
    "n_rb": 100,
    "sample_rate": 30.72e6,   # отсчётов/с
    "n_sc_rb": 12,
    "n_sym_sub": 14,
    "n_layers": 2,
    "n_iq": 32,               # бит на IQ-отсчёт
    "n_ap": 2,
    "n_dl_tbs": 2,
    "fapi_dl": 1.5e6,         # бит/с
    "ref_sym_res": 6,
    "pdcch_res": 144,
    "hdr_pdcp": 2,            # байт
    "hdr_rlc": 5,
    "hdr_mac": 2,
    "tti": 1e-3,              # с
    "n_ue": 1,
}

# Таксономия разбиений: идентификатор -> (3GPP, SCF, eCPRI)
SPLIT_TAXONOMY = {
    "O1": ("Opt. 1", "RRC-PDCP", "A"),
    "O2": ("Opt. 2-1", "PDCP-RLC", "B"),
    "O3": ("Opt. 3-1", "N/A", "N/A"),
    "O4": ("Opt. 4", "RLC-MAC", "C"),
    "O5": ("Opt. 5", "Split MAC", "N/A"),
    "O6": ("Opt. 6", "MAC-PHY", "D"),
    "O7": ("N/A", "I", "N/A"),
    "O8": ("Opt. 7-3", "II", "I_D"),
    "O9": ("Opt. 7-2x", "N/A", "II_D"),
    "O10": ("Opt. 7-1", "III", "N/A"),
    "O11": ("Opt. 8", "IIIb", "E"),
    "O12": ("N/A", "IV", "N/A"),
}

# Разбиения верхнего уровня (midhaul), доступные для выбора на vDU
HLS_SPLITS = ("O1", "O2", "O4", "O6", "O8", "O9")

# Разбиение нижнего уровня: ёмкость вычислима, размещения VNF нет
LLS_SPLITS = ("O11",)

# Цепочка VNF в порядке g = 1..6 (PHY-A всегда на RU)
VNF_CHAIN = (
    ("RRC", 2.17),
    ("PDCP", 18.7),
    ("RLC", 0.91),
    ("MAC", 13.24),
    ("PHY-C", 49.28),
    ("PHY-B", 9.89),
)
RU_FFT_FRACTION = 5.82  # PHY-A, процент полного времени обработки

# Сколько первых VNF цепочки размещено на CU для каждого разбиения
CU_PREFIX_LENGTH = {
    "O1": 1,
    "O2": 2,
    "O4": 3,
    "O6": 4,
    "O8": 5,
    "O9": 6,
}

# Множители накладных расходов на пакет: (128 B, 1500 B)
OVERHEAD_MULTIPLIERS = {
    "O1": (1.0, 1.0),
    "O2": (1.0157, 1.0014),
    "O4": (1.0547, 1.0047),
    "O6": (1.0704, 1.0060),
    "O8": (6.6214, 6.2235),
    "O9": (7.6338, 7.1751),
}

# Требования к односторонней задержке, с
DELAY_PROFILES = {
    "near_ideal": {
        "O1": 10e-3, "O2": 1.5e-3, "O4": 1e-3,
        "O6": 250e-6, "O8": 250e-6, "O9": 250e-6, "O11": 250e-6,
    },
    "relaxed": {
        "O1": 10e-3, "O2": 1.5e-3, "O4": 1e-3,
        "O6": 2e-3, "O8": 2e-3, "O9": 2e-3, "O11": 2e-3,
    },
}
DEFAULT_DELAY_PROFILE = "near_ideal"

# Ранг централизации для детерминированного выбора при равной прибыли
CENTRALIZATION_RANK = {"O9": 0, "O8": 1, "O6": 2, "O4": 3, "O2": 4, "O1": 5}

# Нагрузка eMBB на RU: доля RB -> требуемая скорость, бит/с
EMBB_DEMAND_BPS = {
    0.2: 29.201e6,
    0.4: 58.243e6,
    0.6: 87.109e6,
    0.8: 117.81e6,
}
EMBB_DEMAND_LEVELS = tuple(sorted(EMBB_DEMAND_BPS))

# Срез URLLC
URLLC_RATE_BPS = 1.024e6
URLLC_PACKET_BYTES = 128
URLLC_SLA_S = 1e-3
EMBB_PACKET_BYTES = 1500

# Обработка VNF: Z секунд на X бит/с одним ядром
PROCESSING_DEFAULTS = {
    "z_s": 750e-6,
    "x_bps": 1e9,
    "k_u": 16,
    "k_0": 32,
}

# Экономика
ECON_DEFAULTS = {
    "eta": 0.2585,
    "zeta": 0.5571,
    "f_max": 320,
    "c_du": 1.0,
}

# Финансовая отчётность оператора за квартал (суммы и подключения в млн)
VERIZON_Q3_2022 = {
    "wireless_revenue": 17_904.91,
    "wireless_cost": 9_975.68,
    "arpu_per_month": 41.67,  # долларов на подключение в месяц
    "months": 3,
    "total_connections": 143.243,  # млн подключений
}

# Пропускная способность транспортных узлов опорной топологии, бит/с
RING_CAPACITIES_BPS = {
    "vdu": 1.2e9,
    "du": 8e9,
    "ring": 20e9,
}
DEFAULT_LINK_DISTANCE_M = 5000.0

# Скорость распространения сигнала по линии, м/с
PROPAGATION_SPEEDS = {
    "vacuum": 3e8,
    "fiber": 2e8,
}
FIBER_SPEED_MPS = PROPAGATION_SPEEDS["fiber"]

# Численные допуски сравнений
SHARE_TOLERANCE = 1e-9
DELAY_TOLERANCE = 1e-12
