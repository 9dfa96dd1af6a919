"""
Утилиты для статистики задержек пакетов
"""
import logging
from typing import Dict, Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_PERCENTILES = (50.0, 90.0, 99.0, 99.9)


def percentile_label(q: float) -> str:
    """50.0 -> 'p50', 99.9 -> 'p99_9'"""
    text = f"{q:g}".replace(".", "_")
    return f"p{text}"


def summarize_delays(samples: Sequence[float], percentiles: Iterable[float] = DEFAULT_PERCENTILES) -> Dict[str, float]:
    """
    Сводка выборки задержек: count, max, mean и процентили.

    Пустая выборка даёт count = 0 и NaN в остальных полях.
    """
    percentiles = tuple(percentiles)
    data = np.asarray(samples, dtype=float)
    summary = {"count": int(data.size)}
    if data.size == 0:
        summary["max"] = float("nan")
        summary["mean"] = float("nan")
        for q in percentiles:
            summary[percentile_label(q)] = float("nan")
        return summary
    summary["max"] = float(data.max())
    summary["mean"] = float(data.mean())
    values = np.percentile(data, percentiles)
    for q, v in zip(percentiles, values):
        summary[percentile_label(q)] = float(v)
    return summary
