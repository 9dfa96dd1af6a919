"""
Базовые исключения и коды завершения CLI
"""

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_BUDGET_EXCEEDED = 3


class SlicingError(Exception):
    """Базовое исключение предметной области"""
    exit_code = EXIT_INPUT_ERROR


class ScenarioError(SlicingError):
    """Ошибка чтения или валидации входного файла"""
    pass
