"""
Границы задержки срезов RAN и оптимизация прибыли оператора
"""

__version__ = "1.0.0"
