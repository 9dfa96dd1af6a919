"""
Утилиты
"""
