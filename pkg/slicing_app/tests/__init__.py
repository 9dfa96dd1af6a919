"""
Тесты для Skin Analyzer API
"""
