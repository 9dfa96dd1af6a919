"""
Pydantic схемы для валидации
"""
