"""
Бизнес-логика и сервисы
"""
