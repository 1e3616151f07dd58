"""ResLab: 평면 이분 그래프의 공명 그래프, 데이지 큐브, 독립 집합"""

__version__ = "0.1.0"
