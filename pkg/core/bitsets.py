"""비트마스크 도우미. 마스크의 i번째 비트는 고정된 순서의 i번째 정점"""
from typing import Hashable, Iterator, List, Sequence

import networkx as nx


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_to_string(mask: int, n: int) -> str:
    # coordinate 0 is the leftmost character
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(n))


def string_to_mask(label: str) -> int:
    return sum(1 << i for i, ch in enumerate(label) if ch == "1")


def adjacency_masks(h: nx.Graph, order: Sequence[Hashable]) -> List[int]:
    position = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in h.edges():
        if u == v:
            continue
        adj[position[u]] |= 1 << position[v]
        adj[position[v]] |= 1 << position[u]
    return adj


def independent_masks(adj: Sequence[int]) -> List[int]:
    """모든 독립 집합 (공집합 먼저, 정렬된 원소 기준 사전순)"""
    n = len(adj)
    found: List[int] = []

    def extend(mask: int, start: int, blocked: int) -> None:
        found.append(mask)
        for v in range(start, n):
            if not (blocked >> v) & 1:
                extend(mask | (1 << v), v + 1, blocked | adj[v] | (1 << v))

    extend(0, 0, 0)
    return found


def clique_masks(adj: Sequence[int]) -> List[int]:
    """공집합을 포함한 모든 클리크, independent_masks와 같은 순서"""
    n = len(adj)
    found: List[int] = []

    def extend(mask: int, start: int, candidates: int) -> None:
        found.append(mask)
        for v in range(start, n):
            if (candidates >> v) & 1:
                extend(mask | (1 << v), v + 1, candidates & adj[v])

    extend(0, 0, (1 << n) - 1)
    return found
