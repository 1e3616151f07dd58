"""평면 이분 그래프의 완전 매칭과 이를 이용한 판정 함수"""
import time
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.bitsets import iter_bits, popcount
from core.errors import NoPerfectMatching, NotUnique, SizeLimitExceeded
from core.plane_graph import Color, PlaneGraph, clockwise_cycle, restrict, validate_cycle
from utils.config import load_settings
from utils.logging_config import setup_logger

logger = setup_logger()


@dataclass(frozen=True, order=True)
class Matching:
    edge_mask: int

    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.edge_mask))

    def __contains__(self, edge_id: int) -> bool:
        return bool((self.edge_mask >> edge_id) & 1)

    def __len__(self) -> int:
        return popcount(self.edge_mask)

    def to_json(self) -> List[int]:
        return list(self.edge_ids())


class EdgeStatus(str, Enum):
    ALLOWED = "Allowed"
    FORBIDDEN = "Forbidden"


@dataclass(frozen=True)
class EdgeClassification:
    statuses: Tuple[EdgeStatus, ...]

    def allowed(self) -> Tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.statuses) if s is EdgeStatus.ALLOWED)

    def forbidden(self) -> Tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.statuses) if s is EdgeStatus.FORBIDDEN)


@dataclass(frozen=True)
class ExtremalPair:
    m_bottom: Matching
    m_top: Matching


class Orientation(str, Enum):
    PROPER = "Proper"
    IMPROPER = "Improper"
    NOT_ALTERNATING = "NotAlternating"


def _perfect_matching_masks(vertex_list: Sequence[int], edge_list: Sequence[Tuple[int, int]],
                            limit: Optional[int] = None) -> List[int]:
    """덮이지 않은 가장 작은 정점 기준 백트래킹, 마스크의 i번째 비트는 edge_list[i]"""
    index = {v: i for i, v in enumerate(vertex_list)}
    n = len(vertex_list)
    incident: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edge_list):
        if u in index and v in index:
            incident[index[u]].append((index[v], 1 << e))
            incident[index[v]].append((index[u], 1 << e))
    full = (1 << n) - 1
    found: List[int] = []
    if n % 2:
        return found

    def extend(covered: int, mask: int) -> None:
        if limit is not None and len(found) >= limit:
            return
        if covered == full:
            found.append(mask)
            return
        free = ~covered & full
        low = free & -free
        v = low.bit_length() - 1
        for w, bit in incident[v]:
            if not (covered >> w) & 1:
                extend(covered | low | (1 << w), mask | bit)

    extend(0, 0)
    return found


def count_perfect_matchings(vertices: Iterable[int], edges: Sequence[Tuple[int, int]],
                            limit: Optional[int] = None) -> int:
    """`vertices`로 유도된 부분 그래프의 완전 매칭 수, 빈 정점 집합이면 1"""
    return len(_perfect_matching_masks(sorted(vertices), edges, limit))


def count_after_removal(g: PlaneGraph, removed: Iterable[int], limit: Optional[int] = None) -> int:
    """G - removed의 완전 매칭 수"""
    gone = set(removed)
    return count_perfect_matchings([v for v in g.vertices if v not in gone], g.edges, limit)


@lru_cache(maxsize=128)
def _cached_masks(g: PlaneGraph) -> Tuple[int, ...]:
    started = time.time()
    masks = tuple(sorted(_perfect_matching_masks(g.vertices, g.edges)))
    elapsed = time.time() - started
    if elapsed > 1.0:
        logger.info(f"'{g.name}': {len(masks)} perfect matchings enumerated in {elapsed:.2f}s")
    return masks


def enumerate_perfect_matchings(g: PlaneGraph, edge_guard: Optional[int] = None) -> List[Matching]:
    guard = edge_guard or load_settings().edge_guard
    if len(g.edges) > guard:
        raise SizeLimitExceeded(f"graph '{g.name}'", len(g.edges), guard, "RESLAB_EDGE_GUARD")
    return [Matching(mask) for mask in _cached_masks(g)]


def _require_matchings(g: PlaneGraph) -> List[Matching]:
    matchings = enumerate_perfect_matchings(g)
    if not matchings:
        raise NoPerfectMatching(f"graph '{g.name}' has no perfect matching")
    return matchings


def classify_edges(g: PlaneGraph) -> EdgeClassification:
    union = 0
    for m in _require_matchings(g):
        union |= m.edge_mask
    return EdgeClassification(tuple(
        EdgeStatus.ALLOWED if (union >> e) & 1 else EdgeStatus.FORBIDDEN for e in range(len(g.edges))
    ))


def is_allowed_edge(g: PlaneGraph, edge_id: int) -> bool:
    """열거와 독립적인 판정: uv는 G - u - v에 완전 매칭이 있을 때만 허용 간선"""
    u, v = g.edges[edge_id]
    return count_after_removal(g, (u, v), limit=1) == 1


def is_elementary(g: PlaneGraph) -> bool:
    classification = classify_edges(g)
    return len(g.components) == 1 and not classification.forbidden()


def allowed_subgraph(g: PlaneGraph) -> PlaneGraph:
    return restrict(g, classify_edges(g).allowed(), name=f"{g.name}[allowed]")


def elementary_components(g: PlaneGraph) -> List[PlaneGraph]:
    """금지 간선을 지운 G의 성분, 성분마다 자체 외곽면을 가짐"""
    allowed = set(classify_edges(g).allowed())
    pieces = []
    for k, members in enumerate(sorted(_allowed_components(g, allowed), key=min)):
        own = [e for e in allowed if g.edges[e][0] in members]
        pieces.append(restrict(g, own, vertices=members, name=f"{g.name}#{k}"))
    return pieces


def _allowed_components(g: PlaneGraph, allowed) -> List[FrozenSet[int]]:
    return list(allowed_subgraph(g).components) if allowed else [frozenset([v]) for v in g.vertices]


def is_weakly_elementary(g: PlaneGraph) -> bool:
    """허용 간선 부분 그래프의 유한면이 모두 G의 유한면 경계와 일치하는지 확인"""
    original = {g.edge_pairs(f.edge_ids) for f in g.finite_faces()}
    reduced = allowed_subgraph(g)
    return all(reduced.edge_pairs(f.edge_ids) in original for f in reduced.finite_faces())


def is_forcing_face(g: PlaneGraph, face_id: int) -> bool:
    return count_after_removal(g, g.faces[face_id].vertex_set, limit=2) == 1


def _orientation_along(g: PlaneGraph, m: Matching, clockwise: Sequence[int]) -> Orientation:
    steps = [(clockwise[k], clockwise[(k + 1) % len(clockwise)]) for k in range(len(clockwise))]
    matched = [g.edge_id(a, b) in m for a, b in steps]
    if len(steps) % 2 or any(matched[k] == matched[(k + 1) % len(steps)] for k in range(len(steps))):
        return Orientation.NOT_ALTERNATING
    a, _ = steps[0] if matched[0] else steps[1]
    return Orientation.PROPER if g.coloring[a] is Color.WHITE else Orientation.IMPROPER


def alternating_orientation(g: PlaneGraph, m: Matching, c: Sequence[int]) -> Orientation:
    """c를 시계 방향으로 돌 때 매칭 간선이 모두 White -> Black이면 Proper"""
    cycle = validate_cycle(g, c)
    return _orientation_along(g, m, clockwise_cycle(g, cycle))


def cycles_of_mask(g: PlaneGraph, mask: int) -> List[Tuple[int, ...]]:
    """모든 정점의 차수가 0 또는 2인 간선 집합(매칭의 대칭차)의 사이클"""
    neighbours: Dict[int, List[int]] = {}
    for e in iter_bits(mask):
        u, v = g.edges[e]
        neighbours.setdefault(u, []).append(v)
        neighbours.setdefault(v, []).append(u)
    cycles = []
    seen = set()
    for start in sorted(neighbours):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        previous, current = start, neighbours[start][0]
        while current != start:
            walk.append(current)
            seen.add(current)
            a, b = neighbours[current]
            previous, current = current, (b if a == previous else a)
        cycles.append(tuple(walk))
    return cycles


def extremal_matchings(g: PlaneGraph) -> ExtremalPair:
    """
    어떤 M'에 대해서도 M xor M'의 사이클이 proper M-교대가 아니면 M은 bottom 매칭,
    improper M-교대가 아니면 top 매칭
    """
    matchings = _require_matchings(g)
    clockwise: Dict[FrozenSet[int], Tuple[int, ...]] = {}

    def has_cycle(m: Matching, wanted: Orientation) -> bool:
        for other in matchings:
            if other == m:
                continue
            for cycle in cycles_of_mask(g, m.edge_mask ^ other.edge_mask):
                key = frozenset(cycle)
                if key not in clockwise:
                    clockwise[key] = clockwise_cycle(g, cycle)
                if _orientation_along(g, m, clockwise[key]) is wanted:
                    return True
        return False

    bottoms = [m for m in matchings if not has_cycle(m, Orientation.PROPER)]
    tops = [m for m in matchings if not has_cycle(m, Orientation.IMPROPER)]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NotUnique(f"'{g.name}': {len(bottoms)} bottom and {len(tops)} top candidates")
    return ExtremalPair(m_bottom=bottoms[0], m_top=tops[0])


def is_face_resonant(g: PlaneGraph, m: Matching, face_id: int) -> bool:
    face = g.faces[face_id]
    if not face.is_simple_cycle:
        return False
    matched = [g.edge_id(a, b) in m for a, b in face.darts]
    return all(matched[k] != matched[(k + 1) % len(matched)] for k in range(len(matched)))


def resonant_faces(g: PlaneGraph, m: Matching) -> List[int]:
    """경계가 M-교대인 유한면"""
    return [f.id for f in g.finite_faces() if is_face_resonant(g, m, f.id)]


def every_face_alternating(g: PlaneGraph) -> bool:
    """외곽면을 포함한 모든 면의 경계가 어떤 완전 매칭에 대해 교대인지 확인"""
    matchings = _require_matchings(g)
    return all(any(is_face_resonant(g, m, f.id) for m in matchings) for f in g.faces)
