"""유한면의 공명 집합과 R(G) 하이퍼큐브의 대응"""
import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from core.cube_theory import InducedHypercube, hypercube, induced_hypercubes, maximal_hypercubes, theta_classes
from core.errors import Disconnected, NotAHypercube, NotElementary, NotResonant, PreconditionFailed, SizeLimitExceeded
from core.matching import (
    count_after_removal,
    enumerate_perfect_matchings,
    is_elementary,
    is_forcing_face,
    resonant_faces,
)
from core.plane_graph import PlaneGraph, cycle_interior
from core.resonance import ResonanceGraph, build_resonance_graph
from utils.config import load_settings
from utils.logging_config import setup_logger

logger = setup_logger()


@dataclass(frozen=True)
class FaceSet:
    faces: FrozenSet[int]

    @classmethod
    def of(cls, faces: Iterable[int]) -> "FaceSet":
        return cls(frozenset(faces))

    def __len__(self) -> int:
        return len(self.faces)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return len(self.faces), tuple(sorted(self.faces))

    def vertices(self, g: PlaneGraph) -> FrozenSet[int]:
        return frozenset().union(*(g.faces[f].vertex_set for f in self.faces))

    def to_json(self) -> List[int]:
        return sorted(self.faces)


def _pairwise_disjoint_subsets(g: PlaneGraph, faces: Sequence[int]) -> Iterable[FrozenSet[int]]:
    def extend(start: int, chosen: List[int], used: FrozenSet[int]):
        if chosen:
            yield frozenset(chosen)
        for k in range(start, len(faces)):
            boundary = g.faces[faces[k]].vertex_set
            if not boundary & used:
                chosen.append(faces[k])
                yield from extend(k + 1, chosen, used | boundary)
                chosen.pop()

    yield from extend(0, [], frozenset())


def enumerate_resonant_sets(g: PlaneGraph) -> List[FaceSet]:
    """비어 있지 않은 공명 집합, 크기와 면 번호 순 정렬"""
    found = set()
    for m in enumerate_perfect_matchings(g):
        for subset in _pairwise_disjoint_subsets(g, resonant_faces(g, m)):
            found.add(subset)
    return sorted((FaceSet(s) for s in found), key=FaceSet.sort_key)


def _require_resonant(g: PlaneGraph, s: FaceSet, known: Optional[Sequence[FaceSet]]) -> List[FaceSet]:
    sets = list(known) if known is not None else enumerate_resonant_sets(g)
    if s not in sets:
        raise NotResonant(f"faces {s.to_json()} do not form a resonant set of '{g.name}'")
    return sets


def is_maximal_resonant(g: PlaneGraph, s: FaceSet, known: Optional[Sequence[FaceSet]] = None) -> bool:
    sets = _require_resonant(g, s, known)
    return not any(s.faces < other.faces for other in sets)


def is_canonical_resonant(g: PlaneGraph, s: FaceSet, known: Optional[Sequence[FaceSet]] = None) -> bool:
    """G - V(S)가 비어 있거나 완전 매칭이 정확히 하나인지 확인"""
    _require_resonant(g, s, known)
    return count_after_removal(g, s.vertices(g), limit=2) == 1


def hypercube_face_labels(rg: ResonanceGraph, q: InducedHypercube) -> FaceSet:
    cube = rg.graph.subgraph(q.vertices)
    reference = hypercube(q.dimension)
    if cube.number_of_nodes() != reference.number_of_nodes() or not nx.is_isomorphic(cube, reference):
        raise NotAHypercube(f"vertices {list(q.vertices)} do not induce Q_{q.dimension}")
    return FaceSet.of(data["face"] for _, _, data in cube.edges(data=True))


def _cubes_with_labels(rg: ResonanceGraph, cubes: Sequence[InducedHypercube]) -> List[Tuple[InducedHypercube, FaceSet]]:
    return [(q, hypercube_face_labels(rg, q)) for q in cubes]


def preimage_count_check(g: PlaneGraph, s: FaceSet, rg: Optional[ResonanceGraph] = None) -> dict:
    """S로 라벨링된 R(G)의 유도 |S|-큐브 수와 G - V(S)의 완전 매칭 수 비교"""
    _require_resonant(g, s, None)
    rg = rg or build_resonance_graph(g)
    cubes = [q for q in induced_hypercubes(rg.graph) if q.dimension == len(s)]
    preimages = sum(1 for _, labels in _cubes_with_labels(rg, cubes) if labels == s)
    remainder = count_after_removal(g, s.vertices(g))
    return {
        "check": "preimage_count",
        "graph": g.name,
        "faces": s.to_json(),
        "status": "pass" if preimages == remainder else "fail",
        "hypercubes": preimages,
        "remainder_matchings": remainder,
    }


def check_cube_labels_resonant(g: PlaneGraph) -> dict:
    """R(G)의 모든 유도 하이퍼큐브가 같은 차원의 공명 집합으로 라벨링되는지 확인"""
    rg = build_resonance_graph(g)
    known = set(enumerate_resonant_sets(g))
    bad = []
    for q, labels in _cubes_with_labels(rg, induced_hypercubes(rg.graph)):
        if q.dimension == 0:
            continue
        if len(labels) != q.dimension or labels not in known:
            bad.append({"vertices": list(q.vertices), "faces": labels.to_json()})
    return {"check": "cube_labels_resonant", "graph": g.name, "status": "fail" if bad else "pass", "violations": bad}


def _canonical_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    start = cycle.index(min(cycle))
    rotated = tuple(cycle[start:]) + tuple(cycle[:start])
    if rotated[-1] < rotated[1]:
        rotated = (rotated[0],) + tuple(reversed(rotated[1:]))
    return rotated


def _simple_cycles(g: PlaneGraph, cycle_guard: int) -> List[Tuple[int, ...]]:
    cycles = set()
    for cycle in nx.simple_cycles(g.to_networkx()):
        if len(cycle) < 3:
            continue
        cycles.add(_canonical_cycle(cycle))
        if len(cycles) > cycle_guard:
            raise SizeLimitExceeded(f"cycle scan of '{g.name}'", len(cycles), cycle_guard, "RESLAB_CYCLE_GUARD")
    return sorted(cycles, key=lambda c: (len(c), c))


def nested_nice_cycles_scan(g: PlaneGraph, cycle_guard: Optional[int] = None) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    합집합이 nice(나머지 G에 완전 매칭이 존재)이고 내부가 겹치는, 정점이 서로소인 사이클 쌍
    """
    if g.is_k2():
        raise PreconditionFailed("K2 is excluded from the nested cycle scan")
    if not is_elementary(g):
        raise NotElementary(f"graph '{g.name}' is not elementary")
    guard = cycle_guard or load_settings().cycle_guard
    cycles = _simple_cycles(g, guard)
    interiors: Dict[Tuple[int, ...], FrozenSet[int]] = {c: cycle_interior(g, c) for c in cycles}
    nested = []
    for c1, c2 in itertools.combinations(cycles, 2):
        if set(c1) & set(c2):
            continue
        if not interiors[c1] & interiors[c2]:
            continue
        if count_after_removal(g, set(c1) | set(c2), limit=1):
            nested.append((c1, c2))
    logger.debug(f"'{g.name}': {len(cycles)} cycles scanned, {len(nested)} nested nice pairs")
    return nested


def verify_maximal_canonical_bijection(g: PlaneGraph) -> dict:
    """
    외곽면이 강제(forcing)인 elementary 그래프에서 극대 공명 집합은 정확히 정규 공명 집합이고,
    R(G)의 극대 하이퍼큐브를 면으로 라벨링하면 이들과 일대일 대응함.
    가설 밖의 그래프도 양쪽을 계산하여 보고
    """
    hypothesis = is_elementary(g) and all(is_forcing_face(g, f) for f in g.outer_faces)
    sets = enumerate_resonant_sets(g)
    maximal = [s for s in sets if is_maximal_resonant(g, s, sets)]
    canonical = [s for s in sets if is_canonical_resonant(g, s, sets)]
    if not sets:
        # no resonant set: the empty face set stands alone, labelling a Q_0
        maximal = canonical = [FaceSet.of(())]
    report = {
        "check": "maximal_canonical",
        "graph": g.name,
        "maximal_resonant_sets": [s.to_json() for s in maximal],
        "canonical_resonant_sets": [s.to_json() for s in canonical],
    }

    problems = []
    if set(maximal) != set(canonical):
        problems.append("maximal and canonical resonant sets differ")
    if not set(canonical) <= set(maximal):
        problems.append("a canonical resonant set is not maximal")

    rg = build_resonance_graph(g)
    try:
        result = theta_classes(rg.graph)
    except Disconnected:
        result = None
    if result is None or not result.is_partial_cube:
        problems.append("R(G) is not a connected partial cube")
        cubes = []
    else:
        cubes = _cubes_with_labels(rg, maximal_hypercubes(rg.graph, result.labelling))
    images = [labels for _, labels in cubes]
    if len(set(images)) != len(images) or set(images) != set(maximal):
        problems.append("face labels of maximal hypercubes are not a bijection onto maximal resonant sets")
    if any(len(labels) != q.dimension for q, labels in cubes):
        problems.append("a hypercube label set has the wrong cardinality")

    report["hypercubes"] = [{"dimension": q.dimension, "faces": labels.to_json()} for q, labels in cubes]
    report["dimensions"] = sorted((q.dimension for q, _ in cubes), reverse=True)
    report["problems"] = problems
    if not hypothesis:
        report["status"] = "outside_hypothesis"
        report["holds_anyway"] = not problems
    else:
        report["status"] = "fail" if problems else "pass"
    return report
