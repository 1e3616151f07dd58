"""이분 그래프의 조합적 평면 임베딩

임베딩은 회전 시스템, 즉 각 정점마다 이웃의 시계 방향 순환 순서로 주어짐
면은 모든 다트의 오른쪽에 두고 추적하므로 유한면은 시계 방향,
각 성분의 외곽면은 반시계 방향으로 기록됨
"""
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from core.errors import BadRotation, NonPlanarEmbedding, NotACycle, NotBipartite, NotElementary, PreconditionFailed
from utils.logging_config import setup_logger

logger = setup_logger()

Dart = Tuple[int, int]


def edge_key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Color(str, Enum):
    WHITE = "White"
    BLACK = "Black"

    def other(self) -> "Color":
        return Color.BLACK if self is Color.WHITE else Color.WHITE


@dataclass(frozen=True)
class Face:
    id: int
    boundary: Tuple[int, ...]
    darts: Tuple[Dart, ...]
    edge_ids: FrozenSet[int]
    component: int
    is_finite: bool

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.boundary)

    @property
    def is_simple_cycle(self) -> bool:
        return len(self.darts) >= 3 and len(set(self.boundary)) == len(self.boundary)


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    rotations: Mapping[int, Tuple[int, ...]]
    faces: Tuple[Face, ...]
    component_outer: Tuple[int, ...]
    coloring: Mapping[int, Color]
    components: Tuple[FrozenSet[int], ...]
    vertex_component: Mapping[int, int] = field(repr=False)
    edge_index: Mapping[Tuple[int, int], int] = field(repr=False)
    dart_face: Mapping[Dart, int] = field(repr=False)
    name: str = ""

    @property
    def outer_face(self) -> int:
        """가장 작은 정점이 속한 성분의 외곽면"""
        return self.component_outer[0]

    @property
    def outer_faces(self) -> FrozenSet[int]:
        return frozenset(self.component_outer)

    def finite_faces(self) -> List[Face]:
        return [f for f in self.faces if f.is_finite]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_index

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[edge_key(u, v)]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def is_k2(self) -> bool:
        return len(self.vertices) == 2 and len(self.edges) == 1

    @cached_property
    def face_masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << e for e in f.edge_ids) for f in self.faces)

    def edge_pairs(self, edge_ids) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self.edges[e] for e in edge_ids)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph(name=self.name)
        graph.add_nodes_from(self.vertices)
        for i, (u, v) in enumerate(self.edges):
            graph.add_edge(u, v, id=i)
        return graph


@dataclass(frozen=True)
class InnerDual:
    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    def as_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class ColorabilityVerdict:
    is_p2c: bool
    reason: Optional[str] = None
    degree3_walk: Tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.is_p2c


def trace_faces(rotations: Mapping[int, Sequence[int]]) -> List[Tuple[Dart, ...]]:
    """다트 후속 관계 (u, v) -> (v, w)의 궤도, w는 v의 시계 방향 회전에서 u 바로 앞"""
    position = {v: {w: i for i, w in enumerate(rot)} for v, rot in rotations.items()}
    seen = set()
    walks = []
    for v in sorted(rotations):
        for w in rotations[v]:
            if (v, w) in seen:
                continue
            walk = []
            dart = (v, w)
            while dart not in seen:
                seen.add(dart)
                walk.append(dart)
                a, b = dart
                rot_b = rotations[b]
                dart = (b, rot_b[(position[b][a] - 1) % len(rot_b)])
            walks.append(tuple(walk))
    return walks


def _normalize(vertices, edges, rotations) -> Tuple[List[int], List[Tuple[int, int]], Dict[int, Tuple[int, ...]]]:
    vertex_input = [int(v) for v in vertices]
    vertex_list = sorted(set(vertex_input))
    if not vertex_list:
        raise BadRotation("a plane graph needs at least one vertex")
    if len(vertex_list) != len(vertex_input):
        raise BadRotation("duplicate vertex id")
    known = set(vertex_list)

    edge_list = []
    seen_edges = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise BadRotation(f"loop at vertex {u}")
        if u not in known or v not in known:
            raise BadRotation(f"edge ({u}, {v}) uses an unknown vertex")
        key = edge_key(u, v)
        if key in seen_edges:
            raise BadRotation(f"edge {key} listed twice")
        seen_edges.add(key)
        edge_list.append(key)

    rotation_map = {}
    for v, rot in rotations.items():
        v = int(v)
        if v not in known:
            raise BadRotation(f"rotation given for unknown vertex {v}")
        rot = tuple(int(w) for w in rot)
        if len(set(rot)) != len(rot):
            raise BadRotation(f"rotation of vertex {v} lists a neighbour twice")
        rotation_map[v] = rot
    for v in vertex_list:
        rotation_map.setdefault(v, ())

    appearances = Counter(edge_key(v, w) for v, rot in rotation_map.items() for w in rot)
    for key in edge_list:
        if appearances[key] != 2:
            raise BadRotation(f"edge {key} appears {appearances[key]} times in the rotations, expected 2")
    extra = set(appearances) - seen_edges
    if extra:
        raise BadRotation(f"rotations mention non-edges {sorted(extra)[:3]}")
    return vertex_list, edge_list, rotation_map


def _two_color(vertex_list: Sequence[int], rotations: Mapping[int, Sequence[int]]):
    coloring: Dict[int, Color] = {}
    components: List[FrozenSet[int]] = []
    for root in vertex_list:
        if root in coloring:
            continue
        coloring[root] = Color.WHITE
        members = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in rotations[v]:
                if w not in coloring:
                    coloring[w] = coloring[v].other()
                    members.append(w)
                    queue.append(w)
                elif coloring[w] == coloring[v]:
                    raise NotBipartite(f"edge ({v}, {w}) closes an odd cycle")
        components.append(frozenset(members))
    return coloring, components


RawFace = Tuple[Tuple[int, ...], Tuple[Dart, ...], int]
OuterChooser = Callable[[int, List[int], List[RawFace]], int]


def _assemble(vertex_list, edge_list, rotations, choose_outer: OuterChooser, name: str = "") -> PlaneGraph:
    coloring, components = _two_color(vertex_list, rotations)
    vertex_component = {v: i for i, comp in enumerate(components) for v in comp}
    edge_index = {e: i for i, e in enumerate(edge_list)}

    raw: List[RawFace] = []
    for walk in trace_faces(rotations):
        raw.append((tuple(d[0] for d in walk), walk, vertex_component[walk[0][0]]))
    for v in vertex_list:
        if not rotations[v]:
            raw.append(((v,), (), vertex_component[v]))

    faces_per_component = defaultdict(list)
    for i, (_, _, c) in enumerate(raw):
        faces_per_component[c].append(i)
    edges_per_component = Counter(vertex_component[u] for u, _ in edge_list)
    for c, comp in enumerate(components):
        euler = len(comp) - edges_per_component[c] + len(faces_per_component[c])
        if euler != 2:
            raise NonPlanarEmbedding(f"component of vertex {min(comp)}: V - E + F = {euler}, expected 2")

    component_outer = tuple(choose_outer(c, faces_per_component[c], raw) for c in range(len(components)))
    outer = set(component_outer)
    faces = tuple(
        Face(
            id=i,
            boundary=boundary,
            darts=darts,
            edge_ids=frozenset(edge_index[edge_key(a, b)] for a, b in darts),
            component=c,
            is_finite=i not in outer,
        )
        for i, (boundary, darts, c) in enumerate(raw)
    )
    dart_face = {dart: face.id for face in faces for dart in face.darts}
    return PlaneGraph(
        vertices=tuple(vertex_list),
        edges=tuple(edge_list),
        rotations=dict(rotations),
        faces=faces,
        component_outer=component_outer,
        coloring=coloring,
        components=tuple(components),
        vertex_component=vertex_component,
        edge_index=edge_index,
        dart_face=dart_face,
        name=name,
    )


def _longest_face(component: int, face_ids: List[int], raw: List[RawFace]) -> int:
    return min(face_ids, key=lambda i: (-len(raw[i][1]), min(raw[i][0]), i))


def _cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    a, b = tuple(a), tuple(b)
    return any(a[k:] + a[:k] == b for k in range(len(a)))


def _normalize_hints(outer_face_hint) -> List[Tuple[int, ...]]:
    if not outer_face_hint:
        return []
    if all(isinstance(v, int) for v in outer_face_hint):
        return [tuple(outer_face_hint)]
    return [tuple(int(v) for v in hint) for hint in outer_face_hint]


def build_embedding(vertices, edges, rotations, outer_face_hint=None, name: str = "") -> PlaneGraph:
    """
    회전 시스템 검증과 면 추적

    outer_face_hint는 외곽면의 주변을 시계 방향으로 나열한 경로 (성분마다 하나씩 주는
    목록도 가능). 반시계 방향 경로나 간선 집합만 일치하는 경로도 대안으로 허용함.
    힌트가 없는 성분은 가장 긴 면을 외곽면으로 삼고, 길이가 같으면 최소 정점 번호가
    작은 면을 고름
    """
    vertex_list, edge_list, rotation_map = _normalize(vertices, edges, rotations)
    hints = _normalize_hints(outer_face_hint)

    def choose(component: int, face_ids: List[int], raw: List[RawFace]) -> int:
        members = {v for i in face_ids for v in raw[i][0]}
        for hint in hints:
            if hint[0] not in members:
                continue
            for candidate in (tuple(reversed(hint)), hint):
                for i in face_ids:
                    if _cyclic_equal(raw[i][0], candidate):
                        return i
            wanted = {edge_key(hint[k], hint[(k + 1) % len(hint)]) for k in range(len(hint))}
            matches = [i for i in face_ids if {edge_key(a, b) for a, b in raw[i][1]} == wanted]
            if len(matches) == 1:
                return matches[0]
            raise BadRotation(f"outer face hint {list(hint)} matches no face")
        return _longest_face(component, face_ids, raw)

    known = set(vertex_list)
    for hint in hints:
        if any(v not in known for v in hint):
            raise BadRotation(f"outer face hint {list(hint)} uses an unknown vertex")

    g = _assemble(vertex_list, edge_list, rotation_map, choose, name=name)
    logger.debug(f"embedding '{name}' built: V={len(g.vertices)} E={len(g.edges)} F={len(g.faces)}")
    return g


def restrict(g: PlaneGraph, edge_ids, vertices=None, name: Optional[str] = None) -> PlaneGraph:
    """
    주어진 간선 위의 부분 임베딩, 회전은 g에서 물려받음

    결과의 각 성분의 외곽면은 g의 외곽면을 포함하는 면: 성분이 남기지 않은 간선마다
    g의 면을 합치고, g의 외곽면이 속한 묶음이 외곽면이 됨
    """
    kept_edges = [g.edges[i] for i in sorted(set(edge_ids))]
    endpoints = {v for e in kept_edges for v in e}
    vertex_list = sorted(endpoints | set(vertices)) if vertices is not None else list(g.vertices)
    kept = set(kept_edges)
    rotations = {v: tuple(w for w in g.rotations[v] if edge_key(v, w) in kept) for v in vertex_list}

    def choose(component: int, face_ids: List[int], raw: List[RawFace]) -> int:
        if len(face_ids) == 1:
            return face_ids[0]
        own_edges = {edge_key(a, b) for i in face_ids for a, b in raw[i][1]}
        host = g.vertex_component[raw[face_ids[0]][0][0]]
        merged = UnionFind()
        for u, v in g.edges:
            if g.vertex_component[u] == host and (u, v) not in own_edges:
                merged.union(g.dart_face[(u, v)], g.dart_face[(v, u)])
        target = merged[g.component_outer[host]]
        for i in face_ids:
            if merged[g.dart_face[raw[i][1][0]]] == target:
                return i
        raise NonPlanarEmbedding("no face of the restriction contains the outer face")

    return _assemble(vertex_list, kept_edges, rotations, choose, name=g.name if name is None else name)


def periphery(g: PlaneGraph, component: int = 0) -> Tuple[int, ...]:
    """성분의 외곽면을 가장 작은 정점부터 시계 방향으로 도는 경로"""
    face = g.faces[g.component_outer[component]]
    if not face.darts:
        return face.boundary
    walk = tuple(reversed(face.boundary))
    start = walk.index(min(walk))
    return walk[start:] + walk[:start]


def disjoint_union(g1: PlaneGraph, g2: PlaneGraph, name: str = "") -> PlaneGraph:
    offset = max(g1.vertices) + 1 - min(g2.vertices)
    shift = lambda v: v + offset  # noqa: E731
    vertices = list(g1.vertices) + [shift(v) for v in g2.vertices]
    edges = list(g1.edges) + [(shift(u), shift(v)) for u, v in g2.edges]
    rotations = dict(g1.rotations)
    rotations.update({shift(v): tuple(shift(w) for w in rot) for v, rot in g2.rotations.items()})
    hints = [periphery(g1, c) for c in range(len(g1.components))]
    hints += [tuple(shift(v) for v in periphery(g2, c)) for c in range(len(g2.components))]
    return build_embedding(vertices, edges, rotations, hints, name=name or f"{g1.name}+{g2.name}")


def inner_dual(g: PlaneGraph) -> InnerDual:
    dual_edges = set()
    for u, v in g.edges:
        left, right = g.dart_face[(u, v)], g.dart_face[(v, u)]
        if left != right and g.faces[left].is_finite and g.faces[right].is_finite:
            dual_edges.add(edge_key(left, right))
    return InnerDual(
        vertices=tuple(f.id for f in g.finite_faces()),
        edges=tuple(sorted(dual_edges)),
    )


def validate_cycle(g: PlaneGraph, c: Sequence[int]) -> Tuple[int, ...]:
    cycle = tuple(int(v) for v in c)
    if len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle = cycle[:-1]
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise NotACycle(f"{list(c)} is not a simple cycle")
    for k, v in enumerate(cycle):
        w = cycle[(k + 1) % len(cycle)]
        if v not in g.rotations or not g.has_edge(v, w):
            raise NotACycle(f"{v} and {w} are not adjacent")
    return cycle


def cycle_interior(g: PlaneGraph, c: Sequence[int]) -> FrozenSet[int]:
    """c의 유계 쪽 유한면: c의 간선을 지우면 외곽면과 끊어지는 면들"""
    cycle = validate_cycle(g, c)
    cut = {edge_key(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle))}
    component = g.vertex_component[cycle[0]]
    reach = UnionFind()
    for u, v in g.edges:
        if g.vertex_component[u] == component and (u, v) not in cut:
            reach.union(g.dart_face[(u, v)], g.dart_face[(v, u)])
    outside = reach[g.component_outer[component]]
    return frozenset(
        f.id for f in g.faces
        if f.is_finite and f.component == component and reach[f.id] != outside
    )


def clockwise_cycle(g: PlaneGraph, c: Sequence[int]) -> Tuple[int, ...]:
    """내부가 매 걸음의 오른쪽에 오도록 나열한 사이클"""
    cycle = validate_cycle(g, c)
    interior = cycle_interior(g, cycle)
    if g.dart_face[(cycle[0], cycle[1])] in interior:
        return cycle
    return (cycle[0],) + tuple(reversed(cycle[1:]))


def is_peripherally_2_colorable(g: PlaneGraph) -> ColorabilityVerdict:
    """
    차수는 2 또는 3, 차수 3 정점은 모두 주변(periphery) 위에 있고 그 색이 주변을 따라 교대
    순환 수열의 교대 여부는 색 교환과 역방향 순회에 불변이므로 한 번의 순회로 네 경우를 모두 판정
    """
    from core.matching import is_elementary

    if g.is_k2():
        raise PreconditionFailed("K2 is excluded from the peripheral 2-coloring test")
    if not is_elementary(g):
        raise NotElementary(f"graph '{g.name}' is not elementary")

    for v in g.vertices:
        if g.degree(v) not in (2, 3):
            return ColorabilityVerdict(False, f"vertex {v} has degree {g.degree(v)}")

    walk = periphery(g)
    on_periphery = set(walk)
    for v in g.vertices:
        if g.degree(v) == 3 and v not in on_periphery:
            return ColorabilityVerdict(False, f"degree-3 vertex {v} is not on the periphery")

    sequence = tuple(v for v in walk if g.degree(v) == 3)
    for k, v in enumerate(sequence):
        w = sequence[(k + 1) % len(sequence)]
        if v != w and g.coloring[v] == g.coloring[w]:
            return ColorabilityVerdict(
                False,
                f"degree-3 vertices {v} and {w} are both {g.coloring[v].value} along the periphery",
                sequence,
            )
    return ColorabilityVerdict(True, None, sequence)
