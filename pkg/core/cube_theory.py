"""
부분 큐브와 데이지 큐브

라벨은 i번째 문자가 좌표 i인 이진 문자열이며, 내부에서는 같은 라벨을
정수 마스크(비트 i = 좌표 i)로 다룸
"""
import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from networkx.utils import UnionFind
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from core.bitsets import adjacency_masks, clique_masks, independent_masks, iter_bits, mask_to_string, popcount, string_to_mask
from core.errors import BadParameter, Disconnected, NotPartialCube, SizeLimitExceeded
from utils.config import load_settings
from utils.logging_config import setup_logger

logger = setup_logger()

Edge = Tuple[Hashable, Hashable]


@dataclass(frozen=True)
class CubeLabelling:
    order: Tuple[Hashable, ...]
    labels: Dict[Hashable, str]
    n_coords: int
    # coordinate k <-> k-th Θ-class, listed by its edges
    class_edges: Tuple[Tuple[Edge, ...], ...] = ()

    def mask(self, v: Hashable) -> int:
        return string_to_mask(self.labels[v])

    def masks(self) -> List[int]:
        return [self.mask(v) for v in self.order]

    def vertex_of(self) -> Dict[int, Hashable]:
        return {self.mask(v): v for v in self.order}

    def theta_class_of_coordinate(self, k: int) -> Tuple[Edge, ...]:
        return self.class_edges[k]

    def to_json(self) -> dict:
        return {
            "n_coords": self.n_coords,
            "labels": {str(v): self.labels[v] for v in self.order},
        }


@dataclass(frozen=True)
class ThetaResult:
    classes: Tuple[Tuple[Edge, ...], ...]
    is_partial_cube: bool
    labelling: Optional[CubeLabelling]
    reason: Optional[str] = None


@dataclass(frozen=True)
class DaisyCertificate:
    base_vertex: Hashable
    n_coords: int
    maximal_vertices: Tuple[str, ...]
    labels: Dict[Hashable, str] = field(repr=False)

    def __bool__(self) -> bool:
        return True

    def closure(self) -> FrozenSet[str]:
        return downward_closure(self.maximal_vertices, self.n_coords)

    def check(self) -> bool:
        """극대 정점들의 아래 닫힘이 라벨 집합과 같고 극대 정점들이 반사슬인지 확인"""
        masks = [string_to_mask(s) for s in self.maximal_vertices]
        antichain = all(a & b != a for a, b in itertools.permutations(masks, 2))
        return antichain and self.closure() == frozenset(self.labels.values())

    def to_json(self) -> dict:
        return {
            "base_vertex": self.base_vertex,
            "n_coords": self.n_coords,
            "maximal_vertices": list(self.maximal_vertices),
        }


@dataclass(frozen=True)
class DaisyRefutation:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class MedianVerdict:
    is_median: bool
    witness: Tuple[Hashable, ...] = ()
    median_count: Optional[int] = None

    def __bool__(self) -> bool:
        return self.is_median


@dataclass(frozen=True)
class InducedHypercube:
    vertices: Tuple[Hashable, ...]
    dimension: int
    theta_classes: Tuple[int, ...]
    anchor: int = field(default=0, repr=False)

    @property
    def vertex_set(self) -> FrozenSet[Hashable]:
        return frozenset(self.vertices)

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "theta_classes": list(self.theta_classes),
                "vertices": [str(v) for v in self.vertices]}


class MaximalHypercube(InducedHypercube):
    pass


def _distance_matrix(h: nx.Graph, order: Sequence[Hashable]) -> np.ndarray:
    adjacency = nx.to_scipy_sparse_array(h, nodelist=list(order), format="csr")
    return shortest_path(adjacency, unweighted=True, directed=False)


def _require_connected(h: nx.Graph) -> None:
    if h.number_of_nodes() == 0 or not nx.is_connected(h):
        raise Disconnected(f"graph with {h.number_of_nodes()} vertices is not connected")


def theta_classes(h: nx.Graph) -> ThetaResult:
    """
    전체 쌍 거리로부터 Djoković-Winkler 관계 계산

    클래스는 가장 작은 간선 순 (간선 순서 = h.edges()). 정점 라벨의 비트 k는
    그 정점이 클래스 k의 대표 간선 건너편에 있는지를 나타냄
    """
    _require_connected(h)
    order = tuple(h.nodes())
    edges = [tuple(e) for e in h.edges()]
    if not edges:
        labelling = CubeLabelling(order, {v: "" for v in order}, 0, ())
        return ThetaResult((), True, labelling)

    position = {v: i for i, v in enumerate(order)}
    dist = _distance_matrix(h, order).astype(np.int64)
    a = np.array([position[u] for u, _ in edges])
    b = np.array([position[v] for _, v in edges])
    theta = (dist[np.ix_(a, a)] + dist[np.ix_(b, b)]) != (dist[np.ix_(a, b)] + dist[np.ix_(b, a)])

    _, component_of = connected_components(csr_matrix(theta), directed=False)
    renumber: Dict[int, int] = {}
    for c in component_of:
        renumber.setdefault(int(c), len(renumber))
    members: List[List[int]] = [[] for _ in renumber]
    for e, c in enumerate(component_of):
        members[renumber[int(c)]].append(e)
    classes = tuple(tuple(edges[e] for e in group) for group in members)

    for group in members:
        if not theta[np.ix_(group, group)].all():
            return ThetaResult(classes, False, None, "Θ is not transitive")

    rep_x = np.array([a[group[0]] for group in members])
    rep_y = np.array([b[group[0]] for group in members])
    near_x, near_y = dist[:, rep_x], dist[:, rep_y]
    if (near_x == near_y).any():
        return ThetaResult(classes, False, None, "graph is not bipartite")
    bits = near_y < near_x
    hamming = (bits[:, None, :] != bits[None, :, :]).sum(axis=2)
    if not np.array_equal(hamming, dist):
        return ThetaResult(classes, False, None, "Θ-labelling is not isometric")

    labels = {v: "".join("1" if bit else "0" for bit in bits[i]) for i, v in enumerate(order)}
    labelling = CubeLabelling(order, labels, len(members), classes)
    logger.debug(f"partial cube: {len(order)} vertices, {len(members)} Θ-classes")
    return ThetaResult(classes, True, labelling)


def labelling_from_strings(h: nx.Graph) -> CubeLabelling:
    """노드가 이미 같은 길이의 이진 문자열인 그래프의 라벨링"""
    order = tuple(h.nodes())
    lengths = {len(v) for v in order}
    if len(lengths) > 1:
        raise BadParameter(f"node labels of different lengths: {sorted(lengths)}")
    n = lengths.pop() if lengths else 0
    by_coordinate: List[List[Edge]] = [[] for _ in range(n)]
    for u, v in h.edges():
        flipped = string_to_mask(u) ^ string_to_mask(v)
        if popcount(flipped) != 1:
            raise BadParameter(f"edge {u}-{v} does not flip exactly one coordinate")
        by_coordinate[flipped.bit_length() - 1].append((u, v))
    return CubeLabelling(order, {v: v for v in order}, n, tuple(tuple(c) for c in by_coordinate))


def downward_closure(maximal_vertices: Iterable[str], n_coords: int) -> FrozenSet[str]:
    closure = set()
    for label in maximal_vertices:
        top = string_to_mask(label)
        sub = top
        while True:
            closure.add(mask_to_string(sub, n_coords))
            if sub == 0:
                break
            sub = (sub - 1) & top
    return frozenset(closure)


def _maximal_masks(masks: Iterable[int], n: int) -> List[int]:
    present = set(masks)
    return [m for m in present if not any((m | (1 << i)) in present for i in range(n) if not (m >> i) & 1)]


def _downward_closed(masks: FrozenSet[int]) -> bool:
    return all((m ^ (1 << i)) in masks for m in masks for i in iter_bits(m))


def daisy_certificates(labelling: CubeLabelling) -> Iterator[DaisyCertificate]:
    """라벨 집합을 아래로 닫힌 집합으로 만드는 모든 기준 정점 (정점 순서대로)"""
    masks = labelling.masks()
    n = labelling.n_coords
    for base, base_mask in zip(labelling.order, masks):
        shifted = [m ^ base_mask for m in masks]
        if not _downward_closed(frozenset(shifted)):
            continue
        maximal = sorted(mask_to_string(m, n) for m in _maximal_masks(shifted, n))
        labels = {v: mask_to_string(m, n) for v, m in zip(labelling.order, shifted)}
        yield DaisyCertificate(base, n, tuple(maximal), labels)


def is_daisy_cube(h: nx.Graph) -> Union[DaisyCertificate, DaisyRefutation]:
    result = theta_classes(h)
    if not result.is_partial_cube:
        return DaisyRefutation(f"not a partial cube: {result.reason}")
    for certificate in daisy_certificates(result.labelling):
        return certificate
    return DaisyRefutation("no base vertex gives a downward-closed label set")


def _interval_rows(dist: np.ndarray, a: int, targets: np.ndarray) -> np.ndarray:
    """rows[k, x]: x가 a와 targets[k] 사이 최단 경로 위에 있는지 여부"""
    return (dist[a][None, :] + dist[targets]) == dist[a, targets][:, None]


def is_median_graph(h: nx.Graph) -> MedianVerdict:
    """서로 다른 세 정점마다 세 구간 모두에 속하는 정점이 정확히 하나인지 확인"""
    _require_connected(h)
    order = tuple(h.nodes())
    n = len(order)
    dist = _distance_matrix(h, order).astype(np.int64)
    everyone = np.arange(n)
    # interval relation, one n x n slice per u
    for u in range(n - 2):
        from_u = _interval_rows(dist, u, everyone)
        for v in range(u + 1, n - 1):
            ws = np.arange(v + 1, n)
            common = from_u[v][None, :] & from_u[ws] & _interval_rows(dist, v, ws)
            counts = common.sum(axis=1)
            bad = np.nonzero(counts != 1)[0]
            if len(bad):
                w = int(ws[bad[0]])
                return MedianVerdict(False, (order[u], order[v], order[w]), int(counts[bad[0]]))
    return MedianVerdict(True)


def _subcubes(labelling: CubeLabelling) -> Dict[Tuple[int, int], bool]:
    """모든 유도 하이퍼큐브를 (기준, 좌표 마스크) 키로, 값은 극대 여부"""
    present = set(labelling.masks())
    n = labelling.n_coords
    frontier = [(m, 0) for m in present]
    cubes: Dict[Tuple[int, int], bool] = {key: True for key in frontier}
    while frontier:
        grown = []
        for anchor, cmask in frontier:
            members = [anchor | sub for sub in _submasks(cmask)]
            for i in range(n):
                bit = 1 << i
                if cmask & bit or not all((m ^ bit) in present for m in members):
                    continue
                cubes[(anchor, cmask)] = False
                key = (anchor & ~bit, cmask | bit)
                if key not in cubes:
                    cubes[key] = True
                    grown.append(key)
        frontier = grown
    return cubes


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _as_cube(cls, labelling: CubeLabelling, anchor: int, cmask: int, vertex_of, position):
    vertices = sorted((vertex_of[anchor | sub] for sub in _submasks(cmask)), key=position.__getitem__)
    return cls(tuple(vertices), popcount(cmask), tuple(iter_bits(cmask)), anchor)


def _cube_order(labelling: CubeLabelling, cubes: List[InducedHypercube]) -> List[InducedHypercube]:
    position = {v: i for i, v in enumerate(labelling.order)}
    return sorted(cubes, key=lambda q: (-q.dimension, position[q.vertices[0]], q.theta_classes))


def _resolve_labelling(h: nx.Graph, labelling: Optional[CubeLabelling]) -> CubeLabelling:
    if labelling is not None:
        return labelling
    result = theta_classes(h)
    if not result.is_partial_cube:
        raise NotPartialCube(result.reason)
    return result.labelling


def induced_hypercubes(h: nx.Graph, labelling: Optional[CubeLabelling] = None) -> List[InducedHypercube]:
    labelling = _resolve_labelling(h, labelling)
    vertex_of = labelling.vertex_of()
    position = {v: i for i, v in enumerate(labelling.order)}
    cubes = [_as_cube(InducedHypercube, labelling, a, c, vertex_of, position) for a, c in _subcubes(labelling)]
    return _cube_order(labelling, cubes)


def maximal_hypercubes(h: nx.Graph, labelling: Optional[CubeLabelling] = None) -> List[MaximalHypercube]:
    """더 큰 하이퍼큐브에 포함되지 않는 유도 하이퍼큐브, (차원 내림차순, 첫 정점) 순"""
    labelling = _resolve_labelling(h, labelling)
    vertex_of = labelling.vertex_of()
    position = {v: i for i, v in enumerate(labelling.order)}
    cubes = [
        _as_cube(MaximalHypercube, labelling, a, c, vertex_of, position)
        for (a, c), maximal in _subcubes(labelling).items() if maximal
    ]
    return _cube_order(labelling, cubes)


def _string_graph(masks: Iterable[int], n: int, **attrs) -> nx.Graph:
    ordered = sorted(set(masks), key=lambda m: (popcount(m), mask_to_string(m, n)[::-1]))
    graph = nx.Graph(**attrs)
    graph.add_nodes_from(mask_to_string(m, n) for m in ordered)
    present = set(ordered)
    for m in ordered:
        for i in iter_bits(m):
            if m ^ (1 << i) in present:
                graph.add_edge(mask_to_string(m ^ (1 << i), n), mask_to_string(m, n))
    return graph


def daisy_from_maximal(maximal_vertices: Sequence[str]) -> nx.Graph:
    """같은 길이 이진 문자열의 반사슬이 생성하는 데이지 큐브"""
    lengths = {len(s) for s in maximal_vertices}
    if len(lengths) != 1:
        raise BadParameter("maximal vertices must be a nonempty list of equal-length strings")
    n = lengths.pop()
    masks = [string_to_mask(s) for s in downward_closure(maximal_vertices, n)]
    return _string_graph(masks, n, name=f"Q_{n}(X)")


def same_daisy_cube(c1: DaisyCertificate, c2: DaisyCertificate) -> bool:
    return c1.n_coords == c2.n_coords and set(c1.maximal_vertices) == set(c2.maximal_vertices)


def _guard_vertices(h: nx.Graph, vertex_guard: Optional[int]) -> None:
    guard = vertex_guard or load_settings().vertex_guard
    if h.number_of_nodes() > guard:
        raise SizeLimitExceeded("graph", h.number_of_nodes(), guard, "RESLAB_VERTEX_GUARD")


def build_DI(h: nx.Graph, vertex_guard: Optional[int] = None) -> nx.Graph:
    """
    h의 모든 독립 집합의 특성 벡터로 만든 데이지 큐브

    좌표 i는 h의 i번째 노드이며, 각 노드는 자신이 나타내는 독립 집합을
    "members" 속성으로 가짐
    """
    _guard_vertices(h, vertex_guard)
    order = list(h.nodes())
    n = len(order)
    graph = _string_graph(independent_masks(adjacency_masks(h, order)), n, name="D_I")
    for label in graph.nodes():
        graph.nodes[label]["members"] = tuple(order[i] for i in iter_bits(string_to_mask(label)))
    return graph


def simplex_graph(h: nx.Graph, vertex_guard: Optional[int] = None) -> nx.Graph:
    """h의 클리크 (공집합 포함), 정점 하나만 다르면 인접"""
    _guard_vertices(h, vertex_guard)
    order = list(h.nodes())
    cliques = clique_masks(adjacency_masks(h, order))
    present = set(cliques)
    graph = nx.Graph(name="simplex")
    as_set = lambda m: frozenset(order[i] for i in iter_bits(m))  # noqa: E731
    graph.add_nodes_from(as_set(m) for m in cliques)
    for m in cliques:
        for i in iter_bits(m):
            if m ^ (1 << i) in present:
                graph.add_edge(as_set(m ^ (1 << i)), as_set(m))
    return graph


def hypercube(n: int) -> nx.Graph:
    if n < 0:
        raise BadParameter(f"hypercube dimension must be >= 0, got {n}")
    return _string_graph(range(1 << n), n, name=f"Q_{n}")


def _no_adjacent_ones(m: int) -> bool:
    return m & (m >> 1) == 0


def fibonacci_cube(n: int) -> nx.Graph:
    if n < 1:
        raise BadParameter(f"Fibonacci cube order must be >= 1, got {n}")
    return _string_graph((m for m in range(1 << n) if _no_adjacent_ones(m)), n, name=f"Gamma_{n}")


def lucas_cube(n: int) -> nx.Graph:
    if n < 1:
        raise BadParameter(f"Lucas cube order must be >= 1, got {n}")
    wrap = lambda m: not ((m & 1) and (m >> (n - 1)) & 1)  # noqa: E731
    return _string_graph((m for m in range(1 << n) if _no_adjacent_ones(m) and wrap(m)), n, name=f"Lambda_{n}")


def are_isomorphic(h1: nx.Graph, h2: nx.Graph) -> bool:
    if h1.number_of_nodes() != h2.number_of_nodes() or h1.number_of_edges() != h2.number_of_edges():
        return False
    return nx.is_isomorphic(h1, h2)


def _forests(n: int) -> Iterator[List[Tuple[int, int]]]:
    """range(n) 위 레이블 숲, 간선 목록 형태"""
    pairs = list(itertools.combinations(range(n), 2))

    def extend(start: int, chosen: List[Tuple[int, int]]) -> Iterator[List[Tuple[int, int]]]:
        yield list(chosen)
        for k in range(start, len(pairs)):
            u, v = pairs[k]
            forest = UnionFind(range(n))
            for a, b in chosen:
                forest.union(a, b)
            if forest[u] != forest[v]:
                chosen.append((u, v))
                yield from extend(k + 1, chosen)
                chosen.pop()

    yield from extend(0, [])


def search_forest_simplex(n: int) -> dict:
    """D_I(F)가 Lucas 큐브와 동형인 n개 정점의 숲 F (동형 제외)"""
    if n < 1:
        raise BadParameter(f"n must be >= 1, got {n}")
    target = lucas_cube(n)
    representatives: List[nx.Graph] = []
    found = []
    for edges in _forests(n):
        forest = nx.Graph()
        forest.add_nodes_from(range(n))
        forest.add_edges_from(edges)
        if any(nx.is_isomorphic(forest, seen) for seen in representatives):
            continue
        representatives.append(forest)
        candidate = build_DI(forest)
        if candidate.number_of_nodes() == target.number_of_nodes() and are_isomorphic(candidate, target):
            found.append([list(e) for e in edges])
    logger.info(f"forest search n={n}: {len(representatives)} forests, {len(found)} matches")
    return {
        "check": "forest_simplex_search",
        "status": "pass",
        "n": n,
        "lucas_vertices": target.number_of_nodes(),
        "forests_examined": len(representatives),
        "forests_found": found,
    }
