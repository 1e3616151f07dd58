"""
독립 집합: 극대 독립 집합 열거, 극대 독립 집합이 5개 이하인 트리의 분류기,
개수 공식, 공명 집합과 내부 쌍대의 독립 집합 사이의 대응
"""
import itertools
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from core.bitsets import adjacency_masks, independent_masks, iter_bits, popcount
from core.cube_theory import build_DI, hypercube, labelling_from_strings, maximal_hypercubes
from core.errors import (
    BadParameter,
    ClassMismatch,
    NotATree,
    NotElementary,
    NotP2C,
    NotWeaklyElementary,
    PreconditionFailed,
    SizeLimitExceeded,
)
from core.matching import enumerate_perfect_matchings
from core.plane_graph import PlaneGraph
from core.resonance import build_resonance_graph, require_p2c_dual
from core.resonant_sets import FaceSet, enumerate_resonant_sets, hypercube_face_labels, is_maximal_resonant
from utils.config import load_settings
from utils.logging_config import setup_logger

logger = setup_logger()


@dataclass(frozen=True)
class IndepSet:
    vertices: FrozenSet[Hashable]

    def __len__(self) -> int:
        return len(self.vertices)

    def to_json(self) -> list:
        return sorted(self.vertices)


def mis_masks(adj: Sequence[int]) -> List[int]:
    """여그래프의 극대 클리크로 구하는 극대 독립 집합, 피벗을 쓰는 Bron-Kerbosch"""
    n = len(adj)
    full = (1 << n) - 1
    non_adjacent = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    found: List[int] = []

    def expand(chosen: int, candidates: int, excluded: int) -> None:
        if not candidates and not excluded:
            found.append(chosen)
            return
        pivot = max(iter_bits(candidates | excluded), key=lambda u: popcount(candidates & non_adjacent[u]))
        for v in iter_bits(candidates & ~non_adjacent[pivot]):
            bit = 1 << v
            expand(chosen | bit, candidates & non_adjacent[v], excluded & non_adjacent[v])
            candidates &= ~bit
            excluded |= bit

    expand(0, full, 0)
    return sorted(found, key=lambda m: tuple(iter_bits(m)))


def _guarded_masks(h: nx.Graph, vertex_guard: Optional[int]) -> Tuple[List[Hashable], List[int]]:
    guard = vertex_guard or load_settings().vertex_guard
    if h.number_of_nodes() > guard:
        raise SizeLimitExceeded("graph", h.number_of_nodes(), guard, "RESLAB_VERTEX_GUARD")
    order = list(h.nodes())
    return order, adjacency_masks(h, order)


def _as_sets(order: Sequence[Hashable], masks: Sequence[int]) -> List[IndepSet]:
    return [IndepSet(frozenset(order[i] for i in iter_bits(m))) for m in masks]


def enumerate_mis(h: nx.Graph, vertex_guard: Optional[int] = None) -> List[IndepSet]:
    order, adj = _guarded_masks(h, vertex_guard)
    return _as_sets(order, mis_masks(adj))


def enumerate_all_independent(h: nx.Graph, vertex_guard: Optional[int] = None) -> List[IndepSet]:
    order, adj = _guarded_masks(h, vertex_guard)
    return _as_sets(order, independent_masks(adj))


def mis_size_counts(h: nx.Graph) -> Dict[int, int]:
    return dict(sorted(Counter(len(s) for s in enumerate_mis(h)).items()))


def _tree_adjacency(t: nx.Graph) -> Dict[Hashable, List[Hashable]]:
    if t.number_of_nodes() == 0 or not nx.is_tree(t):
        raise NotATree(f"graph with {t.number_of_nodes()} vertices and {t.number_of_edges()} edges is not a tree")
    return {v: list(t[v]) for v in t.nodes()}


def count_mis_adjacency(adj: Mapping[Hashable, Sequence[Hashable]]) -> int:
    """첫 정점을 뿌리로 한 트리 위의 선형 동적 계획법"""
    root = next(iter(adj))
    parent = {root: None}
    order = [root]
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    # a: v in the set; b: v out, some child in; c: v out, no child in
    a, b, c = {}, {}, {}
    for v in reversed(order):
        children = [w for w in adj[v] if w != parent[v]]
        with_v, total, none_in = 1, 1, 1
        for w in children:
            with_v *= b[w] + c[w]
            total *= a[w] + b[w]
            none_in *= b[w]
        a[v], b[v], c[v] = with_v, total - none_in, none_in
    return a[root] + b[root]


def count_mis_tree(t: nx.Graph) -> int:
    return count_mis_adjacency(_tree_adjacency(t))


class TreeFamily(str, Enum):
    ONE_VERTEX = "OneVertex"
    STAR = "Star"
    BISTAR = "Bistar"
    S3 = "S3"
    S4 = "S4"
    S3PQR = "S3pqr"
    OTHER = "Other"


PREDICTED_MIS = {
    TreeFamily.ONE_VERTEX: 1,
    TreeFamily.STAR: 2,
    TreeFamily.BISTAR: 3,
    TreeFamily.S3: 4,
    TreeFamily.S4: 5,
    TreeFamily.S3PQR: 5,
}


@dataclass(frozen=True)
class TreeClass:
    family: TreeFamily
    params: Tuple[int, ...]
    spine: Tuple[Hashable, ...]
    mis_predicted: int
    diameter: int = 0

    def to_json(self) -> dict:
        return {
            "class": self.family.value,
            "params": list(self.params),
            "spine": list(self.spine),
            "mis_predicted": self.mis_predicted,
        }


def _farthest(adj: Mapping[Hashable, Sequence[Hashable]], source: Hashable) -> Tuple[Hashable, Dict[Hashable, Hashable]]:
    parent = {source: None}
    queue = deque([source])
    last = source
    while queue:
        last = queue.popleft()
        for w in adj[last]:
            if w not in parent:
                parent[w] = last
                queue.append(w)
    return last, parent


def diameter_path(adj: Mapping[Hashable, Sequence[Hashable]]) -> List[Hashable]:
    u, _ = _farthest(adj, next(iter(adj)))
    v, parent = _farthest(adj, u)
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _is_leaf(adj, v) -> bool:
    return len(adj[v]) == 1


def _count_mis_brute(adj: Mapping[Hashable, Sequence[Hashable]]) -> int:
    order = list(adj)
    position = {v: i for i, v in enumerate(order)}
    masks = [sum(1 << position[w] for w in adj[v]) for v in order]
    return len(mis_masks(masks))


def classify_adjacency(adj: Mapping[Hashable, Sequence[Hashable]]) -> TreeClass:
    """
    지름 경로 기준 패턴 매칭. 퇴화한 모양의 매개변수도 지름에서 읽으므로
    정점 4개 경로는 Bistar(1, 1)이며 매개변수 0인 S 계열이 되지 않음
    """
    if len(adj) == 1:
        return TreeClass(TreeFamily.ONE_VERTEX, (), tuple(adj), 1, 0)
    path = diameter_path(adj)
    d = len(path) - 1

    def made(family, params, spine):
        return TreeClass(family, tuple(params), tuple(spine), PREDICTED_MIS[family], d)

    if d <= 2:
        centre = path[len(path) // 2]
        return made(TreeFamily.STAR, (len(adj) - 1,), (centre,))
    if d == 3:
        u, v = path[1], path[2]
        return made(TreeFamily.BISTAR, (len(adj[u]) - 1, len(adj[v]) - 1), (u, v))
    if d == 4:
        v1, v2, v3 = path[1], path[2], path[3]
        inner = [w for w in adj[v2] if not _is_leaf(adj, w)]
        if set(inner) == {v1, v3}:
            p, q, r = len(adj[v1]) - 1, len(adj[v3]) - 1, len(adj[v2]) - 2
            if r == 0:
                return made(TreeFamily.S3, (p, q), (v1, v2, v3))
            return made(TreeFamily.S3PQR, (p, q, r), (v1, v2, v3))
    if d == 5:
        v1, v2, v3, v4 = path[1:5]
        if len(adj[v2]) == 2 and len(adj[v3]) == 2:
            return made(TreeFamily.S4, (len(adj[v1]) - 1, len(adj[v4]) - 1), (v1, v2, v3, v4))
    return TreeClass(TreeFamily.OTHER, (), tuple(path), _count_mis_brute(adj), d)


def classify_tree(t: nx.Graph) -> TreeClass:
    return classify_adjacency(_tree_adjacency(t))


def padovan(n: int) -> int:
    if n < 0:
        raise BadParameter(f"n must be >= 0, got {n}")
    values = [1, 1, 2]
    while len(values) <= n:
        values.append(values[-2] + values[-3])
    return values[n]


def max_kcube_count(n: int, k: int) -> int:
    """n차 피보나치 큐브의 k차원 극대 하이퍼큐브 수, 불가능한 k이면 0"""
    if n < 0 or not (-(-n // 3) <= k <= (n + 1) // 2):
        return 0
    return comb(k + 1, n + 1 - 2 * k)


def wilf_bound(n: int) -> int:
    if n < 1:
        raise BadParameter(f"n must be >= 1, got {n}")
    if n % 2 == 0:
        return 2 ** (n // 2 - 1) + 1
    return 2 ** ((n - 1) // 2)


def face_set_to_dual_set(s: FaceSet) -> IndepSet:
    """쌍대 정점은 자기 면의 번호를 그대로 가짐"""
    return IndepSet(frozenset(s.faces))


def check_resonant_independent_bijection(g: PlaneGraph) -> dict:
    """공명 집합과 쌍대의 비어 있지 않은 독립 집합이 크기별로, 극대끼리 일치하는지 확인"""
    dual = require_p2c_dual(g)
    sets = enumerate_resonant_sets(g)
    images = {face_set_to_dual_set(s) for s in sets}
    independent = {s for s in enumerate_all_independent(dual) if len(s)}
    maximal_images = {face_set_to_dual_set(s) for s in sets if is_maximal_resonant(g, s, sets)}
    if not sets:
        # no resonant face: the empty set is the only maximal one on both sides
        maximal_images = {face_set_to_dual_set(FaceSet.of(()))}
    mis = set(enumerate_mis(dual))
    sizes = dict(sorted(Counter(len(s) for s in sets).items()))
    return {
        "check": "resonant_independent",
        "graph": g.name,
        "status": "pass" if images == independent and maximal_images == mis else "fail",
        "resonant_sets_by_size": {str(k): v for k, v in sizes.items()},
        "independent_sets_by_size": {str(k): v for k, v in sorted(Counter(len(s) for s in independent).items())},
        "maximal": len(maximal_images),
        "mis": len(mis),
    }


def verify_hypercube_mis_bijection(g: PlaneGraph) -> dict:
    """R(G)의 극대 하이퍼큐브와 쌍대의 극대 독립 집합을 면 라벨로 대응"""
    dual = require_p2c_dual(g)
    rg = build_resonance_graph(g)
    cubes = maximal_hypercubes(rg.graph)
    images = [face_set_to_dual_set(hypercube_face_labels(rg, q)) for q in cubes]
    mis = enumerate_mis(dual)
    sizes_match = all(len(image) == q.dimension for q, image in zip(cubes, images))
    bijective = len(set(images)) == len(images) and set(images) == set(mis)
    return {
        "check": "hypercube_mis",
        "graph": g.name,
        "status": "pass" if sizes_match and bijective else "fail",
        "maximal_hypercubes": len(cubes),
        "mis": len(mis),
        "pairs": [{"dimension": q.dimension, "dual_vertices": image.to_json()} for q, image in zip(cubes, images)],
    }


def verify_matchings_equal_independent_sets(g: PlaneGraph) -> dict:
    try:
        dual = require_p2c_dual(g)
    except (NotP2C, NotWeaklyElementary, NotElementary) as error:
        raise PreconditionFailed(str(error)) from error
    matchings = len(enumerate_perfect_matchings(g))
    independent = len(enumerate_all_independent(dual))
    return {
        "check": "matchings_independent",
        "graph": g.name,
        "status": "pass" if matchings == independent else "fail",
        "perfect_matchings": matchings,
        "independent_sets": independent,
    }


def _role_sets(adj, tree_class: TreeClass) -> Tuple[Dict[str, FrozenSet], Dict[str, int], Dict[str, int]]:
    """역할별 기대 극대 독립 집합, 그 차원, 두 집합씩의 교집합 차원"""
    n_of = lambda v: frozenset(adj[v])  # noqa: E731
    params = tree_class.params + (0,) * (3 - len(tree_class.params))
    p, q, r = params[:3]
    family = tree_class.family
    if family is TreeFamily.STAR:
        (c,) = tree_class.spine
        return {"A": frozenset([c]), "B": n_of(c)}, {"A": 1, "B": len(adj) - 1}, {"AB": 0}
    if family is TreeFamily.BISTAR:
        u, v = tree_class.spine
        sets = {"A": n_of(u), "B": (n_of(u) | n_of(v)) - {u, v}, "C": n_of(v)}
        return sets, {"A": p + 1, "B": p + q, "C": q + 1}, {"AB": p, "BC": q, "AC": 0}
    if family is TreeFamily.S3:
        v1, v2, v3 = tree_class.spine
        sets = {
            "A": (n_of(v1) | {v3}) - {v2},
            "B": n_of(v1) | n_of(v3),
            "C": (n_of(v3) | {v1}) - {v2},
            "D": frozenset([v1, v3]),
        }
        dims = {"A": p + 1, "B": p + q + 1, "C": q + 1, "D": 2}
        return sets, dims, {"AB": p, "BC": q, "AD": 1, "CD": 1, "AC": 0, "BD": 0}
    if family is TreeFamily.S4:
        v1, v2, v3, v4 = tree_class.spine
        sets = {
            "A": (n_of(v1) | n_of(v4)) - {v3},
            "B": (n_of(v1) | n_of(v4)) - {v2},
            "C": n_of(v1) | {v4},
            "D": n_of(v4) | {v1},
            "E": frozenset([v1, v4]),
        }
        dims = {"A": p + q + 1, "B": p + q + 1, "C": p + 2, "D": q + 2, "E": 2}
        pairs = {"AB": p + q, "AC": p + 1, "AD": q, "BC": p, "BD": q + 1,
                 "CE": 1, "DE": 1, "CD": 0, "AE": 0, "BE": 0}
        return sets, dims, pairs
    if family is TreeFamily.S3PQR:
        v1, v2, v3 = tree_class.spine
        sets = {
            "A": (n_of(v1) | n_of(v2) | n_of(v3)) - {v1, v2, v3},
            "B": (n_of(v1) | n_of(v2)) - {v1, v2},
            "C": n_of(v1) | n_of(v3),
            "D": (n_of(v2) | n_of(v3)) - {v2, v3},
            "E": n_of(v2),
        }
        dims = {"A": p + q + r, "B": p + r + 1, "C": p + q + 1, "D": q + r + 1, "E": r + 2}
        pairs = {"AB": p + r, "AC": p + q, "AD": q + r, "AE": r, "BC": p, "BD": r,
                 "CD": q, "BE": r + 1, "DE": r + 1, "CE": 0}
        return sets, dims, pairs
    raise ClassMismatch(f"no structure pattern for {family.value}")


def verify_small_daisy_structure(t: nx.Graph) -> dict:
    """
    극대 독립 집합이 5개 이하인 트리 T에 대해 D_I(T)의 극대 하이퍼큐브 확인:
    어떤 것들인지, 각 차원, 두 개씩의 교집합 차원. 모두의 공통 부분은 정확히 0^n
    """
    adj = _tree_adjacency(t)
    tree_class = classify_adjacency(adj)
    if tree_class.family is TreeFamily.OTHER:
        raise ClassMismatch(f"tree has {tree_class.mis_predicted} maximal independent sets, more than five")
    d_i = build_DI(t)
    order = list(t.nodes())
    report = {"check": "daisy_structure", "class": tree_class.to_json(), "n": len(order)}
    if tree_class.family is TreeFamily.ONE_VERTEX:
        report["status"] = "pass" if nx.is_isomorphic(d_i, hypercube(1)) else "fail"
        return report

    cubes = maximal_hypercubes(d_i, labelling_from_strings(d_i))
    by_coordinates = {frozenset(order[k] for k in q.theta_classes): q for q in cubes}
    sets, dims, pairs = _role_sets(adj, tree_class)
    problems = []
    if set(by_coordinates) != set(sets.values()):
        problems.append("maximal hypercubes are not the expected role sets")
    else:
        for role, members in sets.items():
            if by_coordinates[members].dimension != dims[role]:
                problems.append(f"dim({role}) = {by_coordinates[members].dimension}, expected {dims[role]}")
        for pair, expected in pairs.items():
            shared = by_coordinates[sets[pair[0]]].vertex_set & by_coordinates[sets[pair[1]]].vertex_set
            induced = d_i.subgraph(shared)
            if len(shared) != 2 ** expected or not nx.is_isomorphic(induced, hypercube(expected)):
                problems.append(f"dim({pair[0]}∩{pair[1]}) is not {expected}")
        common = frozenset.intersection(*(q.vertex_set for q in cubes))
        if common != {"0" * len(order)}:
            problems.append("maximal hypercubes do not meet exactly in 0^n")
    report["dimensions"] = {role: dims[role] for role in sorted(dims)}
    report["problems"] = problems
    report["status"] = "fail" if problems else "pass"
    return report


def tree_diameter(adj: Mapping[Hashable, Sequence[Hashable]]) -> int:
    return len(diameter_path(adj)) - 1


def path_graph_mis_counts(n: int) -> Dict[int, int]:
    """P_n의 극대 독립 집합 크기 분포"""
    return mis_size_counts(nx.path_graph(n))


def all_graphs_on(n: int):
    """range(n) 위 모든 레이블 단순 그래프"""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(pairs[i] for i in iter_bits(mask))
        yield graph
