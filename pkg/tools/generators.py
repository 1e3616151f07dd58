"""
코퍼스 생성기: MIS가 적은 트리 계열, 육각형 사슬, 코로넨, 기어 그래프,
정사각형 사다리, 작은 평면 그래프 몇 가지

평면 그래프는 시계 방향 회전과 외곽면을 읽기 위해서만 정수 좌표에 배치하고
좌표는 이후 버림
"""
import math
import os
import sys
from typing import Dict, List, Mapping, Sequence, Tuple

import networkx as nx

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from core.errors import BadParameter, InvalidChainSpec
from core.plane_graph import PlaneGraph, build_embedding, disjoint_union, trace_faces
from utils.logging_config import setup_logger

logger = setup_logger()

Point = Tuple[int, int]

# axial directions, counterclockwise starting east
HEX_DIRECTIONS = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
# corners of a pointy-top cell centred at (2q + r, 3r), counterclockwise from 30 degrees
HEX_CORNERS = [(1, 1), (0, 2), (-1, 1), (-1, -1), (0, -2), (1, -1)]
TURNS = {"L": 1, "R": -1, "S": 0}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadParameter(message)


# Trees


def gen_path(n: int) -> nx.Graph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return nx.path_graph(n)


def gen_cycle(n: int) -> nx.Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return nx.cycle_graph(n)


def _spine_with_pendants(spine: int, pendants: Sequence[Tuple[int, int]]) -> nx.Graph:
    """0..spine-1 경로 뒤에 매단 순서대로 번호 붙인 펜던트 정점"""
    tree = nx.path_graph(spine)
    next_id = spine
    for anchor, count in pendants:
        for _ in range(count):
            tree.add_edge(anchor, next_id)
            next_id += 1
    return tree


def gen_star(leaves: int) -> nx.Graph:
    _require(leaves >= 1, f"star needs at least one leaf, got {leaves}")
    return _spine_with_pendants(1, [(0, leaves)])


def gen_bistar(p: int, q: int) -> nx.Graph:
    _require(p >= 1 and q >= 1, f"bistar needs p, q >= 1, got {p}, {q}")
    return _spine_with_pendants(2, [(0, p), (1, q)])


def gen_s3(p: int, q: int) -> nx.Graph:
    _require(p >= 1 and q >= 1, f"S3 needs p, q >= 1, got {p}, {q}")
    return _spine_with_pendants(3, [(0, p), (2, q)])


def gen_s4(p: int, q: int) -> nx.Graph:
    _require(p >= 1 and q >= 1, f"S4 needs p, q >= 1, got {p}, {q}")
    return _spine_with_pendants(4, [(0, p), (3, q)])


def gen_s3pqr(p: int, q: int, r: int) -> nx.Graph:
    _require(p >= 1 and q >= 1 and r >= 1, f"S3(p,q,r) needs p, q, r >= 1, got {p}, {q}, {r}")
    return _spine_with_pendants(3, [(0, p), (2, q), (1, r)])


# Plane graphs


def _signed_area(walk: Sequence[int], coords: Mapping[int, Point]) -> int:
    total = 0
    for k, v in enumerate(walk):
        w = walk[(k + 1) % len(walk)]
        total += coords[v][0] * coords[w][1] - coords[w][0] * coords[v][1]
    return total


def embed_from_coordinates(coords: Mapping[int, Point], edges: Sequence[Tuple[int, int]], name: str,
                           scale: Tuple[float, float] = (1.0, 1.0)) -> PlaneGraph:
    """
    직선 그림을 회전 시스템으로 변환: 이웃은 각도 내림차순.
    외곽면은 반시계 방향 추적 결과이며 시계 방향 주변 힌트로 넘김
    """
    neighbours: Dict[int, List[int]] = {v: [] for v in coords}
    for u, v in edges:
        neighbours[u].append(v)
        neighbours[v].append(u)

    def angle(v: int, w: int) -> float:
        return math.atan2((coords[w][1] - coords[v][1]) * scale[1], (coords[w][0] - coords[v][0]) * scale[0])

    rotations = {v: sorted(ws, key=lambda w: -angle(v, w)) for v, ws in neighbours.items()}
    walks = [tuple(d[0] for d in walk) for walk in trace_faces(rotations)]
    outer = [walk for walk in walks if _signed_area(walk, coords) > 0]
    hint = tuple(reversed(outer[0])) if outer else None
    return build_embedding(list(coords), edges, rotations, hint, name=name)


def _hex_cells_graph(cells: Sequence[Point], name: str) -> PlaneGraph:
    ids: Dict[Point, int] = {}
    edges = []
    seen = set()
    for q, r in cells:
        cx, cy = 2 * q + r, 3 * r
        corners = [(cx + dx, cy + dy) for dx, dy in HEX_CORNERS]
        for corner in corners:
            ids.setdefault(corner, len(ids))
        for k in range(6):
            u, v = ids[corners[k]], ids[corners[(k + 1) % 6]]
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                edges.append(key)
    coords = {v: point for point, v in ids.items()}
    return embed_from_coordinates(coords, edges, name, scale=(math.sqrt(3) / 2, 0.5))


def _hex_adjacent(a: Point, b: Point) -> bool:
    return (b[0] - a[0], b[1] - a[1]) in HEX_DIRECTIONS


def gen_hexagon() -> PlaneGraph:
    return _hex_cells_graph([(0, 0)], "hexagon")


def gen_hex_chain(turns: str, name: str = "") -> PlaneGraph:
    """
    육각형 len(turns) + 2개의 catacondensed 사슬. 각 문자는 다음 육각형에서
    사슬을 꺾음: L과 R은 60도, S는 직선 유지
    """
    if any(ch not in TURNS for ch in turns):
        raise InvalidChainSpec(f"turn string {turns!r} may only use L, R and S")
    direction = 0
    cells = [(0, 0), HEX_DIRECTIONS[0]]
    for ch in turns:
        direction = (direction + TURNS[ch]) % 6
        dq, dr = HEX_DIRECTIONS[direction]
        cells.append((cells[-1][0] + dq, cells[-1][1] + dr))
    if len(set(cells)) != len(cells):
        raise InvalidChainSpec(f"turn string {turns!r} makes the chain overlap itself")
    for i in range(len(cells)):
        for j in range(i + 2, len(cells)):
            if _hex_adjacent(cells[i], cells[j]):
                raise InvalidChainSpec(f"hexagons {i} and {j} of {turns!r} touch without being consecutive")
    return _hex_cells_graph(cells, name or f"chain[{turns}]")


def gen_fibonaccene(n: int) -> PlaneGraph:
    """육각형 n개의 지그재그 사슬"""
    _require(n >= 1, f"fibonaccene needs n >= 1, got {n}")
    if n == 1:
        return _hex_cells_graph([(0, 0)], "fibonaccene_1")
    turns = "".join("LR"[k % 2] for k in range(n - 2))
    return gen_hex_chain(turns, name=f"fibonaccene_{n}")


def gen_coronene() -> PlaneGraph:
    return _hex_cells_graph([(0, 0)] + HEX_DIRECTIONS, "coronene")


def gen_gear() -> nx.Graph:
    """BW3: 중심 0을 테두리 사이클 1..6의 홀수 정점과 연결"""
    gear = nx.Graph(name="BW3")
    gear.add_nodes_from(range(7))
    gear.add_edges_from((k, k % 6 + 1) for k in range(1, 7))
    gear.add_edges_from((0, k) for k in (1, 3, 5))
    return gear


def gen_gear_plane() -> PlaneGraph:
    # rim numbered clockwise from the top
    coords = {0: (0, 0), 1: (0, 4), 2: (2, 2), 3: (2, -2), 4: (0, -4), 5: (-2, -2), 6: (-2, 2)}
    edges = [(0, 1), (0, 3), (0, 5)] + [(k, k % 6 + 1) for k in range(1, 7)]
    return embed_from_coordinates(coords, edges, "gear")


def gen_ladder(n: int) -> PlaneGraph:
    """P2 x P_(n+1): 정사각형 n개의 줄, 윗줄 0..n, 아랫줄 n+1..2n+1"""
    _require(n >= 1, f"ladder needs n >= 1, got {n}")
    coords = {i: (i, 1) for i in range(n + 1)}
    coords.update({n + 1 + i: (i, 0) for i in range(n + 1)})
    edges = [(i, i + 1) for i in range(n)] + [(n + 1 + i, n + 2 + i) for i in range(n)]
    edges += [(i, n + 1 + i) for i in range(n + 1)]
    return embed_from_coordinates(coords, edges, f"ladder_{n}")


def gen_capped_ladder(n: int) -> PlaneGraph:
    """
    정사각형 n개의 사다리에 아래 두 모서리를 잇는 바깥 간선을 더한 그래프.
    이 간선이 아랫줄을 별도의 면으로 닫고, 외곽면은 윗줄과 이 간선을 따라감
    """
    _require(n >= 2, f"capped ladder needs n >= 2, got {n}")
    top = list(range(n + 1))
    bottom = [n + 1 + i for i in range(n + 1)]
    last = n
    rotations: Dict[int, List[int]] = {
        top[0]: [top[1], bottom[0]],
        top[last]: [bottom[last], top[last - 1]],
        bottom[0]: [top[0], bottom[1], bottom[last]],
        bottom[last]: [top[last], bottom[0], bottom[last - 1]],
    }
    for i in range(1, last):
        rotations[top[i]] = [top[i + 1], bottom[i], top[i - 1]]
        rotations[bottom[i]] = [top[i], bottom[i + 1], bottom[i - 1]]
    edges = [(top[i], top[i + 1]) for i in range(n)] + [(bottom[i], bottom[i + 1]) for i in range(n)]
    edges += [(top[i], bottom[i]) for i in range(n + 1)] + [(bottom[0], bottom[last])]
    periphery = top + [bottom[last], bottom[0]]
    return build_embedding(top + bottom, edges, rotations, periphery, name=f"capped_ladder_{n}")


def gen_k2() -> PlaneGraph:
    return build_embedding([0, 1], [(0, 1)], {0: [1], 1: [0]}, name="K2")


def gen_path_plane(n: int) -> PlaneGraph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    rotations = {v: [w for w in (v - 1, v + 1) if 0 <= w < n] for v in range(n)}
    return build_embedding(range(n), [(v, v + 1) for v in range(n - 1)], rotations, name=f"P{n}")


def gen_union(*graphs: PlaneGraph, name: str = "") -> PlaneGraph:
    """각 성분은 자체 임베딩과 외곽면을 유지"""
    union = graphs[0]
    for k, g in enumerate(graphs[1:], start=2):
        label = name if k == len(graphs) else ""
        union = disjoint_union(union, g, name=label or "+".join(h.name for h in graphs[:k]))
    return union


PLANE_FAMILIES = {
    "hexagon": gen_hexagon,
    "fibonaccene": gen_fibonaccene,
    "chain": gen_hex_chain,
    "coronene": gen_coronene,
    "gear": gen_gear_plane,
    "ladder": gen_ladder,
    "capped-ladder": gen_capped_ladder,
    "k2": gen_k2,
    "path": gen_path_plane,
}

# abstract graph families: the trees, plus cycles for D_I of C_n
TREE_FAMILIES = {
    "star": gen_star,
    "bistar": gen_bistar,
    "s3": gen_s3,
    "s4": gen_s4,
    "s3pqr": gen_s3pqr,
    "tree-path": gen_path,
    "cycle": gen_cycle,
}


def builtin_corpus() -> List[PlaneGraph]:
    """코퍼스 디렉터리가 없을 때 코퍼스 단위 스위트가 사용하는 평면 그래프"""
    graphs = [gen_hexagon()]
    graphs += [gen_fibonaccene(n) for n in range(2, 6)]
    graphs += [
        gen_hex_chain("S", name="anthracene"),
        gen_coronene(),
        gen_ladder(3),
        gen_capped_ladder(5),
        gen_union(gen_fibonaccene(2), gen_hexagon(), name="naphthalene+hexagon"),
        gen_path_plane(4),
        gen_k2(),
    ]
    return graphs
