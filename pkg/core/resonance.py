"""공명 그래프 R(G): 정확히 한 유한면에서만 다른 완전 매칭끼리 연결"""
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from core.bitsets import mask_to_string
from core.cube_theory import build_DI, daisy_certificates, theta_classes
from core.errors import NotP2C, NotWeaklyElementary
from core.matching import (
    Matching,
    _require_matchings,
    allowed_subgraph,
    elementary_components,
    extremal_matchings,
    is_elementary,
    is_weakly_elementary,
    resonant_faces,
)
from core.plane_graph import PlaneGraph, inner_dual, is_peripherally_2_colorable
from utils.logging_config import setup_logger

logger = setup_logger()


@dataclass(frozen=True, eq=False)
class ResonanceGraph:
    vertices: Tuple[Matching, ...]
    # (i, j, face id) with i < j
    edges: Tuple[Tuple[int, int, int], ...]
    source: Optional[PlaneGraph] = field(default=None, repr=False)

    @cached_property
    def graph(self) -> nx.Graph:
        """정점 i는 i번째 매칭, 간선 번호는 self.edges 순서"""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        for i, j, face in self.edges:
            graph.add_edge(i, j, face=face)
        return graph

    def label(self, i: int, j: int) -> int:
        return self.graph.edges[i, j]["face"]

    def index_of(self, m: Matching) -> int:
        return self.vertices.index(m)

    def is_connected(self) -> bool:
        return nx.is_connected(self.graph)


def build_resonance_graph(g: PlaneGraph) -> ResonanceGraph:
    matchings = _require_matchings(g)
    index = {m.edge_mask: i for i, m in enumerate(matchings)}
    faces = [(f.id, g.face_masks[f.id]) for f in g.finite_faces() if f.is_simple_cycle]
    edges = []
    for i, m in enumerate(matchings):
        for face_id, face_mask in faces:
            j = index.get(m.edge_mask ^ face_mask)
            if j is not None and i < j:
                edges.append((i, j, face_id))
    edges.sort()
    logger.debug(f"R('{g.name}'): {len(matchings)} vertices, {len(edges)} edges")
    return ResonanceGraph(tuple(matchings), tuple(edges), g)


def check_connectivity_theorem(g: PlaneGraph) -> dict:
    rg = build_resonance_graph(g)
    connected = rg.is_connected()
    weakly = is_weakly_elementary(g)
    return {
        "check": "connectivity",
        "graph": g.name,
        "status": "pass" if connected == weakly else "fail",
        "resonance_connected": connected,
        "weakly_elementary": weakly,
    }


def _restricted_matching(g: PlaneGraph, m: Matching, piece: PlaneGraph) -> int:
    return sum(1 << piece.edge_id(*g.edges[e]) for e in m.edge_ids() if piece.has_edge(*g.edges[e]))


def check_product_structure(g: PlaneGraph) -> dict:
    """
    매칭을 각 elementary 성분으로 제한하는 사상을 통해 R(G)와 R(G_i)들의 데카르트 곱 비교
    """
    if not is_weakly_elementary(g):
        raise NotWeaklyElementary(f"graph '{g.name}' is not weakly elementary")
    rg = build_resonance_graph(g)
    pieces = elementary_components(g)
    factors = [build_resonance_graph(piece) for piece in pieces]
    positions = [{m.edge_mask: i for i, m in enumerate(f.vertices)} for f in factors]

    def coordinates(m: Matching) -> Tuple[int, ...]:
        return tuple(positions[k][_restricted_matching(g, m, piece)] for k, piece in enumerate(pieces))

    expected = 1
    for factor in factors:
        expected *= len(factor.vertices)
    image = [coordinates(m) for m in rg.vertices]
    problems = []
    if len(rg.vertices) != expected:
        problems.append(f"|V(R)| = {len(rg.vertices)}, product of factors = {expected}")
    if len(set(image)) != len(image):
        problems.append("coordinate map is not injective")

    product_edges = set()
    for k, factor in enumerate(factors):
        for i, j, _ in factor.edges:
            for rest in itertools.product(*(range(len(f.vertices)) for f in factors)):
                if rest[k] != i:
                    continue
                other = rest[:k] + (j,) + rest[k + 1:]
                product_edges.add(frozenset((rest, other)))
    mapped_edges = {frozenset((image[i], image[j])) for i, j, _ in rg.edges}
    if mapped_edges != product_edges:
        problems.append(f"{len(mapped_edges ^ product_edges)} edges differ from the product")

    return {
        "check": "product",
        "graph": g.name,
        "status": "fail" if problems else "pass",
        "factors": [len(f.vertices) for f in factors],
        "vertices": len(rg.vertices),
        "problems": problems,
    }


def height(g: PlaneGraph) -> int:
    pair = extremal_matchings(g)
    rg = build_resonance_graph(g)
    return nx.shortest_path_length(rg.graph, rg.index_of(pair.m_bottom), rg.index_of(pair.m_top))


def four_cycle_label_violations(rg: ResonanceGraph) -> List[Tuple[int, int, int, int]]:
    """마주보는 간선의 라벨이 다르거나 이웃 라벨의 면이 정점을 공유하는 4-사이클 a-b-c-d"""
    g, graph = rg.source, rg.graph
    violations = []
    for a in graph.nodes():
        for b, d in itertools.combinations(sorted(graph[a]), 2):
            for c in set(graph[b]) & set(graph[d]):
                if c == a or c < a or b < a or d < a:
                    continue
                ab, bc, cd, da = rg.label(a, b), rg.label(b, c), rg.label(c, d), rg.label(d, a)
                disjoint = g is None or not (g.faces[ab].vertex_set & g.faces[bc].vertex_set)
                if ab != cd or bc != da or not disjoint:
                    violations.append((a, b, c, d))
    return violations


def degree_resonance_violations(g: PlaneGraph, rg: ResonanceGraph) -> List[int]:
    return [i for i, m in enumerate(rg.vertices) if rg.graph.degree(i) != len(resonant_faces(g, m))]


def allowed_dual(g: PlaneGraph) -> nx.Graph:
    """허용 간선 부분 그래프의 내부 쌍대, 정점 이름은 g에서 대응하는 면 번호"""
    reduced = allowed_subgraph(g)
    by_edges = {g.edge_pairs(f.edge_ids): f.id for f in g.finite_faces()}
    rename = {f.id: by_edges[reduced.edge_pairs(f.edge_ids)] for f in reduced.finite_faces()}
    dual = inner_dual(reduced)
    graph = nx.Graph()
    graph.add_nodes_from(sorted(rename[v] for v in dual.vertices))
    graph.add_edges_from((rename[u], rename[v]) for u, v in dual.edges)
    return graph


def coordinate_faces(rg: ResonanceGraph, class_edges: Sequence[Sequence[Tuple[int, int]]]) -> List[Optional[int]]:
    """각 Θ-클래스의 면 라벨, 라벨이 둘 이상이면 None"""
    faces = []
    for edges in class_edges:
        labels = {rg.label(u, v) for u, v in edges}
        faces.append(labels.pop() if len(labels) == 1 else None)
    return faces


def require_p2c_dual(g: PlaneGraph) -> nx.Graph:
    """K2가 아닌 모든 elementary 성분이 peripherally 2-colorable일 때 g의 허용 쌍대 반환"""
    if is_elementary(g):
        pieces = [g]
    elif is_weakly_elementary(g):
        pieces = elementary_components(g)
    else:
        raise NotWeaklyElementary(f"graph '{g.name}' is not weakly elementary")
    for piece in pieces:
        if piece.is_k2():
            continue
        verdict = is_peripherally_2_colorable(piece)
        if not verdict:
            raise NotP2C(f"'{piece.name}' is not peripherally 2-colorable: {verdict.reason}")
    return allowed_dual(g)


def verify_daisy_dual(g: PlaneGraph) -> dict:
    """
    K2가 아닌 모든 elementary 성분이 peripherally 2-colorable이면 R(G)는 허용 쌍대의 D_I이며,
    R(G)의 좌표 i는 그 면 라벨의 쌍대 정점으로 대응함.
    그 밖의 weakly elementary 그래프는 관찰 결과와 함께 outside_hypothesis로 보고
    """
    if not is_weakly_elementary(g):
        raise NotWeaklyElementary(f"graph '{g.name}' is not weakly elementary")
    rg = build_resonance_graph(g)
    dual = allowed_dual(g)
    forest = nx.is_forest(dual) if dual.number_of_nodes() else True
    report = {"check": "daisy_dual", "graph": g.name, "dual_is_forest": forest}

    result = theta_classes(rg.graph)
    certificates = list(daisy_certificates(result.labelling)) if result.is_partial_cube else []
    report["resonance_is_daisy"] = bool(certificates)
    try:
        require_p2c_dual(g)
    except NotP2C as error:
        report["status"] = "outside_hypothesis"
        report["reason"] = str(error)
        return report

    faces = coordinate_faces(rg, result.labelling.class_edges) if result.is_partial_cube else []
    order = list(dual.nodes())
    target = build_DI(dual)
    wanted = {label for label in target.nodes() if all(
        (label[:i] + "1" + label[i + 1:]) not in target for i, ch in enumerate(label) if ch == "0")}
    mapped = None
    if certificates and None not in faces and sorted(faces) == sorted(order):
        position = [order.index(f) for f in faces]
        for certificate in certificates:
            relabelled = set()
            for label in certificate.maximal_vertices:
                chars = ["0"] * len(order)
                for k, ch in enumerate(label):
                    chars[position[k]] = ch
                relabelled.add("".join(chars))
            if relabelled == wanted:
                mapped = certificate
                break
    report["status"] = "pass" if mapped is not None else "fail"
    report["maximal_vertices"] = sorted(wanted)
    if mapped is not None:
        report["base_matching"] = list(rg.vertices[mapped.base_vertex].edge_ids())
    return report


def resonance_to_json(rg: ResonanceGraph) -> dict:
    return {
        "vertices": len(rg.vertices),
        "matchings": [m.to_json() for m in rg.vertices],
        "edges": [[i, j] for i, j, _ in rg.edges],
        "labels": {f"{i}-{j}": face for i, j, face in rg.edges},
    }


def resonance_to_dot(rg: ResonanceGraph, name: str = "R") -> str:
    lines = [f"graph {name.replace('-', '_') or 'R'} {{"]
    width = len(rg.source.edges) if rg.source is not None else 0
    for i, m in enumerate(rg.vertices):
        lines.append(f'  {i} [label="{mask_to_string(m.edge_mask, width) if width else i}"];')
    for i, j, face in rg.edges:
        lines.append(f'  {i} -- {j} [label="s{face}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
