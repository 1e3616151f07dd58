"""JSON 그래프 문서, DOT 내보내기, 리포트 직렬화"""
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, ValidationError

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from core.cube_theory import CubeLabelling
from core.errors import GraphSchemaError
from core.plane_graph import PlaneGraph, build_embedding, periphery


class GraphDocument(BaseModel):
    """`{"vertices", "edges", "rotations"?, "outer_face"?}` 와 선택적 메타데이터"""
    model_config = ConfigDict(extra="forbid")

    vertices: List[int]
    edges: List[Tuple[int, int]]
    rotations: Optional[Dict[str, List[int]]] = None
    # one clockwise periphery, or one per component
    outer_face: Optional[Union[List[int], List[List[int]]]] = None
    name: str = ""
    description: Optional[str] = None
    # facts the document must reproduce before anything trusts it
    expected: Optional[Dict[str, Any]] = None


def read_text(source: str) -> Tuple[str, str]:
    """파일 또는 stdin(source가 '-'일 때)의 텍스트, (텍스트, 표시 이름) 반환"""
    if source == "-":
        return sys.stdin.read(), "<stdin>"
    path = Path(source)
    try:
        return path.read_text(encoding="utf-8"), path.name
    except OSError as e:
        raise GraphSchemaError(f"{source}: {e.strerror}")


def parse_document(text: str, origin: str = "<input>") -> GraphDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphSchemaError(f"{origin}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    try:
        document = GraphDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise GraphSchemaError(f"{origin}: field '{field}': {first['msg']}")
    if not document.name:
        document.name = Path(origin).stem if origin != "<stdin>" else "stdin"
    return document


def load_document(source: str) -> GraphDocument:
    text, origin = read_text(source)
    return parse_document(text, origin)


def to_plane_graph(document: GraphDocument) -> PlaneGraph:
    if document.rotations is None:
        raise GraphSchemaError(f"{document.name}: field 'rotations' is required for a plane graph")
    return build_embedding(document.vertices, document.edges, document.rotations,
                           document.outer_face, name=document.name)


def to_networkx(document: GraphDocument) -> nx.Graph:
    graph = nx.Graph(name=document.name)
    graph.add_nodes_from(document.vertices)
    graph.add_edges_from(document.edges)
    return graph


def load_plane_graph(source: str) -> PlaneGraph:
    return to_plane_graph(load_document(source))


def document_from_plane(g: PlaneGraph, description: Optional[str] = None) -> GraphDocument:
    peripheries = [list(periphery(g, c)) for c in range(len(g.components))]
    return GraphDocument(
        vertices=list(g.vertices),
        edges=[list(e) for e in g.edges],
        rotations={str(v): list(rot) for v, rot in g.rotations.items()},
        outer_face=peripheries[0] if len(peripheries) == 1 else peripheries,
        name=g.name,
        description=description,
    )


def document_from_graph(h: nx.Graph, name: str = "") -> GraphDocument:
    order = {v: i for i, v in enumerate(h.nodes())}
    return GraphDocument(
        vertices=list(order.values()),
        edges=[[order[u], order[v]] for u, v in h.edges()],
        name=name or h.graph.get("name", ""),
    )


def plane_to_dot(g: PlaneGraph) -> str:
    """무방향 DOT, 각 간선에 양쪽 면 번호를 주석으로 기록"""
    lines = [f"graph {_dot_id(g.name)} {{"]
    for v in g.vertices:
        lines.append(f'  {v} [color="{"black" if g.coloring[v].value == "Black" else "gray"}"];')
    for e, (u, v) in enumerate(g.edges):
        left, right = g.dart_face[(u, v)], g.dart_face[(v, u)]
        lines.append(f"  {u} -- {v};  // e{e} faces {left}|{right}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def labelled_cube_to_json(h: nx.Graph, labelling: CubeLabelling) -> dict:
    position = {v: i for i, v in enumerate(labelling.order)}
    return {
        "n_coords": labelling.n_coords,
        "labels": {str(position[v]): labelling.labels[v] for v in labelling.order},
        "edges": sorted(sorted((position[u], position[v])) for u, v in h.edges()),
    }


def _dot_id(name: str) -> str:
    cleaned = "".join(ch if ch.isalnum() else "_" for ch in name)
    return cleaned if cleaned and not cleaned[0].isdigit() else f"g_{cleaned}"


def dump_json(payload: Any, indent: Optional[int] = 2) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=indent, sort_keys=True)


def write_document(document: GraphDocument, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_json(document.model_dump(exclude_none=True)) + "\n", encoding="utf-8")
