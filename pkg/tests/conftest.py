import os
import sys
from pathlib import Path
from typing import Iterable, List, Sequence

import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from core.plane_graph import PlaneGraph
from tools.generators import gen_capped_ladder, gen_coronene, gen_fibonaccene, gen_hexagon
from tools.graph_io import load_plane_graph

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def face_ids(g: PlaneGraph, vertex_lists: Iterable[Sequence[int]]) -> frozenset:
    """Finite face ids named by their boundary vertices."""
    by_vertices = {f.vertex_set: f.id for f in g.finite_faces()}
    return frozenset(by_vertices[frozenset(vs)] for vs in vertex_lists)


def fibonacci_number(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture(scope="session")
def capped_ladder() -> PlaneGraph:
    return load_plane_graph(str(CORPUS_DIR / "capped_ladder_5.json"))


@pytest.fixture(scope="session")
def capped_ladder_faces() -> List[List[int]]:
    """s1..s6 of the capped ladder, as boundary vertex lists."""
    return [[0, 1, 6, 7], [1, 2, 7, 8], [2, 3, 8, 9], [3, 4, 9, 10], [4, 5, 10, 11], [6, 7, 8, 9, 10, 11]]


@pytest.fixture(scope="session")
def hexagon() -> PlaneGraph:
    return gen_hexagon()


@pytest.fixture(scope="session")
def naphthalene() -> PlaneGraph:
    return load_plane_graph(str(CORPUS_DIR / "naphthalene.json"))


@pytest.fixture(scope="session")
def two_hexagons() -> PlaneGraph:
    return load_plane_graph(str(CORPUS_DIR / "two_hexagons.json"))


@pytest.fixture(scope="session")
def p4_plane() -> PlaneGraph:
    return load_plane_graph(str(CORPUS_DIR / "p4_plane.json"))


@pytest.fixture(scope="session")
def coronene() -> PlaneGraph:
    return gen_coronene()


@pytest.fixture(scope="session")
def generated_capped_ladder() -> PlaneGraph:
    return gen_capped_ladder(5)


@pytest.fixture(scope="session")
def fibonaccenes() -> dict:
    return {n: gen_fibonaccene(n) for n in range(1, 7)}
