import networkx as nx
import pytest

from core.errors import BadRotation, NonPlanarEmbedding, NotACycle, NotBipartite, PreconditionFailed
from core.plane_graph import (
    Color,
    build_embedding,
    clockwise_cycle,
    cycle_interior,
    disjoint_union,
    inner_dual,
    is_peripherally_2_colorable,
    periphery,
    restrict,
    trace_faces,
    validate_cycle,
)
from tools.generators import gen_hex_chain, gen_k2, gen_ladder


class TestBuildEmbedding:
    def test_hexagon_faces(self, hexagon):
        """A hexagon has one finite face and the outer face, both of length 6"""
        assert len(hexagon.faces) == 2
        assert len(hexagon.finite_faces()) == 1
        assert all(f.length == 6 for f in hexagon.faces)
        assert hexagon.outer_face not in {f.id for f in hexagon.finite_faces()}

    @pytest.mark.parametrize("n", range(1, 7))
    def test_fibonaccene_counts(self, fibonaccenes, n):
        """Zigzag chains have 4n+2 vertices, 5n+1 edges and n hexagonal finite faces"""
        g = fibonaccenes[n]
        assert len(g.vertices) == 4 * n + 2
        assert len(g.edges) == 5 * n + 1
        assert len(g.finite_faces()) == n
        assert all(f.length == 6 for f in g.finite_faces())

    def test_coronene_counts(self, coronene):
        """Coronene: 24 vertices, 30 edges, 7 finite faces"""
        assert (len(coronene.vertices), len(coronene.edges), len(coronene.finite_faces())) == (24, 30, 7)

    def test_coloring_is_proper(self, coronene):
        """Adjacent vertices get different colours"""
        assert all(coronene.coloring[u] != coronene.coloring[v] for u, v in coronene.edges)
        assert set(coronene.coloring.values()) == {Color.WHITE, Color.BLACK}

    def test_odd_cycle_rejected(self):
        """A triangle is not bipartite"""
        rotations = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
        with pytest.raises(NotBipartite):
            build_embedding([0, 1, 2], [(0, 1), (1, 2), (0, 2)], rotations)

    def test_rotation_missing_an_edge(self):
        """Every edge must appear in the rotations of both endpoints"""
        with pytest.raises(BadRotation):
            build_embedding([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)], {0: [1], 1: [0], 2: [3, 1], 3: [2]})

    def test_rotation_with_non_edge(self):
        """Rotations may not mention pairs that are not edges"""
        with pytest.raises(BadRotation):
            build_embedding([0, 1], [(0, 1)], {0: [1], 1: [0, 0]})

    def test_k33_is_not_planar(self):
        """No rotation system of K3,3 satisfies Euler's formula"""
        white, black = [0, 1, 2], [3, 4, 5]
        edges = [(u, v) for u in white for v in black]
        rotations = {u: black for u in white}
        rotations.update({v: white for v in black})
        with pytest.raises(NonPlanarEmbedding):
            build_embedding(white + black, edges, rotations)

    def test_outer_face_hint_selects_face(self, capped_ladder):
        """The outer face of the capped ladder runs over the top row and the cap"""
        outer = capped_ladder.faces[capped_ladder.outer_face]
        assert outer.vertex_set == frozenset({0, 1, 2, 3, 4, 5, 6, 11})

    def test_unknown_hint_vertex(self):
        """An outer face hint naming unknown vertices is rejected"""
        rotations = {0: [1, 3], 1: [2, 0], 2: [3, 1], 3: [0, 2]}
        with pytest.raises(BadRotation):
            build_embedding(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)], rotations, [0, 9, 2, 1])

    def test_trace_faces_of_square(self):
        """A 4-cycle traces into two faces of four darts"""
        walks = trace_faces({0: [1, 3], 1: [2, 0], 2: [3, 1], 3: [0, 2]})
        assert sorted(len(w) for w in walks) == [4, 4]


class TestInnerDual:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_chain_dual_is_path(self, fibonaccenes, n):
        """The inner dual of a zigzag chain is a path"""
        assert nx.is_isomorphic(inner_dual(fibonaccenes[n]).as_graph(), nx.path_graph(n))

    def test_coronene_dual_is_wheel(self, coronene):
        """Central hexagon adjacent to six, the six forming a ring"""
        dual = inner_dual(coronene).as_graph()
        assert nx.is_isomorphic(dual, nx.wheel_graph(7))

    def test_outerplane_dual_is_tree(self):
        """A 2-connected outerplane bipartite graph has a tree as inner dual"""
        g = gen_hex_chain("SLR")
        assert nx.is_tree(inner_dual(g).as_graph())


class TestCycles:
    def test_periphery_is_clockwise_and_starts_low(self, hexagon):
        """The periphery of the hexagon lists all six vertices from the smallest"""
        walk = periphery(hexagon)
        assert len(walk) == 6
        assert walk[0] == min(hexagon.vertices)

    def test_periphery_encloses_everything(self, coronene):
        """The periphery of coronene is a cycle whose interior holds every finite face"""
        walk = periphery(coronene)
        assert len(walk) == 18
        assert cycle_interior(coronene, walk) == frozenset(f.id for f in coronene.finite_faces())

    def test_face_boundary_is_clockwise(self, naphthalene):
        """Finite faces are traced with the face on the right"""
        for face in naphthalene.finite_faces():
            assert clockwise_cycle(naphthalene, face.boundary) == face.boundary
            assert cycle_interior(naphthalene, face.boundary) == frozenset({face.id})

    def test_reversed_cycle_is_turned_around(self, hexagon):
        """clockwise_cycle undoes a counterclockwise listing"""
        face = hexagon.finite_faces()[0]
        reversed_walk = (face.boundary[0],) + tuple(reversed(face.boundary[1:]))
        assert clockwise_cycle(hexagon, reversed_walk) == face.boundary

    def test_not_a_cycle(self, hexagon):
        """Non-adjacent consecutive vertices are rejected"""
        with pytest.raises(NotACycle):
            validate_cycle(hexagon, [0, 2, 4])
        with pytest.raises(NotACycle):
            validate_cycle(hexagon, [0, 1])


class TestRestrictAndUnion:
    def test_union_keeps_both_outer_faces(self, hexagon):
        """Two hexagons side by side: two components, two outer faces"""
        union = disjoint_union(hexagon, hexagon, name="pair")
        assert len(union.components) == 2
        assert len(union.outer_faces) == 2
        assert len(union.finite_faces()) == 2

    def test_restrict_to_face_boundary(self, naphthalene):
        """Restricting naphthalene to one hexagon leaves a single finite face"""
        face = naphthalene.finite_faces()[0]
        sub = restrict(naphthalene, face.edge_ids, vertices=face.vertex_set)
        assert len(sub.vertices) == 6
        assert len(sub.finite_faces()) == 1
        assert sub.finite_faces()[0].vertex_set == face.vertex_set


class TestPeripheral2Coloring:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_fibonaccenes(self, fibonaccenes, n):
        """Zigzag chains are peripherally 2-colorable"""
        assert is_peripherally_2_colorable(fibonaccenes[n])

    def test_ladder(self):
        """A row of squares is peripherally 2-colorable"""
        assert is_peripherally_2_colorable(gen_ladder(3))

    def test_coronene_has_inner_degree_three(self, coronene):
        """Coronene's central hexagon puts degree-3 vertices off the periphery"""
        verdict = is_peripherally_2_colorable(coronene)
        assert not verdict
        assert "not on the periphery" in verdict.reason

    def test_k2_excluded(self):
        """K2 is outside the test"""
        with pytest.raises(PreconditionFailed):
            is_peripherally_2_colorable(gen_k2())
