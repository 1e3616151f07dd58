import networkx as nx
import pytest

from core.cube_theory import fibonacci_cube
from core.errors import NotP2C, NotWeaklyElementary
from core.resonance import (
    allowed_dual,
    build_resonance_graph,
    check_connectivity_theorem,
    check_product_structure,
    degree_resonance_violations,
    four_cycle_label_violations,
    height,
    require_p2c_dual,
    resonance_to_dot,
    resonance_to_json,
    verify_daisy_dual,
)
from tools.generators import gen_hex_chain, gen_k2, gen_path_plane


class TestBuild:
    def test_hexagon_gives_k2(self, hexagon):
        """Two Kekulé structures, one face between them"""
        rg = build_resonance_graph(hexagon)
        assert len(rg.vertices) == 2
        assert rg.edges == ((0, 1, hexagon.finite_faces()[0].id),)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_fibonaccene_gives_fibonacci_cube(self, fibonaccenes, n):
        """R of a zigzag chain of n hexagons is the Fibonacci cube of order n"""
        rg = build_resonance_graph(fibonaccenes[n])
        assert nx.is_isomorphic(rg.graph, fibonacci_cube(n))

    def test_edges_carry_face_labels(self, coronene):
        """Adjacent matchings differ by exactly the edges of their label face"""
        rg = build_resonance_graph(coronene)
        for i, j, face in rg.edges:
            diff = rg.vertices[i].edge_mask ^ rg.vertices[j].edge_mask
            assert diff == coronene.face_masks[face]

    def test_capped_ladder_connected(self, capped_ladder):
        """The cap face joins the cap matching to the ladder matchings"""
        rg = build_resonance_graph(capped_ladder)
        assert len(rg.vertices) == 14
        assert rg.is_connected()

    def test_four_cycles_and_degrees(self, coronene, capped_ladder):
        """Opposite edges of every 4-cycle share a label; degree equals the number of resonant faces"""
        for g in (coronene, capped_ladder):
            rg = build_resonance_graph(g)
            assert four_cycle_label_violations(rg) == []
            assert degree_resonance_violations(g, rg) == []


class TestStructure:
    def test_connectivity(self, hexagon, p4_plane, two_hexagons, coronene):
        """R(G) is connected exactly for weakly elementary G"""
        for g in (hexagon, p4_plane, two_hexagons, coronene):
            report = check_connectivity_theorem(g)
            assert report["status"] == "pass"
            assert report["resonance_connected"]

    def test_height(self, hexagon, naphthalene):
        """Distance between the extremal matchings"""
        assert height(hexagon) == 1
        assert height(naphthalene) == 2

    def test_product_of_hexagons(self, two_hexagons):
        """Two disjoint hexagons give K2 x K2"""
        report = check_product_structure(two_hexagons)
        assert report["status"] == "pass"
        assert report["factors"] == [2, 2]
        assert report["vertices"] == 4

    def test_product_of_path(self, p4_plane):
        """P4 splits into two K2, each with a single matching"""
        report = check_product_structure(p4_plane)
        assert report["status"] == "pass"
        assert report["factors"] == [1, 1]


class TestDaisyDual:
    @pytest.mark.parametrize("n", [2, 4])
    def test_chain(self, fibonaccenes, n):
        """A chain has a path as dual, and R(G) is D_I of it"""
        report = verify_daisy_dual(fibonaccenes[n])
        assert report["status"] == "pass"
        assert report["dual_is_forest"]
        assert report["resonance_is_daisy"]

    def test_disjoint_hexagons(self, two_hexagons):
        """Two isolated dual vertices: a single maximal vertex 11"""
        report = verify_daisy_dual(two_hexagons)
        assert report["status"] == "pass"
        assert report["maximal_vertices"] == ["11"]

    def test_coronene_is_outside(self, coronene):
        """The wheel is no forest, R(coronene) is no daisy cube, and the periphery test already fails"""
        report = verify_daisy_dual(coronene)
        assert not report["dual_is_forest"]
        assert not report["resonance_is_daisy"]
        assert report["status"] == "outside_hypothesis"

    def test_anthracene_is_outside(self):
        """A linear chain has a path as dual, yet R(G) is P4 and no daisy cube"""
        report = verify_daisy_dual(gen_hex_chain("S", name="anthracene"))
        assert report["dual_is_forest"]
        assert not report["resonance_is_daisy"]
        assert report["status"] == "outside_hypothesis"
        assert "peripherally 2-colorable" in report["reason"]

    @pytest.mark.parametrize("g", [gen_k2(), gen_path_plane(4)], ids=["K2", "P4"])
    def test_no_finite_faces(self, g):
        """One perfect matching: R(G) is K1, which is D_I of the empty dual"""
        report = verify_daisy_dual(g)
        assert report["status"] == "pass"
        assert report["maximal_vertices"] == [""]

    def test_p2c_dual(self, naphthalene, capped_ladder):
        assert require_p2c_dual(naphthalene).number_of_edges() == 1
        assert require_p2c_dual(gen_k2()).number_of_nodes() == 0
        with pytest.raises(NotP2C):
            require_p2c_dual(capped_ladder)

    def test_allowed_dual_keeps_face_ids(self, naphthalene):
        """Dual vertices are named by the faces of the input graph"""
        dual = allowed_dual(naphthalene)
        assert set(dual.nodes()) == {f.id for f in naphthalene.finite_faces()}
        assert dual.number_of_edges() == 1

    def test_needs_weakly_elementary(self, monkeypatch, hexagon):
        """Graphs that are not weakly elementary are refused"""
        monkeypatch.setattr("core.resonance.is_weakly_elementary", lambda g: False)
        with pytest.raises(NotWeaklyElementary):
            verify_daisy_dual(hexagon)


class TestExport:
    def test_json(self, hexagon):
        payload = resonance_to_json(build_resonance_graph(hexagon))
        face = hexagon.finite_faces()[0].id
        assert payload["vertices"] == 2
        assert payload["edges"] == [[0, 1]]
        assert payload["labels"] == {"0-1": face}
        assert all(len(m) == 3 for m in payload["matchings"])

    def test_dot(self, naphthalene):
        """Vertices are labelled by their edge strings, edges by their face"""
        text = resonance_to_dot(build_resonance_graph(naphthalene), "naphthalene")
        assert text.startswith("graph naphthalene {")
        assert text.count(" -- ") == 2
        assert 'label="s' in text
