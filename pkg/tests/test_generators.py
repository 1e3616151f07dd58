import networkx as nx
import pytest

from core.errors import BadParameter, InvalidChainSpec
from core.matching import enumerate_perfect_matchings
from tools.generators import (
    PLANE_FAMILIES,
    TREE_FAMILIES,
    builtin_corpus,
    gen_bistar,
    gen_capped_ladder,
    gen_cycle,
    gen_gear,
    gen_hex_chain,
    gen_ladder,
    gen_path_plane,
    gen_s3pqr,
    gen_s4,
    gen_star,
    gen_union,
)


class TestTrees:
    def test_sizes(self):
        assert gen_star(5).number_of_nodes() == 6
        assert gen_bistar(2, 3).number_of_nodes() == 7
        assert gen_s4(2, 2).number_of_nodes() == 8
        assert gen_s3pqr(1, 2, 3).number_of_nodes() == 9

    @pytest.mark.parametrize("family, params", [
        ("star", (3,)), ("bistar", (1, 2)), ("s3", (2, 1)), ("s4", (1, 1)), ("s3pqr", (1, 2, 1)), ("tree-path", (5,)),
    ])
    def test_all_trees(self, family, params):
        assert nx.is_tree(TREE_FAMILIES[family](*params))

    def test_bad_parameters(self):
        with pytest.raises(BadParameter):
            gen_star(0)
        with pytest.raises(BadParameter):
            gen_bistar(0, 2)

    def test_cycle(self):
        """Cycles are the one non-tree abstract family"""
        assert nx.is_isomorphic(TREE_FAMILIES["cycle"](5), nx.cycle_graph(5))
        with pytest.raises(BadParameter):
            gen_cycle(2)


class TestHexChains:
    def test_anthracene(self):
        """A straight chain of three hexagons has four Kekulé structures"""
        g = gen_hex_chain("S")
        assert len(g.finite_faces()) == 3
        assert len(enumerate_perfect_matchings(g)) == 4

    def test_touching_cells(self):
        """Four left turns bring the fifth cell next to the first"""
        with pytest.raises(InvalidChainSpec):
            gen_hex_chain("LLLL")

    def test_unknown_turn(self):
        with pytest.raises(InvalidChainSpec):
            gen_hex_chain("LX")


class TestOtherPlaneGraphs:
    def test_gear(self):
        """Hub joined to every other rim vertex"""
        gear = gen_gear()
        assert sorted(d for _, d in gear.degree()) == [2, 2, 2, 3, 3, 3, 3]

    def test_ladder(self):
        g = gen_ladder(4)
        assert len(g.finite_faces()) == 4
        assert all(f.length == 4 for f in g.finite_faces())

    def test_capped_ladder_matches_corpus(self, capped_ladder):
        """Generated and hand-written capped ladders have the same faces"""
        generated = gen_capped_ladder(5)
        assert {f.vertex_set for f in generated.faces} == {f.vertex_set for f in capped_ladder.faces}
        assert generated.faces[generated.outer_face].vertex_set == capped_ladder.faces[capped_ladder.outer_face].vertex_set

    def test_path_has_no_faces(self):
        g = gen_path_plane(4)
        assert len(g.finite_faces()) == 0
        assert len(g.faces) == 1

    def test_union(self, hexagon):
        union = gen_union(hexagon, gen_path_plane(2), name="hex+k2")
        assert union.name == "hex+k2"
        assert len(union.vertices) == 8
        assert len(union.components) == 2


class TestCorpus:
    def test_builtin_corpus(self):
        """Unique names, every family used by the suites present"""
        graphs = builtin_corpus()
        names = [g.name for g in graphs]
        assert len(names) == len(set(names))
        assert {"hexagon", "anthracene", "coronene", "capped_ladder_5", "K2", "P4"} <= set(names)

    def test_family_tables(self):
        assert "capped-ladder" in PLANE_FAMILIES
        assert not set(PLANE_FAMILIES) & set(TREE_FAMILIES)
