import pytest

from conftest import fibonacci_number
from core.errors import NoPerfectMatching, SizeLimitExceeded
from core.matching import (
    EdgeStatus,
    Orientation,
    alternating_orientation,
    classify_edges,
    count_perfect_matchings,
    elementary_components,
    enumerate_perfect_matchings,
    every_face_alternating,
    extremal_matchings,
    is_allowed_edge,
    is_elementary,
    is_face_resonant,
    is_forcing_face,
    is_weakly_elementary,
    resonant_faces,
)
from tools.generators import gen_gear_plane, gen_ladder


class TestEnumeration:
    def test_hexagon(self, hexagon):
        """Benzene has two Kekulé structures, each of three edges"""
        matchings = enumerate_perfect_matchings(hexagon)
        assert len(matchings) == 2
        assert all(len(m) == 3 for m in matchings)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_fibonaccene_counts(self, fibonaccenes, n):
        """Zigzag chains have F(n+2) perfect matchings"""
        assert len(enumerate_perfect_matchings(fibonaccenes[n])) == fibonacci_number(n + 2)

    def test_coronene(self, coronene):
        """Coronene has 20 Kekulé structures"""
        assert len(enumerate_perfect_matchings(coronene)) == 20

    def test_capped_ladder(self, capped_ladder):
        """13 matchings of the ladder plus one through the cap"""
        assert len(enumerate_perfect_matchings(capped_ladder)) == 14

    def test_ladder(self):
        """Three squares in a row: F(5) matchings"""
        assert len(enumerate_perfect_matchings(gen_ladder(3))) == 5

    def test_enumeration_is_sorted(self, coronene):
        """Matchings come in ascending edge-mask order"""
        matchings = enumerate_perfect_matchings(coronene)
        assert matchings == sorted(matchings)

    def test_edge_guard(self, coronene):
        """Enumeration refuses graphs above the edge guard and names the override"""
        with pytest.raises(SizeLimitExceeded, match="RESLAB_EDGE_GUARD"):
            enumerate_perfect_matchings(coronene, edge_guard=10)

    def test_edge_guard_from_environment(self, coronene, monkeypatch):
        """RESLAB_EDGE_GUARD lowers the default guard"""
        monkeypatch.setenv("RESLAB_EDGE_GUARD", "12")
        with pytest.raises(SizeLimitExceeded):
            enumerate_perfect_matchings(coronene)

    def test_count_on_subsets(self):
        """Counting works on vertex subsets; the empty set has one matching"""
        square = [(0, 1), (1, 2), (2, 3), (0, 3)]
        assert count_perfect_matchings(range(4), square) == 2
        assert count_perfect_matchings([0, 1, 2], square) == 0
        assert count_perfect_matchings([], square) == 1
        assert count_perfect_matchings(range(4), square, limit=1) == 1

    def test_odd_graph_has_none(self):
        """The plane gear has seven vertices"""
        with pytest.raises(NoPerfectMatching):
            classify_edges(gen_gear_plane())


class TestClassification:
    def test_path_middle_edge_forbidden(self, p4_plane):
        """In P4 the middle edge lies in no perfect matching"""
        classification = classify_edges(p4_plane)
        middle = p4_plane.edge_id(1, 2)
        assert classification.statuses[middle] is EdgeStatus.FORBIDDEN
        assert set(classification.allowed()) == {p4_plane.edge_id(0, 1), p4_plane.edge_id(2, 3)}

    def test_allowed_edge_paths_agree(self, coronene, capped_ladder, p4_plane):
        """Enumeration and the G - u - v test classify every edge alike"""
        for g in (coronene, capped_ladder, p4_plane):
            statuses = classify_edges(g).statuses
            assert all(is_allowed_edge(g, e) == (s is EdgeStatus.ALLOWED) for e, s in enumerate(statuses))

    def test_elementary(self, hexagon, coronene, capped_ladder, p4_plane, two_hexagons):
        """Connected graphs without forbidden edges are elementary"""
        assert is_elementary(hexagon)
        assert is_elementary(coronene)
        assert is_elementary(capped_ladder)
        assert not is_elementary(p4_plane)
        assert not is_elementary(two_hexagons)

    def test_weakly_elementary(self, p4_plane, two_hexagons, coronene):
        """Removing forbidden edges creates no new finite face"""
        assert is_weakly_elementary(p4_plane)
        assert is_weakly_elementary(two_hexagons)
        assert is_weakly_elementary(coronene)

    def test_elementary_components_of_path(self, p4_plane):
        """P4 falls apart into two copies of K2"""
        pieces = elementary_components(p4_plane)
        assert len(pieces) == 2
        assert all(piece.is_k2() for piece in pieces)

    def test_face_alternation_matches_elementary(self, hexagon, naphthalene, coronene, capped_ladder):
        """A connected graph is elementary exactly when every face boundary alternates for some matching"""
        for g in (hexagon, naphthalene, coronene, capped_ladder):
            assert every_face_alternating(g) == is_elementary(g)


class TestFaces:
    def test_hexagon_always_resonant(self, hexagon):
        """Both Kekulé structures of benzene alternate around its face"""
        face = hexagon.finite_faces()[0].id
        assert all(is_face_resonant(hexagon, m, face) for m in enumerate_perfect_matchings(hexagon))

    def test_resonant_faces_listed(self, naphthalene):
        """Each naphthalene matching alternates around at least one hexagon"""
        for m in enumerate_perfect_matchings(naphthalene):
            assert resonant_faces(naphthalene, m)

    def test_forcing_outer_face(self, hexagon, naphthalene, capped_ladder, coronene):
        """Removing the periphery leaves a uniquely matchable graph, except in coronene"""
        for g in (hexagon, naphthalene, capped_ladder):
            assert all(is_forcing_face(g, f) for f in g.outer_faces)
        assert not is_forcing_face(coronene, coronene.outer_face)


class TestOrientation:
    def test_hexagon_orientations(self, hexagon):
        """The two matchings of a hexagon alternate in opposite senses"""
        face = hexagon.finite_faces()[0]
        orientations = {alternating_orientation(hexagon, m, face.boundary) for m in enumerate_perfect_matchings(hexagon)}
        assert orientations == {Orientation.PROPER, Orientation.IMPROPER}

    def test_not_alternating(self, naphthalene):
        """Some matching of naphthalene does not alternate around the periphery"""
        outer = naphthalene.faces[naphthalene.outer_face].boundary
        cycle = (outer[0],) + tuple(reversed(outer[1:]))
        orientations = [alternating_orientation(naphthalene, m, cycle) for m in enumerate_perfect_matchings(naphthalene)]
        assert Orientation.NOT_ALTERNATING in orientations

    @pytest.mark.parametrize("n", range(1, 6))
    def test_extremal_matchings_unique(self, fibonaccenes, n):
        """Each chain has exactly one bottom and one top matching, and they differ"""
        pair = extremal_matchings(fibonaccenes[n])
        assert pair.m_bottom != pair.m_top

    def test_extremal_matchings_of_coronene(self, coronene):
        """Coronene has a unique bottom and a unique top matching too"""
        pair = extremal_matchings(coronene)
        assert pair.m_bottom in enumerate_perfect_matchings(coronene)
        assert pair.m_top in enumerate_perfect_matchings(coronene)
