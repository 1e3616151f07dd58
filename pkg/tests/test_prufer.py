import networkx as nx
import pytest

from core.errors import BadParameter
from core.prufer import adjacency, decode, labeled_trees, sweep_tree_classifier, verify_wilf


class TestDecode:
    def test_known_sequence(self):
        assert decode([3, 3, 3, 4], 6) == [(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]

    def test_small_orders(self):
        assert decode([], 1) == []
        assert decode([], 2) == [(0, 1)]

    def test_wrong_length(self):
        with pytest.raises(BadParameter):
            decode([0, 1], 3)

    def test_adjacency_is_symmetric(self):
        adj = adjacency(decode([3, 3, 3, 4], 6), 6)
        assert adj[3] == [0, 1, 2, 4]
        assert all(u in adj[v] for u in adj for v in adj[u])


class TestLabeledTrees:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_cayley_count(self, n):
        """n^(n-2) labeled trees, all of them distinct trees"""
        trees = list(labeled_trees(n))
        assert len(trees) == max(1, n ** (n - 2))
        edge_sets = set()
        for adj in trees:
            graph = nx.Graph(adj)
            graph.add_nodes_from(range(n))
            assert nx.is_tree(graph)
            edge_sets.add(frozenset(frozenset(e) for e in graph.edges()))
        assert len(edge_sets) == len(trees)

    def test_first_symbol_slices(self):
        """Fixing the first symbol splits the trees into n equal slices"""
        assert sum(1 for _ in labeled_trees(5, first=2)) == 5 ** 2


class TestSweeps:
    def test_wilf_small(self):
        report = verify_wilf(7)
        assert report["status"] == "pass"
        assert [row["max_mis"] for row in report["orders"]] == [1, 2, 2, 3, 4, 5, 8]

    def test_classifier_on_four_vertices(self):
        """12 labeled paths and 4 labeled stars"""
        report = sweep_tree_classifier(4)
        assert report["status"] == "pass"
        assert report["families"] == {"Bistar": 12, "Star": 4}

    @pytest.mark.parametrize("n", range(1, 7))
    def test_classifier(self, n):
        assert sweep_tree_classifier(n)["status"] == "pass"

    def test_bad_orders(self):
        with pytest.raises(BadParameter):
            verify_wilf(0)
        with pytest.raises(BadParameter):
            sweep_tree_classifier(0)

    @pytest.mark.slow
    def test_classifier_order_eight(self):
        report = sweep_tree_classifier(8, workers=2)
        assert report["status"] == "pass"
        assert report["trees"] == 8 ** 6

    @pytest.mark.slow
    def test_wilf_order_nine(self):
        report = verify_wilf(9, workers=2)
        assert report["status"] == "pass"
        assert report["orders"][-1]["max_mis"] == 16
