import pytest

from core.errors import InputError
from tools.verify_tool import (
    PER_GRAPH_SUITES,
    VerificationRunner,
    check_expected,
    nested_cycles_report,
    resonance_invariants_report,
)


@pytest.fixture(scope="module")
def runner(corpus_dir):
    return VerificationRunner(str(corpus_dir), workers=2)


@pytest.fixture(scope="module")
def builtin_runner():
    return VerificationRunner(workers=2)


class TestPreamble:
    def test_capped_ladder_preamble(self, capped_ladder, capped_ladder_faces):
        s1, s2, s3, s4, s5, s6 = capped_ladder_faces
        expected = {
            "finite_faces": 6,
            "perfect_matchings": 14,
            "maximal_resonant_sets": [[s1, s3, s5], [s1, s4], [s2, s4], [s2, s5], [s6]],
            "maximal_hypercube_dimensions": [1, 2, 2, 2, 3],
        }
        assert check_expected(capped_ladder, expected) == []

    def test_wrong_facts_are_reported(self, hexagon):
        problems = check_expected(hexagon, {"finite_faces": 2, "perfect_matchings": 3})
        assert len(problems) == 2

    def test_unknown_face(self, hexagon):
        problems = check_expected(hexagon, {"maximal_resonant_sets": [[[0, 1, 2, 3]]]})
        assert any("no finite face" in p for p in problems)


class TestReports:
    def test_nested_cycles(self, hexagon, coronene):
        """Forcing outer face and the absence of nested nice cycles go together"""
        assert nested_cycles_report(hexagon)["status"] == "pass"
        report = nested_cycles_report(coronene)
        assert report["status"] == "pass"
        assert not report["outer_face_forcing"]
        assert report["first_pair"]

    def test_resonance_invariants(self, capped_ladder):
        assert resonance_invariants_report(capped_ladder)["status"] == "pass"


class TestRunner:
    def test_corpus_suite(self, runner):
        """Every corpus document passes or sits outside the hypothesis; abstract ones are skipped"""
        results = runner.run("maximal-canonical")
        files = [r["file"] for r in results]
        assert files == sorted(files)
        assert "bw3.json" not in files
        assert all(r["status"] in ("pass", "outside_hypothesis") for r in results)
        assert {r["file"] for r in results if r["check"] == "preamble"} >= {"capped_ladder_5.json", "naphthalene.json"}
        outside = {r["file"] for r in results if r["status"] == "outside_hypothesis"}
        assert {"p4_plane.json", "two_hexagons.json"} <= outside

    def test_product_suite(self, runner):
        results = runner.run("product")
        assert all(r["status"] != "fail" for r in results)

    def test_builtin_corpus(self):
        """Without a directory the generated corpus is used"""
        results = VerificationRunner().run("connectivity")
        assert {r["graph"] for r in results} >= {"coronene", "anthracene", "K2"}
        assert all(r["status"] == "pass" for r in results)

    @pytest.mark.parametrize("suite", sorted(PER_GRAPH_SUITES))
    def test_builtin_corpus_never_fails(self, builtin_runner, suite):
        """Each graph of the generated corpus passes every per-graph suite or lies outside its hypothesis"""
        results = builtin_runner.run(suite)
        assert results
        failed = [(r["file"], r.get("problems") or r.get("error")) for r in results if r["status"] == "fail"]
        assert failed == []

    @pytest.mark.parametrize("suite", ["resonant-independent", "hypercube-mis", "daisy-dual"])
    def test_corpus_directory_never_fails(self, runner, suite):
        assert all(r["status"] != "fail" for r in runner.run(suite))

    def test_unknown_suite(self, runner):
        with pytest.raises(InputError, match="unknown suite"):
            runner.run("everything")

    def test_missing_corpus(self, tmp_path):
        with pytest.raises(InputError):
            VerificationRunner(str(tmp_path / "nowhere")).run("connectivity")

    def test_broken_document_fails_its_load(self, tmp_path):
        (tmp_path / "odd.json").write_text(
            '{"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2], [0, 2]],'
            ' "rotations": {"0": [1, 2], "1": [2, 0], "2": [0, 1]}}', encoding="utf-8")
        with pytest.raises(InputError):
            VerificationRunner(str(tmp_path)).run("connectivity")


class TestGlobalSuites:
    def test_fibonacci(self, runner):
        assert all(r["status"] == "pass" for r in runner.fibonacci_suite(n_max=4))

    def test_padovan(self, runner):
        results = runner.padovan_suite(n_max=8)
        assert [r["maximal_hypercubes"] for r in results] == [1, 2, 2, 3, 4, 5, 7, 9]
        assert all(r["status"] == "pass" for r in results)

    def test_daisy_simplex(self, runner):
        results = runner.daisy_simplex_suite(max_order=4)
        assert [r["graphs"] for r in results] == [1, 2, 8, 64]
        assert all(r["status"] == "pass" for r in results)

    def test_daisy_structure(self, runner):
        assert all(r["status"] == "pass" for r in runner.daisy_structure_suite(budget=4))

    def test_cube_counterexamples(self, runner):
        (report,) = runner.cube_counterexamples_suite()
        assert report["status"] == "pass"
        gear = next(row for row in report["graphs"] if row["graph"] == "BW3")
        assert gear["partial_cube"] and gear["daisy"] and not gear["median"]

    def test_tree_suites(self, runner):
        assert all(r["status"] == "pass" for r in runner.tree_classifier_suite(n_max=5))
        assert runner.wilf_suite(n_max=6)[0]["status"] == "pass"

    @pytest.mark.slow
    def test_all(self, runner):
        results = runner.run("all")
        assert all(r["status"] != "fail" for r in results)
