import os
import sys
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from core.cube_theory import (
    are_isomorphic,
    build_DI,
    fibonacci_cube,
    hypercube,
    is_daisy_cube,
    is_median_graph,
    maximal_hypercubes,
    simplex_graph,
    theta_classes,
)
from core.errors import (
    InputError,
    NoPerfectMatching,
    NotElementary,
    NotP2C,
    NotWeaklyElementary,
    PreconditionFailed,
    ResLabError,
)
from core.matching import enumerate_perfect_matchings, is_elementary, is_forcing_face
from core.mis import (
    all_graphs_on,
    check_resonant_independent_bijection,
    max_kcube_count,
    padovan,
    verify_hypercube_mis_bijection,
    verify_matchings_equal_independent_sets,
    verify_small_daisy_structure,
)
from core.plane_graph import PlaneGraph
from core.prufer import sweep_tree_classifier, verify_wilf
from core.resonance import (
    build_resonance_graph,
    check_connectivity_theorem,
    check_product_structure,
    degree_resonance_violations,
    four_cycle_label_violations,
    verify_daisy_dual,
)
from core.resonant_sets import enumerate_resonant_sets, is_maximal_resonant, nested_nice_cycles_scan, verify_maximal_canonical_bijection
from tools.generators import builtin_corpus, gen_bistar, gen_fibonaccene, gen_gear, gen_s3, gen_s3pqr, gen_s4, gen_star
from tools.graph_io import GraphDocument, document_from_plane, load_document, to_plane_graph
from utils.config import Settings, load_settings
from utils.logging_config import setup_logger

# raised when a graph lies outside the hypothesis of a check
OUTSIDE = (NotWeaklyElementary, NotElementary, NotP2C, NoPerfectMatching, PreconditionFailed)


def _fibonacci_number(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def check_expected(g: PlaneGraph, expected: dict) -> List[str]:
    """
    코퍼스 문서의 검증 전제(expected) 확인
    면은 정점 목록으로 주어지므로 면 번호 매기는 방식과 무관함
    """
    problems = []
    if "finite_faces" in expected and len(g.finite_faces()) != expected["finite_faces"]:
        problems.append(f"finite faces: {len(g.finite_faces())}, expected {expected['finite_faces']}")
    if "perfect_matchings" in expected:
        count = len(enumerate_perfect_matchings(g))
        if count != expected["perfect_matchings"]:
            problems.append(f"perfect matchings: {count}, expected {expected['perfect_matchings']}")
    if "maximal_resonant_sets" in expected:
        face_of = {f.vertex_set: f.id for f in g.finite_faces()}
        wanted = set()
        for face_set in expected["maximal_resonant_sets"]:
            ids = [face_of.get(frozenset(face)) for face in face_set]
            if None in ids:
                problems.append(f"no finite face on vertices {face_set}")
            wanted.add(frozenset(ids))
        sets = enumerate_resonant_sets(g)
        found = {s.faces for s in sets if is_maximal_resonant(g, s, sets)}
        if found != wanted:
            problems.append("maximal resonant sets differ from the preamble")
    if "maximal_hypercube_dimensions" in expected:
        dims = sorted((q.dimension for q in maximal_hypercubes(build_resonance_graph(g).graph)), reverse=True)
        if dims != sorted(expected["maximal_hypercube_dimensions"], reverse=True):
            problems.append(f"maximal hypercube dimensions {dims}")
    return problems


def nested_cycles_report(g: PlaneGraph) -> dict:
    """외곽면이 강제(forcing)인 것과 중첩된 nice 사이클 쌍이 없는 것이 동치인지 확인"""
    forcing = all(is_forcing_face(g, f) for f in g.outer_faces)
    nested = nested_nice_cycles_scan(g)
    return {
        "check": "nested_cycles",
        "graph": g.name,
        "status": "pass" if forcing == (not nested) else "fail",
        "outer_face_forcing": forcing,
        "nested_pairs": len(nested),
        "first_pair": [list(c) for c in nested[0]] if nested else None,
    }


def resonance_invariants_report(g: PlaneGraph) -> dict:
    rg = build_resonance_graph(g)
    label_violations = four_cycle_label_violations(rg)
    degree_violations = degree_resonance_violations(g, rg)
    return {
        "check": "resonance_invariants",
        "graph": g.name,
        "status": "fail" if label_violations or degree_violations else "pass",
        "four_cycle_violations": [list(c) for c in label_violations[:5]],
        "degree_violations": degree_violations[:5],
    }


def _maximal_canonical(g: PlaneGraph) -> dict:
    if not is_elementary(g):
        raise NotElementary(f"graph '{g.name}' is not elementary")
    return verify_maximal_canonical_bijection(g)


def _nested_cycles(g: PlaneGraph) -> dict:
    if g.is_k2() or not is_elementary(g):
        raise PreconditionFailed(f"graph '{g.name}' is K2 or not elementary")
    return nested_cycles_report(g)


PER_GRAPH_SUITES: Dict[str, Callable[[PlaneGraph], dict]] = {
    "maximal-canonical": _maximal_canonical,
    "connectivity": check_connectivity_theorem,
    "product": check_product_structure,
    "hypercube-mis": verify_hypercube_mis_bijection,
    "resonant-independent": check_resonant_independent_bijection,
    "matchings-independent": verify_matchings_equal_independent_sets,
    "daisy-dual": verify_daisy_dual,
    "nested-cycles": _nested_cycles,
    "resonance-invariants": resonance_invariants_report,
}


class VerificationRunner:
    """검증 스위트 실행기: 코퍼스 파일 단위 병렬 처리, 결과는 파일 이름 순"""

    def __init__(self, corpus_dir: Optional[str] = None, workers: Optional[int] = None,
                 settings: Optional[Settings] = None, progress: bool = False):
        self.logger = setup_logger()
        self.settings = settings or load_settings()
        self.corpus_dir = Path(corpus_dir) if corpus_dir else None
        self.workers = workers or self.settings.workers
        self.progress = progress
        self.global_suites: Dict[str, Callable[[], List[dict]]] = {
            "fibonacci": self.fibonacci_suite,
            "padovan": self.padovan_suite,
            "daisy-simplex": self.daisy_simplex_suite,
            "tree-classifier": self.tree_classifier_suite,
            "wilf": self.wilf_suite,
            "daisy-structure": self.daisy_structure_suite,
            "cube-counterexamples": self.cube_counterexamples_suite,
        }
        self.logger.info(f"VerificationRunner initialized (workers={self.workers}, corpus={self.corpus_dir})")

    @property
    def suite_names(self) -> List[str]:
        return list(PER_GRAPH_SUITES) + list(self.global_suites) + ["all"]

    def corpus_entries(self) -> List[Tuple[str, Callable[[], Optional[GraphDocument]]]]:
        """(파일 이름, 로더) 쌍, 코퍼스 디렉터리가 없으면 내장 생성 코퍼스 사용"""
        if self.corpus_dir is None:
            return [(f"{g.name}.json", lambda g=g: document_from_plane(g)) for g in builtin_corpus()]
        if not self.corpus_dir.is_dir():
            raise InputError(f"corpus directory '{self.corpus_dir}' does not exist")
        return [(path.name, lambda path=path: load_document(str(path))) for path in sorted(self.corpus_dir.glob("*.json"))]

    def run_entry(self, filename: str, loader: Callable[[], GraphDocument], suites: List[str]) -> List[dict]:
        """코퍼스 문서 하나에 요청된 모든 스위트 실행, 전제 검사를 먼저 수행"""
        document = loader()
        if document.rotations is None:
            self.logger.debug(f"{filename}: abstract graph, skipped by plane-graph suites")
            return []
        g = to_plane_graph(document)
        results = []
        if document.expected:
            problems = check_expected(g, document.expected)
            results.append({"check": "preamble", "graph": g.name, "file": filename,
                            "status": "fail" if problems else "pass", "problems": problems})
            if problems:
                self.logger.error(f"{filename}: preamble failed, skipping its checks: {problems}")
                return results
        for suite in suites:
            results.append(self._run_one(suite, g, filename))
        return results

    def _run_one(self, suite: str, g: PlaneGraph, filename: str) -> dict:
        started = time.time()
        try:
            report = PER_GRAPH_SUITES[suite](g)
        except OUTSIDE as error:
            report = {"check": suite, "graph": g.name, "status": "outside_hypothesis", "reason": str(error)}
        except ResLabError as error:
            self.logger.error(f"[{suite}] {filename}: {error}")
            report = {"check": suite, "graph": g.name, "status": "fail", "error": f"{type(error).__name__}: {error}"}
        report["file"] = filename
        self.logger.debug(f"[{suite}] {filename}: {report['status']} in {time.time() - started:.2f}s")
        return report

    def run_corpus(self, suites: List[str]) -> List[dict]:
        entries = self.corpus_entries()
        if not entries:
            return []
        buffered: Dict[str, List[dict]] = {}
        with ThreadPoolExecutor(max_workers=max(1, min(self.workers, len(entries)))) as executor:
            futures = {executor.submit(self.run_entry, name, loader, suites): name for name, loader in entries}
            for future in as_completed(futures):
                name = futures[future]
                try:
                    buffered[name] = future.result()
                except InputError:
                    raise
                except ResLabError as error:
                    self.logger.error(f"{name}: {error}")
                    buffered[name] = [{"check": "load", "file": name, "status": "fail", "error": str(error)}]
        return [report for name in sorted(buffered) for report in buffered[name]]

    def run(self, suite: str) -> List[dict]:
        if suite not in self.suite_names:
            raise InputError(f"unknown suite '{suite}', choose from {', '.join(self.suite_names)}")
        started = time.time()
        if suite == "all":
            results = self.run_corpus(list(PER_GRAPH_SUITES))
            for name, run in self.global_suites.items():
                results.extend(run())
        elif suite in PER_GRAPH_SUITES:
            results = self.run_corpus([suite])
        else:
            results = self.global_suites[suite]()
        counts = Counter(r["status"] for r in results)
        self.logger.info(f"suite '{suite}' finished in {time.time() - started:.2f}s: {dict(counts)}")
        return results

    # global suites

    def fibonacci_suite(self, n_max: int = 6) -> List[dict]:
        results = []
        for n in range(1, n_max + 1):
            g = gen_fibonaccene(n)
            rg = build_resonance_graph(g)
            dual_report = verify_daisy_dual(g)
            target = fibonacci_cube(n)
            problems = []
            if len(rg.vertices) != _fibonacci_number(n + 2):
                problems.append(f"|V(R)| = {len(rg.vertices)}, F(n+2) = {_fibonacci_number(n + 2)}")
            if not is_daisy_cube(rg.graph):
                problems.append("R(G) is not a daisy cube")
            if dual_report["status"] != "pass":
                problems.append("R(G) is not D_I of the inner dual under face coordinates")
            if not are_isomorphic(rg.graph, target):
                problems.append("R(G) is not isomorphic to the Fibonacci cube")
            results.append({"check": "fibonacci", "n": n, "vertices": len(rg.vertices),
                            "status": "fail" if problems else "pass", "problems": problems})
        return results

    def padovan_suite(self, n_max: int = 10) -> List[dict]:
        results = []
        for n in range(1, n_max + 1):
            cubes = maximal_hypercubes(fibonacci_cube(n))
            by_dim = Counter(q.dimension for q in cubes)
            expected = {k: max_kcube_count(n, k) for k in range(n + 1) if max_kcube_count(n, k)}
            ok = len(cubes) == padovan(n) and dict(by_dim) == expected
            results.append({"check": "padovan", "n": n, "maximal_hypercubes": len(cubes), "padovan": padovan(n),
                            "by_dimension": {str(k): v for k, v in sorted(by_dim.items())},
                            "status": "pass" if ok else "fail"})
        return results

    def daisy_simplex_suite(self, max_order: int = 6) -> List[dict]:
        """max_order 이하 모든 그래프에서 D_I(h)와 여그래프의 심플렉스 그래프가 정점 단위로 일치하는지 확인"""
        results = []
        for n in range(1, max_order + 1):
            started = time.time()
            graphs, mismatches, non_median = 0, [], 0
            for h in all_graphs_on(n):
                graphs += 1
                d_i = build_DI(h)
                simplex = simplex_graph(nx.complement(h))
                witness = {label: frozenset(d_i.nodes[label]["members"]) for label in d_i.nodes()}
                edges = {frozenset((witness[u], witness[v])) for u, v in d_i.edges()}
                same = set(witness.values()) == set(simplex.nodes()) and \
                    edges == {frozenset(e) for e in simplex.edges()}
                if not same and len(mismatches) < 5:
                    mismatches.append(sorted(h.edges()))
                if n <= 4 and not is_median_graph(d_i):
                    non_median += 1
            self.logger.info(f"daisy-simplex n={n}: {graphs} graphs in {time.time() - started:.2f}s")
            results.append({"check": "daisy_simplex", "n": n, "graphs": graphs, "mismatches": mismatches,
                            "non_median": non_median,
                            "status": "fail" if mismatches or non_median else "pass"})
        return results

    def tree_classifier_suite(self, n_max: int = 8) -> List[dict]:
        return [sweep_tree_classifier(n, self.workers, self.progress) for n in range(1, n_max + 1)]

    def wilf_suite(self, n_max: int = 9) -> List[dict]:
        return [verify_wilf(n_max, self.workers, self.progress)]

    def daisy_structure_suite(self, budget: int = 6) -> List[dict]:
        trees = [(f"star({k})", gen_star(k)) for k in range(1, 6)]
        for p in range(1, budget):
            for q in range(1, budget - p + 1):
                trees += [(f"bistar({p},{q})", gen_bistar(p, q)), (f"s3({p},{q})", gen_s3(p, q)),
                          (f"s4({p},{q})", gen_s4(p, q))]
                trees += [(f"s3pqr({p},{q},{r})", gen_s3pqr(p, q, r)) for r in range(1, budget - p - q + 1)]
        results = []
        for label, tree in trees:
            report = verify_small_daisy_structure(tree)
            report["tree"] = label
            results.append(report)
        return results

    def cube_counterexamples_suite(self) -> List[dict]:
        """BW3는 데이지지만 메디안이 아니고, P4는 메디안이지만 데이지가 아니며, Q3는 둘 다 만족"""
        graphs = {"BW3": gen_gear(), "P4": nx.path_graph(4), "Q3": hypercube(3)}
        wanted = {"BW3": (True, False), "P4": (False, True), "Q3": (True, True)}
        rows = []
        for name, h in graphs.items():
            daisy, median = is_daisy_cube(h), is_median_graph(h)
            row = {"graph": name, "partial_cube": theta_classes(h).is_partial_cube,
                   "daisy": bool(daisy), "median": bool(median)}
            row["ok"] = (row["daisy"], row["median"]) == wanted[name]
            if daisy and not median:
                # three weight-2 labels pairwise two coordinates apart
                labels = sorted(daisy.labels[v] for v in median.witness)
                row["witness_labels"] = labels
                row["ok"] = row["ok"] and len(set(labels)) == 3 and all(s.count("1") == 2 for s in labels)
            rows.append(row)
        return [{"check": "cube_counterexamples", "status": "pass" if all(r["ok"] for r in rows) else "fail",
                 "graphs": rows}]
