"""Prüfer 수열로 만든 레이블 트리와 전수 조사"""
import heapq
import itertools
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from core.errors import BadParameter
from core.mis import TreeFamily, classify_adjacency, count_mis_adjacency, mis_masks, tree_diameter, wilf_bound
from utils.logging_config import setup_logger

logger = setup_logger()


def decode(sequence: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """길이 n - 2 수열이 나타내는 range(n) 위 레이블 트리의 간선"""
    if n < 1 or (n >= 2 and len(sequence) != n - 2):
        raise BadParameter(f"a Prüfer sequence for {n} vertices has length {max(n - 2, 0)}")
    if n == 1:
        return []
    degree = [1] * n
    for v in sequence:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in sequence:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def adjacency(edges: Sequence[Tuple[int, int]], n: int) -> Dict[int, List[int]]:
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def labeled_trees(n: int, first: Optional[int] = None) -> Iterator[Dict[int, List[int]]]:
    """range(n) 위 모든 레이블 트리, first가 주어지면 그 기호로 시작하는 수열만"""
    if n <= 2:
        if first in (None, 0):
            yield adjacency(decode([], n), n)
        return
    heads = [first] if first is not None else range(n)
    for head in heads:
        for tail in itertools.product(range(n), repeat=n - 3):
            yield adjacency(decode((head,) + tail, n), n)


def _mis_count(adj: Dict[int, List[int]]) -> int:
    return len(mis_masks([sum(1 << w for w in adj[v]) for v in range(len(adj))]))


def _wilf_slice(n: int, first: int) -> Tuple[int, int]:
    best, trees = 0, 0
    for adj in labeled_trees(n, first):
        best = max(best, _mis_count(adj))
        trees += 1
    return best, trees


def _classifier_slice(n: int, first: int) -> dict:
    stats = {"trees": 0, "families": Counter(), "mismatches": [], "dp_mismatches": 0,
             "other_below_six": 0, "diameter_mismatches": 0}
    for adj in labeled_trees(n, first):
        actual = _mis_count(adj)
        tree_class = classify_adjacency(adj)
        stats["trees"] += 1
        stats["families"][tree_class.family.value] += 1
        if tree_class.mis_predicted != actual and len(stats["mismatches"]) < 5:
            stats["mismatches"].append({"edges": sorted((u, v) for u in adj for v in adj[u] if u < v),
                                        "class": tree_class.to_json(), "mis_actual": actual})
        if count_mis_adjacency(adj) != actual:
            stats["dp_mismatches"] += 1
        if tree_class.family is TreeFamily.OTHER and actual < 6:
            stats["other_below_six"] += 1
        if n >= 3:
            diameter = tree_diameter(adj)
            if (diameter == 2) != (actual == 2) or (diameter == 3) != (actual == 3):
                stats["diameter_mismatches"] += 1
    return stats


def _fan_out(task, n: int, workers: int, progress: bool, label: str) -> list:
    heads = list(range(n)) if n > 2 else [0]
    results = {}
    if workers > 1 and len(heads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(task, n, head): head for head in heads}
            for future in tqdm(as_completed(futures), total=len(futures), desc=label, disable=not progress):
                results[futures[future]] = future.result()
    else:
        for head in tqdm(heads, desc=label, disable=not progress):
            results[head] = task(n, head)
    return [results[head] for head in heads]


def verify_wilf(n_max: int, workers: int = 1, progress: bool = False) -> dict:
    """n_max 이하 각 차수의 레이블 트리에서 극대 독립 집합 수의 최댓값"""
    if n_max < 1:
        raise BadParameter(f"n_max must be >= 1, got {n_max}")
    rows = []
    for n in range(1, n_max + 1):
        started = time.time()
        slices = _fan_out(_wilf_slice, n, workers, progress, f"wilf n={n}")
        best = max(b for b, _ in slices)
        trees = sum(t for _, t in slices)
        rows.append({"n": n, "trees": trees, "max_mis": best, "bound": wilf_bound(n), "ok": best == wilf_bound(n)})
        logger.info(f"wilf n={n}: {trees} trees, max |MIS| {best} in {time.time() - started:.2f}s")
    return {"check": "wilf", "status": "pass" if all(r["ok"] for r in rows) else "fail", "orders": rows}


def sweep_tree_classifier(n: int, workers: int = 1, progress: bool = False) -> dict:
    """차수 n의 모든 레이블 트리에서 분류기 예측과 전수 계산 비교"""
    if n < 1:
        raise BadParameter(f"n must be >= 1, got {n}")
    started = time.time()
    slices = _fan_out(_classifier_slice, n, workers, progress, f"classify n={n}")
    families: Counter = Counter()
    mismatches = []
    totals = Counter()
    for part in slices:
        families.update(part["families"])
        mismatches.extend(part["mismatches"])
        totals.update({k: part[k] for k in ("trees", "dp_mismatches", "other_below_six", "diameter_mismatches")})
    logger.info(f"classifier sweep n={n}: {totals['trees']} trees in {time.time() - started:.2f}s")
    failed = mismatches or totals["dp_mismatches"] or totals["other_below_six"] or totals["diameter_mismatches"]
    return {
        "check": "tree_classifier",
        "n": n,
        "status": "fail" if failed else "pass",
        "trees": totals["trees"],
        "families": dict(sorted(families.items())),
        "mismatches": mismatches[:5],
        "dp_mismatches": totals["dp_mismatches"],
        "other_below_six": totals["other_below_six"],
        "diameter_mismatches": totals["diameter_mismatches"],
    }
