import sys
import time
from functools import wraps
from typing import Callable, List, Optional

import click
import networkx as nx

from core import __version__
from core.cube_theory import fibonacci_cube, hypercube, is_daisy_cube, is_median_graph, lucas_cube
from core.errors import BadParameter, InputError, NotElementary, PreconditionFailed, ResLabError
from core.matching import is_elementary, is_forcing_face, is_weakly_elementary
from core.mis import classify_tree, enumerate_mis
from core.plane_graph import PlaneGraph, is_peripherally_2_colorable
from core.resonance import build_resonance_graph, resonance_to_dot, resonance_to_json
from core.resonant_sets import enumerate_resonant_sets, is_canonical_resonant, is_maximal_resonant
from tools.generators import PLANE_FAMILIES, TREE_FAMILIES
from tools.graph_io import (
    document_from_graph,
    document_from_plane,
    dump_json,
    load_document,
    plane_to_dot,
    to_networkx,
    to_plane_graph,
)
from tools.verify_tool import VerificationRunner
from utils.config import load_settings
from utils.logging_config import setup_logger

logger = setup_logger()

EXIT_FAILED, EXIT_INPUT = 1, 2

CUBE_FAMILIES = {"hypercube": hypercube, "fibonacci-cube": fibonacci_cube, "lucas-cube": lucas_cube}


def wrap_report(results: List[dict]) -> dict:
    """모든 리포트에 도구 버전과 사용된 크기 제한을 함께 기록"""
    return {"tool": "reslab", "version": __version__, "guards": load_settings().guards(), "results": results}


def handle_errors(command: Callable) -> Callable:
    """입력 오류는 종료 코드 2, 그 밖의 라이브러리 오류는 1로 종료"""
    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except InputError as e:
            logger.error(f"{type(e).__name__}: {e}")
            sys.exit(EXIT_INPUT)
        except ResLabError as e:
            logger.error(f"{type(e).__name__}: {e}")
            sys.exit(EXIT_FAILED)
    return wrapper


def emit(payload: dict, as_json: bool, summary: List[str]) -> None:
    if as_json:
        click.echo(dump_json(payload))
    else:
        for line in summary:
            click.echo(line)


def _plane(source: str) -> PlaneGraph:
    return to_plane_graph(load_document(source))


@click.group()
@click.version_option(__version__, prog_name="reslab")
def cli():
    """공명 그래프, 데이지 큐브, 트리의 극대 독립 집합 검증 도구"""


@cli.command()
@click.argument("family")
@click.argument("params", nargs=-1)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="write the document here instead of stdout")
@handle_errors
def generate(family: str, params: tuple, output: Optional[str]):
    """생성한 그래프를 JSON 그래프 문서로 출력"""
    try:
        # chain takes its turn string as is
        values = list(params) if family == "chain" else [int(p) for p in params]
    except ValueError:
        raise BadParameter(f"parameters of '{family}' must be integers, got {list(params)}")
    try:
        if family in PLANE_FAMILIES:
            document = document_from_plane(PLANE_FAMILIES[family](*values))
        elif family in TREE_FAMILIES:
            document = document_from_graph(TREE_FAMILIES[family](*values), name=f"{family}_{'_'.join(map(str, values))}")
        elif family in CUBE_FAMILIES:
            document = document_from_graph(CUBE_FAMILIES[family](*values))
        else:
            known = sorted(PLANE_FAMILIES) + sorted(TREE_FAMILIES) + sorted(CUBE_FAMILIES)
            raise BadParameter(f"unknown family '{family}', choose from {', '.join(known)}")
    except TypeError:
        raise BadParameter(f"wrong number of parameters for '{family}': {list(params)}")
    text = dump_json(document.model_dump(exclude_none=True))
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"{document.name} written to {output}")
    else:
        click.echo(text)


def _plane_checks(g: PlaneGraph, flags: dict) -> List[dict]:
    rows = []
    if flags["elementary"]:
        rows.append({"property": "elementary", "holds": is_elementary(g)})
    if flags["weakly_elementary"]:
        rows.append({"property": "weakly_elementary", "holds": is_weakly_elementary(g)})
    if flags["p2c"]:
        try:
            verdict = is_peripherally_2_colorable(g)
            rows.append({"property": "p2c", "holds": bool(verdict), "reason": verdict.reason})
        except (NotElementary, PreconditionFailed) as e:
            rows.append({"property": "p2c", "holds": False, "reason": str(e)})
    if flags["forcing_outer"]:
        forcing = all(is_forcing_face(g, f) for f in g.outer_faces)
        rows.append({"property": "forcing_outer", "holds": forcing,
                     "reason": None if forcing else "outer face not forcing"})
    if flags["daisy"] or flags["median"]:
        rows += _cube_checks(build_resonance_graph(g).graph, flags)
    return rows


def _cube_checks(h: nx.Graph, flags: dict) -> List[dict]:
    rows = []
    if not nx.is_connected(h):
        return [{"property": name, "holds": False, "reason": "graph is disconnected"}
                for name in ("daisy", "median") if flags[name]]
    if flags["daisy"]:
        verdict = is_daisy_cube(h)
        row = {"property": "daisy", "holds": bool(verdict)}
        row.update({"certificate": verdict.to_json()} if verdict else {"reason": verdict.reason})
        rows.append(row)
    if flags["median"]:
        verdict = is_median_graph(h)
        row = {"property": "median", "holds": bool(verdict)}
        if not verdict:
            row["witness"] = [str(v) for v in verdict.witness]
        rows.append(row)
    return rows


@cli.command()
@click.argument("source")
@click.option("--elementary", is_flag=True)
@click.option("--weakly-elementary", is_flag=True)
@click.option("--p2c", is_flag=True, help="peripherally 2-colorable")
@click.option("--forcing-outer", is_flag=True)
@click.option("--daisy", is_flag=True, help="R(G) is a daisy cube (the graph itself when it has no rotations)")
@click.option("--median", is_flag=True, help="R(G) is a median graph (the graph itself when it has no rotations)")
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def check(source: str, as_json: bool, **flags):
    """그래프의 구조적 성질 판정, 하나라도 성립하지 않으면 종료 코드 1"""
    document = load_document(source)
    plane_flags = ("elementary", "weakly_elementary", "p2c", "forcing_outer")
    if not any(flags.values()):
        flags = {name: document.rotations is not None or name not in plane_flags for name in flags}
    if document.rotations is None:
        if any(flags[name] for name in plane_flags):
            raise InputError(f"{document.name}: plane checks need 'rotations'")
        rows = _cube_checks(to_networkx(document), flags)
    else:
        rows = _plane_checks(to_plane_graph(document), flags)
    failed = [row for row in rows if not row["holds"]]
    summary = [f"{row['property']}: {'yes' if row['holds'] else 'no'}"
               + (f" ({row['reason']})" if not row["holds"] and row.get("reason") else "") for row in rows]
    emit(wrap_report([{"check": "properties", "graph": document.name, "properties": rows,
                       "status": "fail" if failed else "pass"}]), as_json, summary)
    if failed:
        sys.exit(EXIT_FAILED)


@cli.command()
@click.argument("source")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), help="also write R(G) as DOT")
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def resonance(source: str, dot_path: Optional[str], as_json: bool):
    """공명 그래프 R(G) 생성"""
    g = _plane(source)
    rg = build_resonance_graph(g)
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as f:
            f.write(resonance_to_dot(rg, g.name))
    payload = resonance_to_json(rg)
    payload["graph"] = g.name
    emit(payload, as_json, [f"R({g.name}): {len(rg.vertices)} vertices, {len(rg.edges)} edges, "
                            f"{'connected' if rg.is_connected() else 'disconnected'}"])


@cli.command("resonant-sets")
@click.argument("source")
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def resonant_sets(source: str, as_json: bool):
    """공명 집합과 극대/정규 여부 출력"""
    g = _plane(source)
    sets = enumerate_resonant_sets(g)
    rows = [{"faces": s.to_json(), "vertices": sorted(s.vertices(g)),
             "maximal": is_maximal_resonant(g, s, sets), "canonical": is_canonical_resonant(g, s, sets)}
            for s in sets]
    summary = [f"{row['faces']}" + (" maximal" if row["maximal"] else "") + (" canonical" if row["canonical"] else "")
               for row in rows]
    emit({"graph": g.name, "resonant_sets": rows}, as_json, summary or ["no resonant sets"])


@cli.command()
@click.argument("source")
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def mis(source: str, as_json: bool):
    """그래프의 극대 독립 집합 열거"""
    document = load_document(source)
    sets = enumerate_mis(to_networkx(document))
    emit({"graph": document.name, "count": len(sets), "mis": [s.to_json() for s in sets]}, as_json,
         [f"{len(sets)} maximal independent sets"] + [str(s.to_json()) for s in sets])


@cli.command("classify-tree")
@click.argument("source")
@handle_errors
def classify_tree_command(source: str):
    """트리 분류, 매개변수, 예측/실제 MIS 개수를 JSON 한 줄로 출력"""
    document = load_document(source)
    tree = to_networkx(document)
    tree_class = classify_tree(tree)
    actual = len(enumerate_mis(tree))
    click.echo(dump_json({"tree": document.name, "class": tree_class.family.value,
                          "params": list(tree_class.params), "mis_predicted": tree_class.mis_predicted,
                          "mis_actual": actual}, indent=None))
    if tree_class.mis_predicted != actual:
        sys.exit(EXIT_FAILED)


@cli.command()
@click.argument("suite")
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False), help="corpus directory (default: generated corpus)")
@click.option("--workers", type=int, default=None, help="parallel workers (default RESLAB_WORKERS)")
@click.option("--progress", is_flag=True, help="progress bars for the exhaustive sweeps")
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def verify(suite: str, corpus_dir: Optional[str], workers: Optional[int], progress: bool, as_json: bool):
    """검증 스위트 실행, 실패한 검사가 있으면 종료 코드 1"""
    stage_start = time.time()
    runner = VerificationRunner(corpus_dir, workers=workers, progress=progress)
    results = runner.run(suite)
    logger.info(f"verify {suite}: {len(results)} reports in {time.time() - stage_start:.2f}s")
    summary = [f"{r['status']:<18} {r['check']:<24} {r.get('graph', r.get('file', r.get('n', '')))}" for r in results]
    emit(wrap_report(results), as_json, summary)
    if any(r["status"] == "fail" for r in results):
        sys.exit(EXIT_FAILED)


@cli.command("export-dot")
@click.argument("source")
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@handle_errors
def export_dot(source: str, output: Optional[str]):
    """평면 그래프를 각 간선의 면 번호와 함께 DOT로 저장"""
    text = plane_to_dot(_plane(source))
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    cli()
