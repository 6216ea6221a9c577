"""
Caminho mínimo entre dois vértices (Dijkstra em matriz de adjacência).

Vértices são 1-based; arestas ausentes valem +inf na matriz. O oráculo
independente enumera todos os caminhos simples com networkx.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from pydantic import ValidationError as PydanticValidationError

from ...core.exceptions import FixtureError, InputError, OracleScopeError
from ...core.models import CampaignConfig, GraphFixtureFile, HarnessSettings
from ...utils.logger import get_logger
from ...utils.validators import require, validate_int
from ..mt_models import CostMeter, Verdict
from .base import RelationContext, Subject, VariantRun, collect_relations, collect_variants, relation, variant

log = get_logger("shortest_path")

SUBJECT = "shortest-path"
INF = math.inf
ORACLE_MAX_VERTICES = 12

Edge = Tuple[int, int, int]


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: Tuple[Edge, ...]
    directed: bool = False
    labels: Optional[Tuple[str, ...]] = None

    def label(self, v: int) -> str:
        if self.labels and 1 <= v <= len(self.labels):
            return self.labels[v - 1]
        return str(v)

    def vertex(self, ref: Union[str, int]) -> int:
        """Resolve rótulo ('a') ou número ('3') para o vértice 1-based"""
        text = str(ref).strip()
        if self.labels and text in self.labels:
            return self.labels.index(text) + 1
        try:
            v = int(text)
        except ValueError:
            raise InputError(f"vértice desconhecido: {ref!r}")
        require(1 <= v <= self.n, f"vértice {v} fora de 1..{self.n}")
        return v

    def adjacency(self) -> List[List[float]]:
        G = [[INF] * (self.n + 1) for _ in range(self.n + 1)]
        for u, v, w in self.edges:
            G[u][v] = w
            if not self.directed:
                G[v][u] = w
        return G

    def describe(self, path: Sequence[int]) -> str:
        return "".join(self.label(v) for v in path) if self.labels else ",".join(map(str, path))


@dataclass(frozen=True)
class PathQuery:
    src: int
    dst: int
    graph: WeightedGraph


@dataclass(frozen=True)
class PathResult:
    path: Tuple[int, ...] = ()
    distance: Optional[int] = None

    @property
    def reachable(self) -> bool:
        return self.distance is not None


UNREACHABLE = PathResult()


def validate(query: PathQuery) -> None:
    require(isinstance(query, PathQuery), f"entrada de shortest-path inválida: {type(query).__name__}")
    g = query.graph
    require(validate_int(g.n, "n") >= 1, "grafo precisa de ao menos 1 vértice")
    seen = set()
    for edge in g.edges:
        require(len(edge) == 3, f"aresta malformada: {edge!r}")
        u, v, w = (validate_int(e, "aresta") for e in edge)
        require(1 <= u <= g.n and 1 <= v <= g.n, f"aresta ({u},{v}) fora de 1..{g.n}")
        require(u != v, f"laço no vértice {u}")
        require(w > 0, f"peso {w} da aresta ({u},{v}) deve ser positivo")
        key = (u, v) if g.directed else (min(u, v), max(u, v))
        require(key not in seen, f"aresta repetida ({u},{v})")
        seen.add(key)
    validate_int(query.src, "src")
    validate_int(query.dst, "dst")
    require(1 <= query.src <= g.n and 1 <= query.dst <= g.n, "origem/destino fora do grafo")
    require(query.src != query.dst, "origem e destino devem ser diferentes")


# -------------------------
# Variantes
# -------------------------
def _dijkstra(query: PathQuery, meter: CostMeter, keep_min: bool) -> PathResult:
    n = query.graph.n
    G = query.graph.adjacency()
    x, y = query.src, query.dst
    D = [INF] * (n + 1)
    P = [0] * (n + 1)
    visited = [False] * (n + 1)
    D[x] = 0

    while True:
        # extração: menor D entre os não visitados, empate pelo menor índice
        k = 0
        for v in range(1, n + 1):
            if not visited[v]:
                meter.tick()
                if k == 0 or D[v] < D[k]:
                    k = v
        if k == 0 or D[k] == INF:
            break
        visited[k] = True
        if k == y:
            break
        for v in range(1, n + 1):
            if visited[v]:
                continue
            meter.tick()
            if keep_min:
                # D[v] = min(D[v], D[k] + G[k][v])
                if D[k] + G[k][v] < D[v]:
                    D[v] = D[k] + G[k][v]
                    P[v] = k
            else:
                D[v] = D[k] + G[k][v]
                P[v] = k

    if D[y] == INF:
        return UNREACHABLE
    path = [y]
    while path[-1] != x:
        path.append(P[path[-1]])
    return PathResult(tuple(reversed(path)), int(D[y]))


@variant(SUBJECT, "correct", description="Dijkstra com relaxação por mínimo")
def dijkstra_correct(query: PathQuery, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    return VariantRun(_dijkstra(query, meter, keep_min=True))


@variant(SUBJECT, "mutant-relax", description="D[v] = D[k] + G[k][v] sem o mínimo")
def dijkstra_mutant_relax(query: PathQuery, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    return VariantRun(_dijkstra(query, meter, keep_min=False))


# -------------------------
# Oráculo
# -------------------------
def to_networkx(graph: WeightedGraph) -> nx.Graph:
    G = nx.DiGraph() if graph.directed else nx.Graph()
    G.add_nodes_from(range(1, graph.n + 1))
    G.add_weighted_edges_from(graph.edges)
    return G


def oracle_all_paths(query: PathQuery, max_vertices: int = ORACLE_MAX_VERTICES) -> PathResult:
    """Menor distância por enumeração de todos os caminhos simples"""
    if query.graph.n > max_vertices:
        raise OracleScopeError(f"oráculo limitado a {max_vertices} vértices (grafo tem {query.graph.n})")
    G = to_networkx(query.graph)
    best = None
    for path in nx.all_simple_paths(G, query.src, query.dst):
        candidate = (nx.path_weight(G, path, weight="weight"), len(path), tuple(path))
        if best is None or candidate < best:
            best = candidate
    if best is None:
        return UNREACHABLE
    return PathResult(best[2], int(best[0]))


# -------------------------
# Relações
# -------------------------
def _distance(ctx: RelationContext, src: int, dst: int) -> Optional[int]:
    query: PathQuery = ctx.source.input
    return ctx.run(PathQuery(src, dst, query.graph)).output.distance


def _weight(ctx: RelationContext, G: List[List[float]], u: int, v: int) -> float:
    ctx.derive.tick()
    return G[u][v]


def _intermediates(ctx: RelationContext, path: Tuple[int, ...]) -> List[int]:
    inner = list(path[1:-1])
    if len(inner) <= ctx.settings.split_exhaustive_max:
        return inner
    picked = ctx.rng.choice(len(inner), size=min(ctx.settings.split_sample, len(inner)), replace=False)
    return [inner[i] for i in sorted(int(i) for i in picked)]


def _guard(ctx: RelationContext, undirected_only: bool = False, min_inner: int = 0) -> Optional[Verdict]:
    query: PathQuery = ctx.source.input
    result: PathResult = ctx.source.output
    if undirected_only and query.graph.directed:
        return ctx.inapplicable("directed graph")
    if not result.reachable:
        return ctx.inapplicable("source reported no path")
    if len(result.path) - 2 < min_inner:
        return ctx.inapplicable(f"path has fewer than {min_inner} intermediate vertices")
    return None


@relation(SUBJECT, "edge-check", "Incorrect path or distance returned")
def mr_edge_check(ctx: RelationContext) -> Verdict:
    query: PathQuery = ctx.source.input
    result: PathResult = ctx.source.output
    guard = _guard(ctx)
    if guard:
        return guard

    path = result.path
    graph = query.graph
    if not ctx.expect(path[0] == query.src and path[-1] == query.dst,
                      f"path {graph.describe(path)} does not join {graph.label(query.src)} to {graph.label(query.dst)}"):
        return ctx.verdict()
    G = graph.adjacency()
    total = 0
    for u, v in zip(path, path[1:]):
        w = _weight(ctx, G, u, v)
        if not ctx.expect(w != INF, f"({graph.label(u)},{graph.label(v)}) is not an edge"):
            return ctx.verdict()
        total += w
    ctx.expect_equal(int(total), result.distance)
    return ctx.verdict()


@relation(SUBJECT, "reverse", "Minimum distances to unvisited vertices not correctly updated")
def mr_reverse(ctx: RelationContext) -> Verdict:
    guard = _guard(ctx, undirected_only=True)
    if guard:
        return guard
    query: PathQuery = ctx.source.input
    ctx.expect_equal(_distance(ctx, query.dst, query.src), ctx.source.output.distance)
    return ctx.verdict()


def _split(ctx: RelationContext, reversed_: bool) -> Verdict:
    guard = _guard(ctx, undirected_only=reversed_, min_inner=1)
    if guard:
        return guard
    query: PathQuery = ctx.source.input
    result: PathResult = ctx.source.output
    x, y = (query.dst, query.src) if reversed_ else (query.src, query.dst)
    for vi in _intermediates(ctx, result.path):
        first = _distance(ctx, x, vi)
        second = _distance(ctx, vi, y)
        if not ctx.expect(first is not None and second is not None,
                          f"follow-up reported no path through {query.graph.label(vi)}"):
            continue
        ctx.expect_equal(first + second, result.distance)
    return ctx.verdict()


@relation(SUBJECT, "split", "Minimum distances to unvisited vertices not correctly updated")
def mr_split(ctx: RelationContext) -> Verdict:
    return _split(ctx, reversed_=False)


@relation(SUBJECT, "split-reversed", "Minimum distances to unvisited vertices not correctly updated")
def mr_split_reversed(ctx: RelationContext) -> Verdict:
    return _split(ctx, reversed_=True)


def _trim(ctx: RelationContext, reversed_: bool) -> Verdict:
    # (v1, v1) não é consulta válida: trim exige ao menos dois intermediários
    guard = _guard(ctx, undirected_only=reversed_, min_inner=2)
    if guard:
        return guard
    query: PathQuery = ctx.source.input
    result: PathResult = ctx.source.output
    path = result.path
    G = query.graph.adjacency()
    head = _weight(ctx, G, path[0], path[1])
    tail = _weight(ctx, G, path[-2], path[-1])
    if not ctx.expect(head != INF and tail != INF, "path ends are not edges"):
        return ctx.verdict()
    v1, vk = path[1], path[-2]
    inner = _distance(ctx, vk, v1) if reversed_ else _distance(ctx, v1, vk)
    if not ctx.expect(inner is not None, "follow-up reported no path"):
        return ctx.verdict()
    ctx.expect_equal(int(inner + head + tail), result.distance)
    return ctx.verdict()


@relation(SUBJECT, "trim", "Minimum distances to unvisited vertices not correctly updated")
def mr_trim(ctx: RelationContext) -> Verdict:
    return _trim(ctx, reversed_=False)


@relation(SUBJECT, "trim-reversed", "Minimum distances to unvisited vertices not correctly updated")
def mr_trim_reversed(ctx: RelationContext) -> Verdict:
    return _trim(ctx, reversed_=True)


# -------------------------
# Entradas fonte
# -------------------------
def parse_fixture(document: dict) -> WeightedGraph:
    try:
        doc = GraphFixtureFile(**document)
    except (PydanticValidationError, TypeError) as e:
        raise FixtureError(f"Fixture de grafo inválida: {e}")
    if doc.labels is not None and len(doc.labels) != doc.n:
        raise FixtureError(f"Fixture de grafo inválida: {len(doc.labels)} rótulos para {doc.n} vértices")
    return WeightedGraph(
        n=doc.n,
        edges=tuple(tuple(e) for e in doc.edges),
        directed=doc.directed,
        labels=None if doc.labels is None else tuple(doc.labels),
    )


def random_graph(rng: np.random.Generator, n: int, directed: bool, density: float = 0.4) -> WeightedGraph:
    edges = []
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u == v or (not directed and v < u):
                continue
            if rng.random() < density:
                edges.append((u, v, int(rng.integers(1, 21))))
    return WeightedGraph(n=n, edges=tuple(edges), directed=directed)


def make_source(rng: np.random.Generator, fixture: Optional[WeightedGraph], config: CampaignConfig,
                settings: Optional[HarnessSettings] = None) -> PathQuery:
    graph = fixture
    if graph is None:
        n = config.size if config.size else int(rng.integers(2, 9))
        graph = random_graph(rng, max(n, 2), directed=bool(rng.random() < 0.5))

    if config.src is not None:
        src = graph.vertex(config.src)
    else:
        src = int(rng.integers(1, graph.n + 1))
    if config.dst is not None:
        dst = graph.vertex(config.dst)
    else:
        others = [v for v in range(1, graph.n + 1) if v != src]
        dst = others[int(rng.integers(len(others)))] if others else src
    return PathQuery(src, dst, graph)


SUBJECT_DEF = Subject(
    name=SUBJECT,
    variants=collect_variants(dijkstra_correct, dijkstra_mutant_relax),
    relations=collect_relations(mr_edge_check, mr_reverse, mr_split, mr_split_reversed, mr_trim, mr_trim_reversed),
    validate=validate,
    make_source=make_source,
    parse_fixture=parse_fixture,
    aliases=("dijkstra",),
)
