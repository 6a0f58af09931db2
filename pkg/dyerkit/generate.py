"""Random and exhaustive Dyer graph generation for property testing."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, Optional, Sequence, Union

import networkx as nx
import numpy as np

from dyerkit.dyg import DygDocument
from dyerkit.graph import DyerGraph, format_order, parse_order, validate_dyer
from dyerkit.logger import logger

# largest graphs in the networkx atlas of unlabelled graphs
ATLAS_MAX_VERTICES = 7

PoolEntry = Union[int, float, str]


def _orders(pool: Sequence[PoolEntry]) -> list:
    """ """
    return [parse_order(str(entry)) if isinstance(entry, str) else entry for entry in pool]


def _vertex_names(n: int) -> list[str]:
    """v0, v1, ... zero-padded so that lexicographic and numeric order agree"""
    width = len(str(n - 1))
    return [f"v{i:0{width}d}" for i in range(n)]


def _check_arguments(n: int, f_pool: Sequence, m_pool: Sequence, edge_prob: float) -> None:
    """ """
    problems = []
    if n < 1:
        problems.append(f"vertex count {n} < 1")
    if not f_pool or not m_pool:
        problems.append("empty order or label pool")
    if not 0 <= edge_prob <= 1:
        problems.append(f"{edge_prob = } outside [0, 1]")
    if problems:
        message = f"Can't generate a Dyer graph: {', '.join(problems)}."
        logger.error(message)
        raise ValueError(message)


def generate_document(
    n: int,
    seed: Optional[int] = None,
    f_pool: Sequence[PoolEntry] = (2, 3, "inf"),
    m_pool: Sequence[int] = (2, 3, 4, 5, 6),
    edge_prob: float = 0.5,
) -> DygDocument:
    """Draw vertex orders, then edges, then labels from a seeded generator. An edge whose
    label is not 2 resets its endpoints to order 2; every repair is logged and kept as a
    provenance comment."""
    _check_arguments(n, f_pool, m_pool, edge_prob)
    f_choices, m_choices = _orders(f_pool), [int(m) for m in m_pool]
    rng = np.random.default_rng(seed)

    names = _vertex_names(n)
    orders = {v: f_choices[rng.integers(len(f_choices))] for v in names}
    pairs = [pair for pair in combinations(names, 2) if rng.random() < edge_prob]
    edges = [(u, v, m_choices[rng.integers(len(m_choices))]) for u, v in pairs]

    pools = ",".join(format_order(f) for f in f_choices), ",".join(map(str, m_choices))
    comments = [
        f" generated by dyerkit gen: vertices={n} seed={seed} edge_prob={edge_prob} "
        f"f_pool={pools[0]} m_pool={pools[1]}"
    ]
    for u, v, m in edges:
        if m == 2:
            continue
        for w in (u, v):
            if orders[w] != 2:
                repair = f"repair: {w} order {format_order(orders[w])} -> 2 (edge {u} {v} label {m})"
                logger.warning(f"Random Dyer graph {repair}.")
                comments.append(f" {repair}")
                orders[w] = 2

    return DygDocument(validate_dyer(orders, edges), tuple(comments))


def gen_random(
    n: int,
    seed: Optional[int] = None,
    f_pool: Sequence[PoolEntry] = (2, 3, "inf"),
    m_pool: Sequence[int] = (2, 3, 4, 5, 6),
    edge_prob: float = 0.5,
) -> DyerGraph:
    """ """
    return generate_document(n, seed, f_pool, m_pool, edge_prob).graph


def iter_dyer_graphs(
    max_vertices: int,
    f_pool: Sequence[PoolEntry] = (2, 3, 4),
    m_pool: Sequence[int] = (2, 3, 4, 6),
    min_vertices: int = 1,
) -> Iterator[DyerGraph]:
    """Every Dyer graph with min_vertices..max_vertices vertices, orders from f_pool and
    labels from m_pool, over one representative per isomorphism class of the underlying
    unlabelled graph. Labellings are not reduced up to isomorphism."""
    if max_vertices > ATLAS_MAX_VERTICES:
        message = f"Exhaustive generation stops at {ATLAS_MAX_VERTICES} vertices, got {max_vertices}."
        logger.error(message)
        raise ValueError(message)
    f_choices, m_choices = _orders(f_pool), [int(m) for m in m_pool]

    for skeleton in nx.graph_atlas_g():
        n = skeleton.number_of_nodes()
        if not min_vertices <= n <= max_vertices:
            continue
        names = _vertex_names(n)
        pairs = sorted(tuple(sorted((names[a], names[b]))) for a, b in skeleton.edges)
        for orders in product(f_choices, repeat=n):
            f = dict(zip(names, orders))
            allowed = [
                m_choices if f[u] == 2 and f[v] == 2 else [m for m in m_choices if m == 2]
                for u, v in pairs
            ]
            for labels in product(*allowed):
                yield validate_dyer(f, [(u, v, m) for (u, v), m in zip(pairs, labels)])
