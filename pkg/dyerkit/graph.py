"""Labelled Dyer graphs and the purely graph-theoretic algorithms the classifiers consume.

A Dyer graph is a finite simplicial graph with vertex orders f (an integer >= 2 or
infinity) and edge labels m (integers >= 2), such that an edge labelled m != 2 joins two
vertices of order 2. Graphs are immutable; every operation here is a pure function whose
set-valued outputs are sorted lexicographically so results are diff-stable."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
import math
import re
from typing import Iterable, Mapping, Optional, Union

import networkx as nx

from dyerkit.logger import logger

INFINITY = math.inf

Order = Union[int, float]  # finite order >= 2, or INFINITY
Edge = tuple  # (u, v) with u < v

NAME_PATTERN = re.compile(r"^[A-Za-z0-9_]+$")
INTEGER_PATTERN = re.compile(r"[0-9]+")


class ValidationError(Exception):
    """Raised if vertex and edge data do not describe a Dyer graph. Carries every
    violation found, not just the first one."""

    def __init__(self, violations: list[Violation]) -> None:
        """ """
        self.violations = list(violations)
        details = "; ".join(str(violation) for violation in self.violations)
        super().__init__(f"Invalid Dyer graph: {details}")


class EmptySubsetError(Exception):
    """ """


class UnknownVertexError(Exception):
    """ """


class NotPrimeError(Exception):
    """ """


class PreconditionViolatedError(Exception):
    """ """


class ViolationKind(Enum):
    """ """

    EMPTY_VERTEX_SET = "EmptyVertexSet"
    INVALID_NAME = "InvalidName"
    INVALID_ORDER = "InvalidOrder"
    INVALID_LABEL = "InvalidLabel"
    UNKNOWN_VERTEX = "UnknownVertex"
    LOOP_EDGE = "LoopEdge"
    DUPLICATE_EDGE = "DuplicateEdge"
    DYER_CONDITION_VIOLATED = "DyerConditionViolated"


@dataclass(frozen=True)
class Violation:
    """One broken Dyer graph invariant, naming the offending vertex or edge."""

    kind: ViolationKind
    subject: tuple[str, ...] = ()

    def __str__(self) -> str:
        """ """
        return f"{self.kind.value}({', '.join(self.subject)})"


def edge_key(u: str, v: str) -> Edge:
    """ """
    return (u, v) if u < v else (v, u)


def is_finite(order: Order) -> bool:
    """ """
    return order != INFINITY


def is_prime(p: int) -> bool:
    """ """
    if not isinstance(p, int) or p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def prime_divisors(n: int) -> list[int]:
    """sorted prime divisors of a positive integer n"""
    primes, d = [], 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


def format_order(order: Order) -> str:
    """ """
    return "inf" if order == INFINITY else str(int(order))


def parse_integer(token: str) -> int:
    """unsigned ASCII decimal digits only"""
    if not INTEGER_PATTERN.fullmatch(token):
        raise ValueError(f"{token!r} is not an unsigned decimal integer")
    return int(token)


def parse_order(token: Union[str, int]) -> Order:
    """'inf' is the only spelling of infinity, anything else must be an integer >= 2"""
    if token == "inf":
        return INFINITY
    value = token if isinstance(token, int) else parse_integer(token)  # ValueError propagates
    if value < 2:
        raise ValueError(f"vertex order must be >= 2 or 'inf', got {token!r}")
    return value


@dataclass(frozen=True)
class DyerGraph:
    """Immutable Dyer graph. Build instances with validate_dyer(), which checks every
    invariant; the fields hold sorted (vertex, order) and (edge, label) pairs."""

    orders: tuple[tuple[str, Order], ...]
    labels: tuple[tuple[Edge, int], ...]

    def __repr__(self) -> str:
        """ """
        return f"DyerGraph({len(self.orders)} vertices, {len(self.labels)} edges)"

    def __len__(self) -> int:
        """ """
        return len(self.orders)

    def __contains__(self, vertex: object) -> bool:
        """ """
        return vertex in self._order_map

    @cached_property
    def _order_map(self) -> dict[str, Order]:
        """ """
        return dict(self.orders)

    @cached_property
    def _label_map(self) -> dict[Edge, int]:
        """ """
        return dict(self.labels)

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        """ """
        return tuple(v for v, _ in self.orders)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """ """
        return tuple(e for e, _ in self.labels)

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        """ """
        neighbours: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            neighbours[u].add(v)
            neighbours[v].add(u)
        return {v: frozenset(ns) for v, ns in neighbours.items()}

    def order(self, vertex: str) -> Order:
        """ """
        return self._order_map[vertex]

    def label(self, u: str, v: str) -> Optional[int]:
        """edge label of {u, v}, None if the pair is not an edge"""
        return self._label_map.get(edge_key(u, v))

    def has_edge(self, u: str, v: str) -> bool:
        """ """
        return edge_key(u, v) in self._label_map

    def neighbours(self, vertex: str) -> tuple[str, ...]:
        """ """
        return tuple(sorted(self.adjacency[vertex]))

    @property
    def is_coxeter(self) -> bool:
        """every vertex has order 2"""
        return all(order == 2 for _, order in self.orders)

    @property
    def is_graph_product(self) -> bool:
        """every edge label is 2 (vacuously true without edges)"""
        return all(label == 2 for _, label in self.labels)


def check_dyer(
    vertices: Mapping[str, Order], edges: Iterable[tuple[str, str, int]]
) -> list[Violation]:
    """Return the complete list of invariant violations of the given vertex orders and
    (u, v, label) edge triples. An empty list means validate_dyer() will succeed."""
    violations: list[Violation] = []

    if not vertices:
        violations.append(Violation(ViolationKind.EMPTY_VERTEX_SET))

    for name, order in vertices.items():
        if not isinstance(name, str) or not NAME_PATTERN.match(name):
            violations.append(Violation(ViolationKind.INVALID_NAME, (str(name),)))
        finite = isinstance(order, int) and not isinstance(order, bool) and order >= 2
        if not (finite or order == INFINITY):
            violations.append(Violation(ViolationKind.INVALID_ORDER, (str(name),)))

    seen: set[Edge] = set()
    for u, v, label in edges:
        if u == v:
            violations.append(Violation(ViolationKind.LOOP_EDGE, (u, v)))
            continue
        key = edge_key(u, v)
        unknown = [w for w in key if w not in vertices]
        if unknown:
            violations.append(Violation(ViolationKind.UNKNOWN_VERTEX, tuple(unknown)))
            continue
        if key in seen:
            violations.append(Violation(ViolationKind.DUPLICATE_EDGE, key))
            continue
        seen.add(key)
        if not isinstance(label, int) or isinstance(label, bool) or label < 2:
            violations.append(Violation(ViolationKind.INVALID_LABEL, key))
            continue
        if label != 2 and not (vertices[u] == 2 and vertices[v] == 2):
            violations.append(Violation(ViolationKind.DYER_CONDITION_VIOLATED, key))

    return violations


def validate_dyer(
    vertices: Mapping[str, Order], edges: Iterable[tuple[str, str, int]]
) -> DyerGraph:
    """Build a DyerGraph from vertex orders and (u, v, label) edge triples.

    Raises:
        ValidationError: carrying the complete list of violations."""
    edges = list(edges)
    violations = check_dyer(vertices, edges)
    if violations:
        error = ValidationError(violations)
        logger.error(str(error))
        raise error

    orders = tuple(sorted(vertices.items()))
    labels = tuple(sorted((edge_key(u, v), label) for u, v, label in edges))
    return DyerGraph(orders=orders, labels=labels)


def _restricted(g: DyerGraph, subset: Iterable[str], keep_edge=lambda _: True) -> DyerGraph:
    """trusted restriction, the result inherits validity from g"""
    subset = set(subset)
    orders = tuple((v, f) for v, f in g.orders if v in subset)
    labels = tuple(
        (e, m) for e, m in g.labels if e[0] in subset and e[1] in subset and keep_edge(m)
    )
    return DyerGraph(orders=orders, labels=labels)


def induced_subgraph(g: DyerGraph, subset: Iterable[str]) -> DyerGraph:
    """ """
    subset = set(subset)
    if not subset:
        message = "Can't induce a subgraph on an empty vertex set."
        logger.error(message)
        raise EmptySubsetError(message)
    unknown = sorted(subset - set(g.vertices))
    if unknown:
        message = f"Vertices {unknown} are not in the graph."
        logger.error(message)
        raise UnknownVertexError(message)
    return _restricted(g, subset)


def label_filtered(g: DyerGraph, p: int) -> DyerGraph:
    """Remove every edge whose label is divisible by the prime p."""
    if not is_prime(p):
        message = f"Can't filter edge labels by {p = }, it is not a prime."
        logger.error(message)
        raise NotPrimeError(message)
    return _restricted(g, g.vertices, keep_edge=lambda m: m % p != 0)


def relabel(g: DyerGraph, mapping: Mapping[str, str]) -> DyerGraph:
    """Rename vertices by an injective mapping; unmapped vertices keep their names."""
    rename = lambda v: mapping.get(v, v)
    vertices = {rename(v): f for v, f in g.orders}
    if len(vertices) != len(g.orders):
        message = f"Relabelling {dict(mapping)} is not injective on the vertex set."
        logger.error(message)
        raise ValueError(message)
    edges = [(rename(u), rename(v), m) for (u, v), m in g.labels]
    return validate_dyer(vertices, edges)


def high_order_subgraph(g: DyerGraph) -> Optional[DyerGraph]:
    """Induced subgraph on the vertices of order >= 3, None if there are none. All of
    its edges are labelled 2, so it presents a graph product of cyclic groups, and the
    Dyer group retracts onto it."""
    subset = [v for v, f in g.orders if f != 2]
    return _restricted(g, subset) if subset else None


def to_networkx(g: DyerGraph) -> nx.Graph:
    """networkx view with vertex attribute 'f' and edge attribute 'm', inserted in
    sorted order so traversals are deterministic"""
    graph = nx.Graph()
    for v, f in g.orders:
        graph.add_node(v, f=f)
    for (u, v), m in g.labels:
        graph.add_edge(u, v, m=m)
    return graph


def _sorted_components(components: Iterable[Iterable[str]]) -> list[tuple[str, ...]]:
    """ """
    return sorted(tuple(sorted(component)) for component in components)


def connected_components(g: DyerGraph) -> list[tuple[str, ...]]:
    """Vertex sets of the connected components, each sorted, ordered by least vertex."""
    return _sorted_components(nx.connected_components(to_networkx(g)))


def complement(g: DyerGraph) -> nx.Graph:
    """Unlabelled complement graph: {u, v} is an edge iff it is not an edge of g."""
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(
        (u, v) for u, v in combinations(g.vertices, 2) if not g.has_edge(u, v)
    )
    return graph


def is_complete(g: DyerGraph) -> bool:
    """ """
    n = len(g)
    return len(g.labels) == n * (n - 1) // 2


@dataclass(frozen=True)
class JoinDecomposition:
    """Partition of the vertex set into indecomposable factors, every cross-factor pair
    being an edge. A graph is indecomposable iff it has exactly one factor."""

    factors: tuple[tuple[str, ...], ...]

    @property
    def is_indecomposable(self) -> bool:
        """ """
        return len(self.factors) == 1

    def rejoin(self, g: DyerGraph) -> DyerGraph:
        """Reassemble the factors as a join: cross-factor pairs become edges (labels
        taken from g where g has them, else 2) and within-factor edges keep g's labels."""
        owner = {v: i for i, factor in enumerate(self.factors) for v in factor}
        edges = []
        for u, v in combinations(sorted(owner), 2):
            label = g.label(u, v)
            if owner[u] != owner[v]:
                edges.append((u, v, label if label is not None else 2))
            elif label is not None:
                edges.append((u, v, label))
        return DyerGraph(
            orders=tuple((v, g.order(v)) for v in sorted(owner)),
            labels=tuple(sorted((edge_key(u, v), m) for u, v, m in edges)),
        )

    def is_valid_for(self, g: DyerGraph) -> bool:
        """factors partition V(g), rejoining them gives back g, every factor is
        indecomposable"""
        flat = [v for factor in self.factors for v in factor]
        if sorted(flat) != list(g.vertices) or len(set(flat)) != len(flat):
            return False
        if self.rejoin(g) != g:
            return False
        return all(
            nx.is_connected(complement(_restricted(g, factor))) for factor in self.factors
        )


def join_decompose(g: DyerGraph) -> JoinDecomposition:
    """The join factors are the connected components of the complement graph."""
    factors = tuple(_sorted_components(nx.connected_components(complement(g))))
    decomposition = JoinDecomposition(factors=factors)
    assert decomposition.is_valid_for(g), f"invalid join decomposition {factors}"
    return decomposition


@dataclass(frozen=True)
class ChordalityCertificate:
    """Perfect elimination ordering if chordal, otherwise an induced chordless cycle of
    length >= 4 (listed in cyclic order)."""

    chordal: bool
    elimination_order: Optional[tuple[str, ...]] = None
    cycle: Optional[tuple[str, ...]] = None

    def __bool__(self) -> bool:
        """ """
        return self.chordal

    def verify(self, g: DyerGraph) -> bool:
        """ """
        if self.chordal:
            return self.elimination_order is not None and is_perfect_elimination_order(
                g, self.elimination_order
            )
        return self.cycle is not None and is_chordless_cycle(g, self.cycle)


def maximum_cardinality_search(g: DyerGraph) -> tuple[str, ...]:
    """Visit order of maximum-cardinality search, ties broken by least vertex name. The
    reverse of the visit order is a perfect elimination ordering iff g is chordal."""
    weight = {v: 0 for v in g.vertices}
    visited: list[str] = []
    unvisited = set(g.vertices)
    while unvisited:
        v = min(unvisited, key=lambda w: (-weight[w], w))
        unvisited.remove(v)
        visited.append(v)
        for w in g.adjacency[v] & unvisited:
            weight[w] += 1
    return tuple(visited)


def _first_elimination_failure(g: DyerGraph, order: tuple[str, ...]):
    """(v, x, y) with x, y non-adjacent neighbours of v eliminated after v, or None"""
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        later = sorted((w for w in g.adjacency[v] if position[w] > position[v]))
        for x, y in combinations(later, 2):
            if not g.has_edge(x, y):
                return v, x, y
    return None


def is_perfect_elimination_order(g: DyerGraph, order: tuple[str, ...]) -> bool:
    """ """
    if sorted(order) != list(g.vertices):
        return False
    return _first_elimination_failure(g, tuple(order)) is None


def is_chordless_cycle(g: DyerGraph, cycle: tuple[str, ...]) -> bool:
    """cycle of length >= 4 in g whose only edges are the consecutive pairs"""
    n = len(cycle)
    if n < 4 or len(set(cycle)) != n or any(v not in g for v in cycle):
        return False
    for i, j in combinations(range(n), 2):
        consecutive = j - i == 1 or (i == 0 and j == n - 1)
        if g.has_edge(cycle[i], cycle[j]) != consecutive:
            return False
    return True


def _chordless_cycle_through(g: DyerGraph, v: str, x: str, y: str, graph: nx.Graph):
    """Chordless cycle v-x-...-y-v avoiding the rest of v's closed neighbourhood."""
    blocked = (g.adjacency[v] | {v}) - {x, y}
    allowed = [w for w in g.vertices if w not in blocked]
    try:
        path = nx.shortest_path(graph.subgraph(allowed), x, y)
    except nx.NetworkXNoPath:
        return None
    return (v, *path)


def find_chordless_cycle(g: DyerGraph, hint=None) -> Optional[tuple[str, ...]]:
    """Induced cycle of length >= 4, trying the (v, x, y) hint first. Every chordless
    cycle passes through some v with two non-adjacent cycle neighbours x, y and avoids
    N(v) elsewhere, so the exhaustive scan finds one whenever g is not chordal."""
    graph = to_networkx(g)
    if hint is not None:
        cycle = _chordless_cycle_through(g, *hint, graph)
        if cycle is not None:
            return cycle
    for v in g.vertices:
        for x, y in combinations(g.neighbours(v), 2):
            if not g.has_edge(x, y):
                cycle = _chordless_cycle_through(g, v, x, y, graph)
                if cycle is not None:
                    return cycle
    return None


def is_chordal(g: DyerGraph) -> ChordalityCertificate:
    """Maximum-cardinality search plus elimination-ordering verification. The returned
    certificate is re-verified before it is handed out."""
    elimination_order = tuple(reversed(maximum_cardinality_search(g)))
    failure = _first_elimination_failure(g, elimination_order)
    if failure is None:
        certificate = ChordalityCertificate(True, elimination_order=elimination_order)
    else:
        cycle = find_chordless_cycle(g, hint=failure)
        certificate = ChordalityCertificate(False, cycle=cycle)
        logger.debug(f"Graph is not chordal, found chordless {cycle = }.")
    assert certificate.verify(g), f"chordality certificate failed to verify"
    return certificate


def maximal_cliques(g: DyerGraph) -> list[tuple[str, ...]]:
    """All maximal complete vertex sets (Bron-Kerbosch via networkx), each sorted, the
    list sorted lexicographically."""
    return sorted(tuple(sorted(clique)) for clique in nx.find_cliques(to_networkx(g)))


class WitnessKind(Enum):
    """ """

    GAMMA1 = "Gamma1"  # three isolated vertices
    GAMMA2 = "Gamma2"  # edge {x, y} plus isolated z


@dataclass(frozen=True)
class IndecomposableWitness:
    """Three vertices inducing Gamma1 (no edges) or Gamma2 (exactly the edge {x, y})."""

    kind: WitnessKind
    vertices: tuple[str, str, str]

    def verify(self, g: DyerGraph) -> bool:
        """ """
        x, y, z = self.vertices
        if len({x, y, z}) != 3 or any(v not in g for v in self.vertices):
            return False
        present = (g.has_edge(x, y), g.has_edge(x, z), g.has_edge(y, z))
        if self.kind is WitnessKind.GAMMA1:
            return present == (False, False, False)
        return present == (True, False, False)


def find_indecomposable_witness(g: DyerGraph) -> IndecomposableWitness:
    """Scan vertex triples in lexicographic order for an induced Gamma1 or Gamma2.

    Raises:
        PreconditionViolatedError: if g is a join or has fewer than 3 vertices."""
    if len(g) < 3 or not join_decompose(g).is_indecomposable:
        message = (
            f"Indecomposable witnesses exist only for indecomposable graphs with at "
            f"least 3 vertices, got {g} with join factors {join_decompose(g).factors}."
        )
        logger.error(message)
        raise PreconditionViolatedError(message)

    for x, y, z in combinations(g.vertices, 3):
        present = [pair for pair in ((x, y), (x, z), (y, z)) if g.has_edge(*pair)]
        if not present:
            return IndecomposableWitness(WitnessKind.GAMMA1, (x, y, z))
        if len(present) == 1:
            u, v = present[0]
            (w,) = {x, y, z} - {u, v}
            return IndecomposableWitness(WitnessKind.GAMMA2, (u, v, w))

    # unreachable for indecomposable graphs, kept as a loud failure
    message = f"No Gamma1 or Gamma2 triple found in indecomposable graph {g}."
    logger.error(message)
    raise AssertionError(message)
