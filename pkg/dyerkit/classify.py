"""Theorem-backed decision procedures on Dyer graphs.

Each classifier reads only the labelled graph and returns a structured verdict; failing
verdicts carry a certificate (vertex names, primes, cycles) that recheck() validates
against a graph independently of how it was found."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import combinations
import math
from typing import Optional, Union

from dyerkit.coxeter import FiniteCoxeterType, recognize_finite_coxeter
from dyerkit.graph import (
    INFINITY,
    DyerGraph,
    Order,
    UnknownVertexError,
    connected_components,
    high_order_subgraph,
    induced_subgraph,
    is_chordal,
    is_chordless_cycle,
    is_complete,
    is_prime,
    join_decompose,
    label_filtered,
    maximal_cliques,
    prime_divisors,
    validate_dyer,
)
from dyerkit.logger import logger


class NotEvenError(Exception):
    """ """


class NotGraphProductError(Exception):
    """ """


class DerivedLengthClass(Enum):
    """The trichotomy of derived lengths of graph products of non-trivial cyclic groups."""

    ONE = 1
    TWO = 2
    INFINITE = INFINITY

    def __str__(self) -> str:
        """ """
        return "inf" if self is DerivedLengthClass.INFINITE else str(self.value)


@dataclass(frozen=True)
class ComponentPart:
    """A connected component V_i of the label-2-filtered graph, its induced subgraph in
    the original graph and its representative (least vertex)."""

    vertices: tuple[str, ...]
    subgraph: DyerGraph
    representative: str


@dataclass(frozen=True)
class ComponentDecomposition:
    """ """

    parts: tuple[ComponentPart, ...]

    def __len__(self) -> int:
        """ """
        return len(self.parts)

    def part_of(self, vertex: str) -> int:
        """index of the part containing vertex"""
        for index, part in enumerate(self.parts):
            if vertex in part.vertices:
                return index
        raise KeyError(vertex)


@dataclass(frozen=True)
class EvenQuotientGraph:
    """Even Dyer graph with one vertex per component part; w_i and w_j are joined by an
    edge labelled a_ij = gcd of the cross-edge labels, and not joined if there are no
    cross edges (a_ij = inf)."""

    graph: DyerGraph
    cross_labels: tuple[tuple[tuple[int, int], Order], ...]

    def label_between(self, i: int, j: int) -> Order:
        """ """
        return dict(self.cross_labels)[(min(i, j), max(i, j))]


@dataclass(frozen=True)
class FailPrime:
    """Condition (i) fails: the part's subgraph falls apart once edges with labels
    divisible by the prime are removed. 'components' is the disconnection."""

    part: int
    vertices: tuple[str, ...]
    prime: int
    components: tuple[tuple[str, ...], ...]

    kind = "prime"


@dataclass(frozen=True)
class FailPair:
    """Condition (ii) fails: no label-2 edge runs between the two parts."""

    first: int
    second: int
    first_vertices: tuple[str, ...]
    second_vertices: tuple[str, ...]

    kind = "pair"


@dataclass(frozen=True)
class QuasiPerfectVerdict:
    """ """

    result: bool
    failure: Optional[Union[FailPrime, FailPair]] = None

    def __bool__(self) -> bool:
        """ """
        return self.result

    def recheck(self, g: DyerGraph) -> bool:
        """Validate the verdict and its certificate against g from scratch."""
        if self.result != (self.failure is None):
            return False
        parts = [tuple(c) for c in connected_components(label_filtered(g, 2))]
        if isinstance(self.failure, FailPrime):
            failure = self.failure
            if failure.vertices not in parts or not is_prime(failure.prime):
                return False
            delta = label_filtered(induced_subgraph(g, failure.vertices), failure.prime)
            components = connected_components(delta)
            return len(components) >= 2 and tuple(components) == failure.components
        if isinstance(self.failure, FailPair):
            failure = self.failure
            if failure.first_vertices not in parts or failure.second_vertices not in parts:
                return False
            return all(
                g.label(v, w) != 2
                for v in failure.first_vertices
                for w in failure.second_vertices
            )
        return is_quasi_perfect(g).result


@dataclass(frozen=True)
class InfiniteOrderEdge:
    """ """

    vertices: tuple[str, str]

    kind = "infinite_order_edge"


@dataclass(frozen=True)
class MissingTriangle:
    """An order-inf apex u joined to finite-order v and w, which are not adjacent."""

    apex: str
    pair: tuple[str, str]

    kind = "missing_triangle"


@dataclass(frozen=True)
class NotChordal:
    """ """

    cycle: tuple[str, ...]

    kind = "not_chordal"


@dataclass(frozen=True)
class InfiniteCoxeterClique:
    """ """

    clique: tuple[str, ...]
    reason: str

    kind = "infinite_coxeter_clique"


VirtuallyFreeFailure = Union[InfiniteOrderEdge, MissingTriangle, NotChordal, InfiniteCoxeterClique]


@dataclass(frozen=True)
class VirtuallyFreeVerdict:
    """ """

    result: bool
    failure: Optional[VirtuallyFreeFailure] = None

    def __bool__(self) -> bool:
        """ """
        return self.result

    def recheck(self, g: DyerGraph) -> bool:
        """Validate the verdict and its certificate against g from scratch."""
        if self.result != (self.failure is None):
            return False
        failure = self.failure
        if failure is None:
            return is_virtually_free(g).result
        try:
            if isinstance(failure, InfiniteOrderEdge):
                v, w = failure.vertices
                return g.order(v) == g.order(w) == INFINITY and g.has_edge(v, w)
            if isinstance(failure, MissingTriangle):
                u, (v, w) = failure.apex, failure.pair
                return (
                    g.order(u) == INFINITY
                    and g.order(v) != INFINITY
                    and g.order(w) != INFINITY
                    and v != w
                    and g.has_edge(u, v)
                    and g.has_edge(u, w)
                    and not g.has_edge(v, w)
                )
            if isinstance(failure, NotChordal):
                return is_chordless_cycle(g, failure.cycle)
            clique = induced_subgraph(g, failure.clique)
            return (
                clique.is_coxeter
                and is_complete(clique)
                and not recognize_finite_coxeter(clique).is_finite
            )
        except (KeyError, UnknownVertexError):  # certificate names an unknown vertex
            return False


def is_even(g: DyerGraph) -> bool:
    """ """
    return all(m % 2 == 0 for _, m in g.labels)


def classify_even_quasi_perfect(g: DyerGraph) -> bool:
    """An even Dyer group is quasi-perfect iff the graph is complete and every edge label
    is 2 (the group is then abelian).

    Raises:
        NotEvenError: if some edge label is odd."""
    if not is_even(g):
        message = f"Can't apply the even criterion, {g} has odd edge labels."
        logger.error(message)
        raise NotEvenError(message)
    return is_complete(g) and g.is_graph_product


def graph_product_derived_length(g: DyerGraph) -> DerivedLengthClass:
    """Derived-length class of a graph product of cyclic groups (all edge labels 2).

    Join factors are classified separately and the maximum is taken: a single vertex is
    cyclic (1), two non-adjacent vertices of order 2 give the infinite dihedral group
    (2), any other indecomposable factor has infinite derived length.

    Raises:
        NotGraphProductError: if some edge label differs from 2."""
    if not g.is_graph_product:
        message = f"Can't classify {g} as a graph product, some edge label is not 2."
        logger.error(message)
        raise NotGraphProductError(message)

    classes = []
    for factor in join_decompose(g).factors:
        if len(factor) == 1:
            classes.append(DerivedLengthClass.ONE)
        elif len(factor) == 2 and all(g.order(v) == 2 for v in factor):
            classes.append(DerivedLengthClass.TWO)
        else:
            classes.append(DerivedLengthClass.INFINITE)
    return max(classes, key=lambda c: c.value)


def component_decomposition(g: DyerGraph) -> ComponentDecomposition:
    """Split g along the connected components of its label-2-filtered graph."""
    parts = []
    for vertices in connected_components(label_filtered(g, 2)):
        subgraph = induced_subgraph(g, vertices)
        if len(vertices) >= 2:
            # odd-labelled edges force order 2 at both ends
            assert subgraph.is_coxeter, f"multi-vertex part {vertices} has order != 2"
        parts.append(ComponentPart(vertices, subgraph, representative=vertices[0]))
    return ComponentDecomposition(parts=tuple(parts))


def _cross_labels(g: DyerGraph, decomposition: ComponentDecomposition) -> dict:
    """key: (i, j) with i < j, value: list of labels of edges between parts i and j"""
    cross = {pair: [] for pair in combinations(range(len(decomposition)), 2)}
    for (u, v), m in g.labels:
        i, j = decomposition.part_of(u), decomposition.part_of(v)
        if i != j:
            cross[(min(i, j), max(i, j))].append(m)
    return cross


def even_quotient(g: DyerGraph) -> EvenQuotientGraph:
    """Collapse every component part to its representative; gcd over an empty set of
    cross edges is inf, which means no edge."""
    decomposition = component_decomposition(g)
    representatives = [part.representative for part in decomposition.parts]

    cross_labels, edges = [], []
    for (i, j), labels in _cross_labels(g, decomposition).items():
        a = reduce(math.gcd, labels) if labels else INFINITY
        cross_labels.append(((i, j), a))
        if a != INFINITY:
            edges.append((representatives[i], representatives[j], a))

    vertices = {w: g.order(w) for w in representatives}
    quotient = EvenQuotientGraph(validate_dyer(vertices, edges), tuple(cross_labels))
    assert is_even(quotient.graph), "even quotient has an odd edge label"
    return quotient


def is_quasi_perfect(g: DyerGraph) -> QuasiPerfectVerdict:
    """Quasi-perfectness from the graph.

    (i) every part's subgraph stays connected after removing the edges whose labels are
        divisible by p, for every prime p (only primes dividing a label of the part can
        disconnect it);
    (ii) every two parts are joined by at least one edge labelled exactly 2.

    The first failure in part order, primes ascending, then pairs in lexicographic order
    is returned as certificate."""
    decomposition = component_decomposition(g)

    for index, part in enumerate(decomposition.parts):
        delta = part.subgraph
        assert len(connected_components(label_filtered(delta, 2))) == 1
        primes = sorted({p for _, m in delta.labels for p in prime_divisors(m)})
        for p in primes:
            components = connected_components(label_filtered(delta, p))
            if len(components) > 1:
                failure = FailPrime(index, part.vertices, p, tuple(components))
                logger.debug(f"Quasi-perfectness fails: {failure}.")
                return QuasiPerfectVerdict(False, failure)

    for (i, j), labels in _cross_labels(g, decomposition).items():
        if 2 not in labels:
            first, second = decomposition.parts[i], decomposition.parts[j]
            failure = FailPair(i, j, first.vertices, second.vertices)
            logger.debug(f"Quasi-perfectness fails: {failure}.")
            return QuasiPerfectVerdict(False, failure)

    return QuasiPerfectVerdict(True)


def abelianization_invariants(g: DyerGraph) -> tuple[Order, ...]:
    """Orders f(w_i) of the part representatives, in part order: the abelianization is
    the product of the cyclic groups Z/f(w_i) (Z where f(w_i) is inf)."""
    return tuple(g.order(part.representative) for part in component_decomposition(g).parts)


def is_virtually_free(g: DyerGraph) -> VirtuallyFreeVerdict:
    """Virtual freeness from the graph, checking in order: (1) no edge joins two
    vertices of infinite order; (2) finite-order neighbours of an infinite-order vertex
    are adjacent; (3) chordality; (4) every maximal clique of order-2 vertices presents
    a finite Coxeter group."""
    infinite = [v for v in g.vertices if g.order(v) == INFINITY]

    for v, w in combinations(infinite, 2):
        if g.has_edge(v, w):
            return VirtuallyFreeVerdict(False, InfiniteOrderEdge((v, w)))

    for u in infinite:
        finite_neighbours = [v for v in g.neighbours(u) if g.order(v) != INFINITY]
        for v, w in combinations(finite_neighbours, 2):
            if not g.has_edge(v, w):
                return VirtuallyFreeVerdict(False, MissingTriangle(u, (v, w)))

    chordality = is_chordal(g)
    if not chordality:
        return VirtuallyFreeVerdict(False, NotChordal(chordality.cycle))

    involutions = [v for v in g.vertices if g.order(v) == 2]
    if involutions:
        for clique in maximal_cliques(induced_subgraph(g, involutions)):
            coxeter_type: FiniteCoxeterType = recognize_finite_coxeter(
                induced_subgraph(g, clique)
            )
            if not coxeter_type:
                failure = InfiniteCoxeterClique(clique, coxeter_type.reason)
                return VirtuallyFreeVerdict(False, failure)

    return VirtuallyFreeVerdict(True)


def derived_length_lower_bound(g: DyerGraph) -> Order:
    """Lower bound on the derived length of the Dyer group read off two of its
    epimorphic images: the retract onto the vertices of order >= 3 (a graph product) and
    the even quotient. The group is never trivial, so the bound is at least 1."""
    bound: Order = 1

    high = high_order_subgraph(g)
    if high is not None:
        bound = max(bound, graph_product_derived_length(high).value)

    omega = even_quotient(g).graph
    if omega.is_graph_product:
        bound = max(bound, graph_product_derived_length(omega).value)
    else:
        bound = max(bound, 2)  # even and some label >= 4, so not quasi-perfect

    return bound
