"""Recognition of finite Coxeter groups on complete Dyer graphs.

On a complete graph with every vertex of order 2 the Dyer group is a Coxeter group whose
Coxeter diagram keeps the edges labelled >= 3 (label-2 pairs commute and are dropped).
The group is finite iff every connected component of the diagram appears in the
catalogue A(n), B(n), D(n), E6, E7, E8, F4, H3, H4, I2(m). Matching is exact; no
floating-point bilinear form is involved."""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import Optional

import networkx as nx

from dyerkit.graph import DyerGraph, is_complete
from dyerkit.logger import logger

EXCEPTIONAL_ORDERS = {
    "E6": 51_840,
    "E7": 2_903_040,
    "E8": 696_729_600,
    "F4": 1_152,
    "H3": 120,
    "H4": 14_400,
}


class NotCoxeterError(Exception):
    """ """


class NotCompleteError(Exception):
    """ """


@dataclass(frozen=True)
class CoxeterComponent:
    """One irreducible finite factor: family letter, rank, diagram vertices (sorted) and
    the dihedral parameter m for family I2."""

    family: str
    rank: int
    vertices: tuple[str, ...]
    parameter: Optional[int] = None

    @property
    def tag(self) -> str:
        """ """
        if self.family == "I2":
            return f"I2({self.parameter})"
        return f"{self.family}{self.rank}"

    @property
    def order(self) -> int:
        """ """
        n = self.rank
        if self.family == "A":
            return math.factorial(n + 1)
        if self.family == "B":
            return 2**n * math.factorial(n)
        if self.family == "D":
            return 2 ** (n - 1) * math.factorial(n)
        if self.family == "I2":
            return 2 * self.parameter
        return EXCEPTIONAL_ORDERS[self.tag]


@dataclass(frozen=True)
class FiniteCoxeterType:
    """Finite type as a list of irreducible components, or NotFinite with a reason."""

    components: tuple[CoxeterComponent, ...] = ()
    reason: Optional[str] = None

    @property
    def is_finite(self) -> bool:
        """ """
        return self.reason is None

    def __bool__(self) -> bool:
        """ """
        return self.is_finite

    @property
    def tags(self) -> tuple[str, ...]:
        """ """
        return tuple(component.tag for component in self.components)

    @property
    def order(self) -> Optional[int]:
        """group order, None if the group is not finite"""
        if not self.is_finite:
            return None
        return math.prod(component.order for component in self.components)

    def __str__(self) -> str:
        """ """
        if not self.is_finite:
            return f"NotFinite({self.reason})"
        return " x ".join(self.tags)


def _not_finite(reason: str) -> FiniteCoxeterType:
    """ """
    logger.debug(f"Coxeter diagram is not of finite type: {reason}.")
    return FiniteCoxeterType(reason=reason)


def coxeter_diagram(g: DyerGraph) -> nx.Graph:
    """Diagram on all vertices of g keeping the edges with label >= 3 (attribute 'm')."""
    diagram = nx.Graph()
    diagram.add_nodes_from(g.vertices)
    diagram.add_edges_from((u, v, {"m": m}) for (u, v), m in g.labels if m >= 3)
    return diagram


def _classify_component(diagram: nx.Graph) -> tuple[Optional[CoxeterComponent], str]:
    """Match one connected diagram against the finite catalogue. Returns the component,
    or None and the reason it is not of finite type."""
    vertices = tuple(sorted(diagram.nodes))
    n = len(vertices)
    if n == 1:
        return CoxeterComponent("A", 1, vertices), ""
    if diagram.number_of_edges() != n - 1:
        return None, f"diagram on {list(vertices)} contains a cycle"

    labels = {frozenset(e): m for *e, m in diagram.edges(data="m")}
    if n == 2:
        (m,) = labels.values()
        if m == 3:
            return CoxeterComponent("A", 2, vertices), ""
        if m == 4:
            return CoxeterComponent("B", 2, vertices), ""
        return CoxeterComponent("I2", 2, vertices, parameter=m), ""

    heavy = [edge for edge, m in labels.items() if m >= 4]
    if any(m >= 6 for m in labels.values()):
        return None, f"label >= 6 in a diagram on {n} vertices"
    if len(heavy) > 1:
        return None, f"more than one label >= 4 on {list(vertices)}"

    degrees = dict(diagram.degree)
    leaves = {v for v, d in degrees.items() if d == 1}
    is_path = max(degrees.values()) <= 2

    if heavy:
        (edge,) = heavy
        m = labels[edge]
        if not is_path:
            return None, f"branched diagram with label {m} on {list(vertices)}"
        at_end = bool(edge & leaves)
        if m == 4 and at_end:
            return CoxeterComponent("B", n, vertices), ""
        if m == 4 and n == 4:
            return CoxeterComponent("F", 4, vertices), ""
        if m == 5 and at_end and n in (3, 4):
            return CoxeterComponent("H", n, vertices), ""
        return None, f"label {m} misplaced in a path on {list(vertices)}"

    if is_path:
        return CoxeterComponent("A", n, vertices), ""

    branches = [v for v, d in degrees.items() if d >= 3]
    if len(branches) != 1 or degrees[branches[0]] != 3:
        return None, f"diagram on {list(vertices)} branches more than once"
    arms_graph = diagram.subgraph(set(vertices) - set(branches))
    arms = sorted(len(arm) for arm in nx.connected_components(arms_graph))
    if arms[:2] == [1, 1]:
        return CoxeterComponent("D", n, vertices), ""
    if arms in ([1, 2, 2], [1, 2, 3], [1, 2, 4]):
        return CoxeterComponent("E", n, vertices), ""
    return None, f"branch arms {arms} on {list(vertices)} are not of type D or E"


def recognize_finite_coxeter(g: DyerGraph) -> FiniteCoxeterType:
    """Name the finite Coxeter type presented by a complete all-order-2 Dyer graph.

    Raises:
        NotCoxeterError: if some vertex has order other than 2.
        NotCompleteError: if g is not complete."""
    if not g.is_coxeter:
        message = f"Can't recognize a Coxeter type, {g} has vertices of order other than 2."
        logger.error(message)
        raise NotCoxeterError(message)
    if not is_complete(g):
        message = f"Can't recognize a Coxeter type, {g} is not complete."
        logger.error(message)
        raise NotCompleteError(message)

    diagram = coxeter_diagram(g)
    components = []
    for vertex_set in sorted(sorted(c) for c in nx.connected_components(diagram)):
        component, reason = _classify_component(diagram.subgraph(vertex_set))
        if component is None:
            return _not_finite(reason)
        components.append(component)
    return FiniteCoxeterType(components=tuple(components))
