"""Small named Dyer graphs shared by the tests."""

from itertools import permutations

from dyerkit.graph import DyerGraph, format_order, relabel, validate_dyer


def edge(m, f=(2, 2)):
    """two vertices a, b joined by an edge labelled m"""
    return validate_dyer({"a": f[0], "b": f[1]}, [("a", "b", m)])


def triangle(ab, bc, ac, f=(2, 2, 2)):
    """ """
    vertices = dict(zip("abc", f))
    return validate_dyer(vertices, [("a", "b", ab), ("b", "c", bc), ("a", "c", ac)])


def canonical_key(g: DyerGraph) -> tuple:
    """least relabelled form over all vertex permutations, for small isomorphism dedup"""
    names = g.vertices
    keys = []
    for image in permutations(names):
        h = relabel(g, dict(zip(names, image))) if image != names else g
        keys.append(
            (
                tuple((v, format_order(f)) for v, f in h.orders),
                h.labels,
            )
        )
    return min(keys)
