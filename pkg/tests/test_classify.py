import pytest

from dyerkit.classify import (
    DerivedLengthClass,
    FailPair,
    FailPrime,
    InfiniteCoxeterClique,
    InfiniteOrderEdge,
    MissingTriangle,
    NotChordal,
    NotEvenError,
    NotGraphProductError,
    QuasiPerfectVerdict,
    VirtuallyFreeVerdict,
    abelianization_invariants,
    classify_even_quasi_perfect,
    component_decomposition,
    derived_length_lower_bound,
    even_quotient,
    graph_product_derived_length,
    is_even,
    is_quasi_perfect,
    is_virtually_free,
)
from dyerkit.generate import gen_random, iter_dyer_graphs
from dyerkit.graph import (
    INFINITY,
    check_dyer,
    connected_components,
    label_filtered,
    relabel,
    validate_dyer,
)

from tests.helpers import edge, triangle


def test_final_figure_is_quasi_perfect_and_virtually_free(final_figure):
    verdict = is_quasi_perfect(final_figure)
    assert verdict.result and verdict.failure is None
    assert verdict.recheck(final_figure)
    assert is_virtually_free(final_figure).result


def test_final_figure_even_quotient(final_figure):
    omega = even_quotient(final_figure).graph
    assert omega.vertices == ("a", "c", "e")
    assert [omega.order(v) for v in omega.vertices] == [2, 3, INFINITY]
    assert omega.labels == ((("a", "c"), 2), (("a", "e"), 2), (("c", "e"), 2))


def test_final_figure_abelianization(final_figure):
    assert abelianization_invariants(final_figure) == (2, 3, INFINITY)


def test_component_decomposition_representatives(final_figure):
    decomposition = component_decomposition(final_figure)
    assert [part.vertices for part in decomposition.parts] == [("a", "b", "d"), ("c",), ("e",)]
    assert [part.representative for part in decomposition.parts] == ["a", "c", "e"]
    assert decomposition.part_of("d") == 0


def test_even_quotient_gcd_and_missing_edges():
    # parts {a}, {b}, {c}; a-b carries labels 4 only, no edge touches c
    g = validate_dyer({"a": 2, "b": 2, "c": 2}, [("a", "b", 4)])
    quotient = even_quotient(g)
    assert quotient.label_between(0, 1) == 4
    assert quotient.label_between(0, 2) == INFINITY
    assert quotient.graph.labels == ((("a", "b"), 4),)


def test_even_quotient_takes_gcd_of_cross_labels():
    # a-b odd joins {a, b}; cross labels to c are 4 and 6, gcd 2
    g = triangle(3, 6, 4)
    assert even_quotient(g).graph.labels == ((("a", "c"), 2),)


def test_s3_fails_condition_i():
    verdict = is_quasi_perfect(edge(3))
    assert not verdict
    assert isinstance(verdict.failure, FailPrime)
    assert verdict.failure.prime == 3 and verdict.failure.vertices == ("a", "b")
    assert verdict.failure.components == (("a",), ("b",))
    assert verdict.recheck(edge(3))


def test_h3_is_quasi_perfect():
    assert is_quasi_perfect(triangle(5, 3, 2)).result


def test_dihedral_edges():
    for m in range(2, 13):
        verdict = is_quasi_perfect(edge(m))
        assert verdict.result == (m == 2), m


def test_free_product_fails_condition_ii(infinite_dihedral):
    verdict = is_quasi_perfect(infinite_dihedral)
    assert isinstance(verdict.failure, FailPair)
    assert (verdict.failure.first_vertices, verdict.failure.second_vertices) == (("a",), ("b",))
    assert verdict.recheck(infinite_dihedral)


def test_forged_certificates_fail_recheck(final_figure):
    forged = QuasiPerfectVerdict(False, FailPrime(0, ("a", "b", "d"), 2, (("a",), ("b", "d"))))
    assert not forged.recheck(final_figure)
    assert not VirtuallyFreeVerdict(False, NotChordal(("a", "b", "c", "d"))).recheck(final_figure)
    assert not VirtuallyFreeVerdict(False, InfiniteOrderEdge(("a", "z"))).recheck(final_figure)


def test_virtually_free_condition_1(free_infinite_pair):
    joined = edge(2, f=(INFINITY, INFINITY))
    verdict = is_virtually_free(joined)
    assert isinstance(verdict.failure, InfiniteOrderEdge)
    assert verdict.recheck(joined)
    assert is_virtually_free(free_infinite_pair).result


def test_virtually_free_condition_2():
    g = validate_dyer({"u": INFINITY, "v": 2, "w": 3}, [("u", "v", 2), ("u", "w", 2)])
    verdict = is_virtually_free(g)
    assert verdict.failure == MissingTriangle("u", ("v", "w"))
    assert verdict.recheck(g)


def test_virtually_free_condition_3(square):
    verdict = is_virtually_free(square)
    assert isinstance(verdict.failure, NotChordal)
    assert verdict.recheck(square)


def test_virtually_free_condition_4(affine_a2):
    verdict = is_virtually_free(affine_a2)
    assert isinstance(verdict.failure, InfiniteCoxeterClique)
    assert verdict.failure.clique == ("a", "b", "c")
    assert verdict.recheck(affine_a2)


def test_even_criterion():
    assert classify_even_quasi_perfect(triangle(2, 2, 2))
    assert not classify_even_quasi_perfect(triangle(2, 4, 2))
    assert not classify_even_quasi_perfect(validate_dyer({"a": 2, "b": 3}, []))
    with pytest.raises(NotEvenError):
        classify_even_quasi_perfect(edge(3))
    assert is_even(validate_dyer({"a": 5}, []))


@pytest.mark.parametrize(
    "g, expected",
    [
        (validate_dyer({"a": 7}, []), DerivedLengthClass.ONE),
        (edge(2, f=(3, INFINITY)), DerivedLengthClass.ONE),
        (validate_dyer({"a": 2, "b": 2}, []), DerivedLengthClass.TWO),
        (validate_dyer({"a": 2, "b": 3}, []), DerivedLengthClass.INFINITE),
        (validate_dyer({"a": 2, "b": 2, "c": 2}, []), DerivedLengthClass.INFINITE),
        (
            validate_dyer({"a": 2, "b": 2, "c": 5}, [("a", "c", 2), ("b", "c", 2)]),
            DerivedLengthClass.TWO,
        ),
    ],
)
def test_graph_product_trichotomy(g, expected):
    assert graph_product_derived_length(g) is expected


def test_graph_product_requires_labels_2():
    with pytest.raises(NotGraphProductError):
        graph_product_derived_length(edge(3))
    assert str(DerivedLengthClass.INFINITE) == "inf"


def test_derived_length_lower_bound(final_figure):
    assert derived_length_lower_bound(final_figure) == 1
    assert derived_length_lower_bound(edge(3)) == 1
    assert derived_length_lower_bound(edge(4)) == 2
    assert derived_length_lower_bound(validate_dyer({"a": 3, "b": 3}, [])) == INFINITY


def test_lower_bound_is_at_most_one_for_quasi_perfect_graphs():
    for g in iter_dyer_graphs(3, f_pool=(2, 3, INFINITY), m_pool=(2, 3, 4, 6)):
        if is_quasi_perfect(g).result:
            assert derived_length_lower_bound(g) <= 1


def test_verdicts_do_not_depend_on_vertex_names():
    for seed in range(50):
        g = gen_random(5, seed=seed)
        renamed = relabel(g, {v: f"x{4 - i}" for i, v in enumerate(g.vertices)})
        assert is_quasi_perfect(g).result == is_quasi_perfect(renamed).result
        assert is_virtually_free(g).result == is_virtually_free(renamed).result
        assert sorted(abelianization_invariants(g)) == sorted(abelianization_invariants(renamed))


def test_even_specialization_small():
    for g in iter_dyer_graphs(3):
        if is_even(g):
            assert classify_even_quasi_perfect(g) == is_quasi_perfect(g).result


def test_witnesses_recheck_on_random_graphs():
    for seed in range(200):
        g = gen_random(6, seed=seed)
        assert is_quasi_perfect(g).recheck(g)
        assert is_virtually_free(g).recheck(g)


def test_components_refine_by_label_parity():
    for seed in range(100):
        g = gen_random(1 + seed % 6, seed=seed)
        decomposition = component_decomposition(g)
        assert sorted(v for part in decomposition.parts for v in part.vertices) == list(g.vertices)
        for (u, v), m in g.labels:
            if decomposition.part_of(u) != decomposition.part_of(v):
                assert m % 2 == 0
        for part in decomposition.parts:
            # odd edges alone keep each part connected
            assert len(connected_components(label_filtered(part.subgraph, 2))) == 1


def _has_label_2_between_all_parts(g):
    parts = component_decomposition(g).parts
    return all(
        any(g.label(v, w) == 2 for v in first.vertices for w in second.vertices)
        for i, first in enumerate(parts)
        for second in parts[i + 1 :]
    )


def test_even_quotient_is_even_and_detects_condition_ii():
    for g in iter_dyer_graphs(4, f_pool=(2, 3), m_pool=(2, 3, 4, 6)):
        omega = even_quotient(g).graph
        assert is_even(omega)
        assert not check_dyer(dict(omega.orders), [(u, v, m) for (u, v), m in omega.labels])
        if _has_label_2_between_all_parts(g):
            assert classify_even_quasi_perfect(omega)


def test_gcd_of_cross_labels_can_hide_a_missing_label_2():
    # cross labels 4 and 6 have gcd 2, so the quotient is abelian while (ii) fails
    vertices = {v: 2 for v in "abcd"}
    edges = [("a", "b", 3), ("b", "c", 5), ("a", "c", 7), ("a", "d", 4), ("b", "d", 6), ("c", "d", 4)]
    g = validate_dyer(vertices, edges)
    assert len(component_decomposition(g)) == 2
    assert classify_even_quasi_perfect(even_quotient(g).graph)
    assert not _has_label_2_between_all_parts(g)
    assert isinstance(is_quasi_perfect(g).failure, FailPair)


def test_graph_product_class_does_not_depend_on_vertex_names():
    for seed in range(50):
        g = gen_random(5, seed=seed, m_pool=(2,))
        renamed = relabel(g, {v: f"x{4 - i}" for i, v in enumerate(g.vertices)})
        assert graph_product_derived_length(g) is graph_product_derived_length(renamed)
        assert derived_length_lower_bound(g) == derived_length_lower_bound(renamed)
