import numpy as np
import pytest

from dyerkit.cosets import todd_coxeter
from dyerkit.finite import FiniteGroupTable, derived_length_finite, derived_series, finite_group_table
from dyerkit.graph import validate_dyer
from dyerkit.presentation import GroupPresentation, build_presentation

from tests.helpers import edge, triangle


def table_of(g, max_cosets=100_000):
    return finite_group_table(todd_coxeter(build_presentation(g), max_cosets))


def test_s3_table():
    gt = table_of(edge(3))
    assert gt.order == 6
    assert not gt.is_abelian
    assert gt.check_group_axioms() and gt.check_associativity()
    assert dict(gt.generator_images).keys() == {"a", "b"}


def test_klein_table():
    gt = table_of(edge(2))
    assert gt.order == 4 and gt.is_abelian
    assert derived_length_finite(gt) == 1


def test_h3_table():
    gt = table_of(triangle(5, 3, 2))
    assert gt.order == 120
    assert gt.check_group_axioms() and gt.check_associativity()
    assert derived_series(gt) == [120, 60]
    assert derived_length_finite(gt) == 1


@pytest.mark.parametrize(
    "labels, series",
    [((4, 3, 2), [48, 12, 4, 1]), ((3, 3, 2), [24, 12, 4, 1])],
)
def test_derived_series_of_b3_and_a3(labels, series):
    gt = table_of(triangle(*labels))
    assert derived_series(gt) == series
    assert derived_length_finite(gt) == 3


def test_dihedral_derived_lengths():
    for m in range(2, 13):
        gt = table_of(edge(m))
        assert gt.order == 2 * m
        assert derived_length_finite(gt) == (1 if m == 2 else 2), m


def test_trivial_and_cyclic():
    trivial = finite_group_table(todd_coxeter(GroupPresentation(("a",), ((("a", 1),),)), 10))
    assert trivial.order == 1 and derived_length_finite(trivial) == 0
    cyclic = table_of(validate_dyer({"a": 9}, []))
    assert cyclic.is_abelian and derived_length_finite(cyclic) == 1


def test_product_table_entries():
    gt = table_of(edge(3))
    a, b = (element for _, element in gt.generator_images)
    assert gt.multiply(a, a) == 0
    assert gt.multiply(gt.multiply(a, b), gt.inverse[gt.multiply(a, b)]) == 0
    assert gt.commutator(a, a) == 0 and gt.conjugate(a, 0) == a


def test_closure_of_generators():
    gt = table_of(edge(4))
    a, _ = (element for _, element in gt.generator_images)
    assert gt.closure([a]).sum() == 2
    assert gt.closure(gt.generators).all()
    assert gt.closure([]).sum() == 1


def test_broken_tables_fail_checks():
    # not associative: a Latin square that is not a group table
    product = np.array(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    loop = FiniteGroupTable(product, (("a", 1),))
    assert loop.check_group_axioms()
    assert not loop.check_associativity()


def test_direct_products_take_the_maximum():
    # a join with all cross labels 2 presents the direct product of its factors
    factors = {
        "c6": (validate_dyer({"a": 6}, []), 1),
        "d4": (edge(4), 2),
        "d3": (edge(3), 2),
        "klein": (edge(2), 1),
        "c4": (validate_dyer({"a": 4}, []), 1),
    }
    cases = 0
    for left, (g, left_dl) in factors.items():
        for right, (h, right_dl) in factors.items():
            vertices = {f"x{v}": f for v, f in g.orders} | {f"y{v}": f for v, f in h.orders}
            edges = [(f"x{u}", f"x{v}", m) for (u, v), m in g.labels]
            edges += [(f"y{u}", f"y{v}", m) for (u, v), m in h.labels]
            edges += [(x, y, 2) for x in vertices if x[0] == "x" for y in vertices if y[0] == "y"]
            product = validate_dyer(vertices, edges)
            assert derived_length_finite(table_of(product)) == max(left_dl, right_dl)
            cases += 1
    assert cases >= 20
