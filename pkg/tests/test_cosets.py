import numpy as np
import pytest

from dyerkit.cosets import (
    CosetTable,
    Exceeded,
    IncompatibleTableError,
    InfiniteAbelianizationError,
    derived_subgroup_coset_table,
    reidemeister_schreier,
    todd_coxeter,
)
from dyerkit.graph import validate_dyer
from dyerkit.presentation import GroupPresentation, build_presentation
from dyerkit.snf import AbelianInvariants, abelianize_snf

from tests.helpers import edge, triangle


def test_derived_subgroup_table_sizes(infinite_dihedral, klein):
    table = derived_subgroup_coset_table(build_presentation(edge(3)))
    assert len(table) == 2
    assert len(derived_subgroup_coset_table(build_presentation(klein))) == 4
    assert len(derived_subgroup_coset_table(build_presentation(infinite_dihedral))) == 4


def test_derived_subgroup_table_is_complete():
    for g in (edge(3), edge(2), triangle(5, 3, 2), triangle(4, 3, 2), edge(2, f=(3, 4))):
        p = build_presentation(g)
        table = derived_subgroup_coset_table(p)
        assert table.verify(p)
        assert len(table) == abelianize_snf(p).order


def test_derived_subgroup_table_rejects_infinite_abelianization(final_figure):
    with pytest.raises(InfiniteAbelianizationError):
        derived_subgroup_coset_table(build_presentation(final_figure))


def test_reidemeister_schreier_examples(infinite_dihedral):
    p = build_presentation(infinite_dihedral)
    subgroup = reidemeister_schreier(p, derived_subgroup_coset_table(p))
    assert abelianize_snf(subgroup) == AbelianInvariants((), 1)

    p = build_presentation(edge(3))
    subgroup = reidemeister_schreier(p, derived_subgroup_coset_table(p))
    assert abelianize_snf(subgroup) == AbelianInvariants((3,), 0)


def test_reidemeister_schreier_free_product_rank():
    # the commutator subgroup of Z/2 * Z/3 is free of rank 2
    p = build_presentation(validate_dyer({"a": 2, "b": 3}, []))
    subgroup = reidemeister_schreier(p, derived_subgroup_coset_table(p))
    assert abelianize_snf(subgroup) == AbelianInvariants((), 2)


def test_reidemeister_schreier_index_one():
    p = build_presentation(edge(2, f=(2, 3)))  # Z/6, commutator subgroup trivial
    trivial = todd_coxeter(p, 100, subgroup=[(("a", 1),), (("b", 1),)])
    assert len(trivial) == 1
    rewritten = reidemeister_schreier(p, trivial)
    assert rewritten.generators == ("a_0", "b_0")
    assert len(rewritten.relators) == len(p.relators)
    assert abelianize_snf(rewritten) == abelianize_snf(p)


def test_reidemeister_schreier_rejects_bad_tables():
    p = build_presentation(edge(3))
    broken = CosetTable(("a", "b"), np.array([[1, 0], [0, 1]]), ((), (("a", 1),)))
    with pytest.raises(IncompatibleTableError):
        reidemeister_schreier(p, broken)


def test_todd_coxeter_dihedral_orders():
    for m in range(2, 13):
        p = build_presentation(edge(m))
        table = todd_coxeter(p, 10_000)
        assert len(table) == 2 * m
        assert table.verify(p)


@pytest.mark.parametrize("labels, order", [((5, 3, 2), 120), ((4, 3, 2), 48), ((3, 3, 2), 24)])
def test_todd_coxeter_finite_coxeter(labels, order):
    p = build_presentation(triangle(*labels))
    table = todd_coxeter(p, 100_000)
    assert len(table) == order
    assert table.verify(p)


def test_todd_coxeter_exceeds_on_infinite_group():
    result = todd_coxeter(build_presentation(triangle(3, 3, 3)), 100_000)
    assert isinstance(result, Exceeded) and not result
    assert result.max_cosets == 100_000


def test_todd_coxeter_cap_and_argument_checks():
    p = build_presentation(edge(5))
    assert isinstance(todd_coxeter(p, 3), Exceeded)
    with pytest.raises(ValueError):
        todd_coxeter(p, 0)


def test_todd_coxeter_is_deterministic():
    p = build_presentation(triangle(4, 3, 2))
    first, second = todd_coxeter(p, 10_000), todd_coxeter(p, 10_000)
    assert np.array_equal(first.table, second.table)
    assert first.transversal == second.transversal


def test_todd_coxeter_cyclic_and_trivial_groups():
    assert len(todd_coxeter(build_presentation(validate_dyer({"a": 7}, [])), 100)) == 7
    trivial = GroupPresentation(("a",), ((("a", 1),),))
    table = todd_coxeter(trivial, 10)
    assert len(table) == 1 and table.transversal == ((),)
