"""Literal group computations that confirm the graph classifiers: quasi-perfectness
through the commutator subgroup, derived-series prefixes and a per-graph summary."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from dyerkit.classify import abelianization_invariants, is_quasi_perfect
from dyerkit.cosets import (
    Exceeded,
    InfiniteAbelianizationError,
    derived_subgroup_coset_table,
    reidemeister_schreier,
    todd_coxeter,
)
from dyerkit.finite import derived_length_finite, finite_group_table
from dyerkit.graph import DyerGraph, is_finite
from dyerkit.logger import logger
from dyerkit.presentation import GroupPresentation, build_presentation
from dyerkit.snf import AbelianInvariants, abelianize_snf

INAPPLICABLE = "inapplicable: infinite abelianization"


def _require_finite_orders(g: DyerGraph) -> None:
    """ """
    infinite = [v for v, f in g.orders if not is_finite(f)]
    if infinite:
        message = (
            f"Commutator subgroup of the Dyer group of {g} has infinite index, "
            f"vertices {infinite} have infinite order."
        )
        logger.error(message)
        raise InfiniteAbelianizationError(message)


def derived_subgroup(p: GroupPresentation) -> tuple[int, GroupPresentation]:
    """Index and presentation of the commutator subgroup of a group with finite
    abelianization."""
    table = derived_subgroup_coset_table(p)
    return len(table), reidemeister_schreier(p, table)


def oracle_quasi_perfect(g: DyerGraph) -> bool:
    """True iff the commutator subgroup is perfect, decided by abelianizing its
    Reidemeister-Schreier presentation.

    Raises:
        InfiniteAbelianizationError: if some vertex has infinite order."""
    _require_finite_orders(g)
    _, subgroup = derived_subgroup(build_presentation(g))
    return abelianize_snf(subgroup).is_trivial


@dataclass(frozen=True)
class DerivedSeriesPrefix:
    """Successive quotients G^(i)/G^(i+1) for i = 0, 1, ... as far as they could be
    computed, with the reason the computation stopped: 'trivial' (a quotient is trivial,
    the derived length is exact), 'infinite' (an infinite quotient), 'index' (the next
    index exceeds the cap) or 'rounds'."""

    quotients: tuple[AbelianInvariants, ...]
    indices: tuple[int, ...]
    stopped: str

    @property
    def exact(self) -> Optional[int]:
        """derived length when the series was followed down to a trivial quotient"""
        return len(self.quotients) - 1 if self.stopped == "trivial" else None

    @property
    def lower_bound(self) -> int:
        """number of leading non-trivial quotients, a lower bound on the derived length"""
        return sum(1 for q in self.quotients if not q.is_trivial)


def derived_series_prefix(
    p: GroupPresentation, rounds: int = 3, max_index: int = 5000
) -> DerivedSeriesPrefix:
    """Abelianize, build the commutator subgroup table and rewrite, round after round."""
    quotients, indices = [], []
    current = p
    for _ in range(rounds):
        quotient = abelianize_snf(current)
        quotients.append(quotient)
        if quotient.is_trivial:
            return DerivedSeriesPrefix(tuple(quotients), tuple(indices), "trivial")
        if not quotient.is_finite:
            return DerivedSeriesPrefix(tuple(quotients), tuple(indices), "infinite")
        if quotient.order > max_index:
            logger.info(f"Stopping derived series at index {quotient.order} > {max_index}.")
            return DerivedSeriesPrefix(tuple(quotients), tuple(indices), "index")
        index, current = derived_subgroup(current)
        indices.append(index)
    return DerivedSeriesPrefix(tuple(quotients), tuple(indices), "rounds")


@dataclass(frozen=True)
class OracleSummary:
    """Everything the oracle learns about one graph. Fields beyond 'abelianization'
    stay None when inapplicable (an infinite-order vertex), skipped (the commutator subgroup
    index is above the limit) or not requested."""

    abelianization: AbelianInvariants
    closed_form_agrees: bool
    applicable: bool = True
    derived_index: Optional[int] = None
    derived_abelianization: Optional[AbelianInvariants] = None
    quasi_perfect: Optional[bool] = None
    agreement: Optional[bool] = None
    group_order: Optional[Union[int, Exceeded]] = None
    derived_length: Optional[int] = None
    series: Optional[DerivedSeriesPrefix] = field(default=None, compare=False)
    index_limit: Optional[int] = None

    @property
    def skipped(self) -> bool:
        """the commutator subgroup index exceeded index_limit, nothing was rewritten"""
        return self.index_limit is not None

    @property
    def note(self) -> Optional[str]:
        """ """
        if not self.applicable:
            return INAPPLICABLE
        if self.skipped:
            return (
                f"skipped: commutator subgroup index {self.abelianization.order} "
                f"exceeds max_index {self.index_limit}"
            )
        return None


def summarize(
    g: DyerGraph,
    enumerate_cosets: bool = False,
    max_cosets: int = 1_000_000,
    rounds: int = 3,
    max_index: int = 5000,
) -> OracleSummary:
    """Run the oracle on g and compare it to the classifiers. With enumerate_cosets, also
    run Todd-Coxeter over the trivial subgroup and, if it completes, the finite derived
    length."""
    p = build_presentation(g)
    abelianization = abelianize_snf(p)
    closed_form = AbelianInvariants.from_orders(abelianization_invariants(g))
    if abelianization != closed_form:
        logger.warning(f"Abelianization {abelianization} differs from closed form {closed_form}.")

    if not abelianization.is_finite:
        logger.info(f"Oracle {INAPPLICABLE}.")
        return OracleSummary(abelianization, abelianization == closed_form, applicable=False)

    group_order, derived_length = None, None
    if enumerate_cosets:
        table = todd_coxeter(p, max_cosets)
        if isinstance(table, Exceeded):
            group_order = table
        else:
            group_order = len(table)
            derived_length = derived_length_finite(finite_group_table(table))

    if abelianization.order > max_index:
        logger.info(f"Skipping commutator subgroup of index {abelianization.order} > {max_index}.")
        return OracleSummary(
            abelianization,
            abelianization == closed_form,
            group_order=group_order,
            derived_length=derived_length,
            series=DerivedSeriesPrefix((abelianization,), (), "index"),
            index_limit=max_index,
        )

    index, subgroup = derived_subgroup(p)
    derived_abelianization = abelianize_snf(subgroup)
    quasi_perfect = derived_abelianization.is_trivial
    agreement = quasi_perfect == is_quasi_perfect(g).result
    if not agreement:
        logger.warning(f"Oracle and classifier disagree on quasi-perfectness of {g}.")

    series = derived_series_prefix(p, rounds, max_index)
    return OracleSummary(
        abelianization,
        abelianization == closed_form,
        derived_index=index,
        derived_abelianization=derived_abelianization,
        quasi_perfect=quasi_perfect,
        agreement=agreement,
        group_order=group_order,
        derived_length=derived_length,
        series=series,
    )
