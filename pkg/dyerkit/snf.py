"""Smith normal form of integer matrices and abelianizations of presented groups.

Matrices are stored sparsely as rows of {column: value}; relation matrices coming out of
subgroup rewriting have thousands of rows with a handful of entries each. Arithmetic is
on Python integers, so there is no overflow."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
import math
from typing import Iterable, Mapping, Optional, Sequence, Union

from dyerkit.graph import Order, is_finite
from dyerkit.logger import logger
from dyerkit.presentation import GroupPresentation

Row = Union[Mapping[int, int], Sequence[int]]


@dataclass(frozen=True)
class SmithForm:
    """Diagonal of the Smith form as (column, |entry|) pivots in elimination order.

    With track_columns, column_transform is the unimodular V (rows indexed by original
    columns) with A V = U^-1 D, so Z^n / rowspace(A) is coordinatised by x -> x V read
    modulo the pivot entry at each pivot column."""

    pivots: tuple[tuple[int, int], ...]
    ncols: int
    column_transform: Optional[tuple[tuple[int, ...], ...]] = None

    @property
    def diagonal(self) -> tuple[int, ...]:
        """ """
        return tuple(d for _, d in self.pivots)

    @property
    def rank(self) -> int:
        """ """
        return len(self.pivots)

    @property
    def free_rank(self) -> int:
        """ """
        return self.ncols - self.rank


def _set_entry(matrix, columns, r: int, c: int, value: int) -> None:
    """ """
    if value:
        matrix[r][c] = value
        columns[c].add(r)
    else:
        matrix[r].pop(c, None)
        columns[c].discard(r)


def _add_row(matrix, columns, target: int, source: int, k: int) -> None:
    """row[target] += k * row[source], dropping the target row once it is zero"""
    row = matrix[target]
    for c, value in list(matrix[source].items()):
        _set_entry(matrix, columns, target, c, row.get(c, 0) + k * value)
    if not row:
        del matrix[target]


def _smallest_entry(matrix) -> tuple[int, int]:
    """position of a nonzero entry of least absolute value, stopping at the first unit"""
    best = None
    for r, row in matrix.items():
        for c, value in row.items():
            size = abs(value)
            if size == 1:
                return r, c
            if best is None or size < best[0]:
                best = (size, r, c)
    return best[1], best[2]


def smith_normal_form(rows: Iterable[Row], ncols: int, track_columns: bool = False) -> SmithForm:
    """Diagonalise an integer matrix by unimodular row and column operations.

    Each round takes a nonzero entry of least absolute value as pivot, clears its column
    with row operations and then its row with column operations. A nonzero remainder
    in either step is strictly smaller than the pivot and becomes the next pivot."""
    matrix: dict[int, dict[int, int]] = {}
    columns: dict[int, set[int]] = defaultdict(set)
    for r, row in enumerate(rows):
        entries = row.items() if isinstance(row, Mapping) else enumerate(row)
        for c, value in entries:
            if not 0 <= c < ncols:
                raise ValueError(f"column {c} out of range for {ncols} columns")
            if value:
                matrix.setdefault(r, {})[c] = int(value)
                columns[c].add(r)

    transform = None
    if track_columns:
        transform = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    pivots: list[tuple[int, int]] = []
    while matrix:
        r, c = _smallest_entry(matrix)
        p = matrix[r][c]

        for s in sorted(columns[c] - {r}):
            _add_row(matrix, columns, s, r, -(matrix[s][c] // p))
        if len(columns[c]) > 1:
            continue

        row = matrix[r]
        for d in sorted(set(row) - {c}):
            q = row[d] // p
            _set_entry(matrix, columns, r, d, row[d] - q * p)
            if transform is not None and q:
                for t in transform:
                    t[d] -= q * t[c]
        if len(row) > 1:
            continue

        pivots.append((c, abs(p)))
        del matrix[r]
        columns[c].discard(r)

    logger.debug(f"Smith form of a matrix with {ncols} columns has rank {len(pivots)}.")
    frozen = tuple(tuple(t) for t in transform) if transform is not None else None
    return SmithForm(tuple(pivots), ncols, frozen)


def invariant_factors(values: Iterable[int]) -> tuple[int, ...]:
    """Regroup a diagonal into the divisibility chain d1 | d2 | ... of entries >= 2."""
    chain = sorted(abs(v) for v in values if abs(v) > 1)
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            g = math.gcd(chain[i], chain[j])
            chain[i], chain[j] = g, chain[i] * chain[j] // g
    return tuple(sorted(v for v in chain if v > 1))


@dataclass(frozen=True)
class AbelianInvariants:
    """Finitely generated abelian group Z/d1 x ... x Z/dk x Z^free_rank, d1 | ... | dk."""

    torsion: tuple[int, ...]
    free_rank: int

    @classmethod
    def from_smith_form(cls, form: SmithForm) -> AbelianInvariants:
        """ """
        return cls(invariant_factors(form.diagonal), form.free_rank)

    @classmethod
    def from_orders(cls, orders: Iterable[Order]) -> AbelianInvariants:
        """product of cyclic groups of the given orders, inf meaning Z"""
        orders = list(orders)
        finite = [int(f) for f in orders if is_finite(f)]
        return cls(invariant_factors(finite), len(orders) - len(finite))

    @property
    def is_trivial(self) -> bool:
        """ """
        return not self.torsion and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        """ """
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        """group order, None if infinite"""
        return math.prod(self.torsion) if self.is_finite else None

    def __str__(self) -> str:
        """ """
        factors = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            factors.append(f"Z^{self.free_rank}")
        return " x ".join(factors) or "1"


def relation_matrix(p: GroupPresentation) -> list[dict[int, int]]:
    """exponent-sum rows, one per relator, columns in generator order"""
    index = {x: i for i, x in enumerate(p.generators)}
    rows = []
    for relator in p.relators:
        row: dict[int, int] = defaultdict(int)
        for x, e in relator:
            row[index[x]] += e
        rows.append({c: v for c, v in row.items() if v})
    return rows


def abelianize_snf(p: GroupPresentation) -> AbelianInvariants:
    """Abelianization of a presented group from the Smith form of its exponent-sum
    matrix."""
    form = smith_normal_form(relation_matrix(p), len(p.generators))
    invariants = AbelianInvariants.from_smith_form(form)
    logger.debug(f"Abelianization of a {len(p.generators)}-generator group: {invariants}.")
    return invariants
