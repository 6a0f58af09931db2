"""Coset tables: Todd-Coxeter enumeration, the derived-subgroup table built from the
abelianization, and Reidemeister-Schreier rewriting of subgroup presentations.

A coset table records the right action of each generator on the cosets of a subgroup,
coset 0 being the subgroup itself, together with a prefix-closed transversal of
representative words (a Schreier transversal)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence, Union

import numpy as np

from dyerkit.logger import logger
from dyerkit.presentation import GroupPresentation, Word
from dyerkit.snf import relation_matrix, smith_normal_form


class InfiniteAbelianizationError(Exception):
    """ """


class IncompatibleTableError(Exception):
    """ """


class CosetLimitExceeded(Exception):
    """Raised inside the enumerator when the coset cap is reached."""


@dataclass(frozen=True, eq=False)
class CosetTable:
    """ """

    generators: tuple[str, ...]
    table: np.ndarray  # shape (cosets, generators), image of each coset
    transversal: tuple[Word, ...]

    def __len__(self) -> int:
        """ """
        return self.table.shape[0]

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """action of the inverse generators"""
        inverse = np.empty_like(self.table)
        cosets = np.arange(len(self))
        for i in range(len(self.generators)):
            inverse[self.table[:, i], i] = cosets
        return inverse

    @cached_property
    def _index(self) -> dict[str, int]:
        """ """
        return {x: i for i, x in enumerate(self.generators)}

    def trace(self, coset: int, word: Word) -> int:
        """coset reached from 'coset' by reading word left to right"""
        for x, e in word:
            i = self._index[x]
            coset = int(self.table[coset, i] if e == 1 else self.inverse_table[coset, i])
        return coset

    def is_permutation_table(self) -> bool:
        """every generator acts as a permutation of the cosets"""
        n = len(self)
        if self.table.ndim != 2 or self.table.shape[1] != len(self.generators):
            return False
        if n == 0 or self.table.min() < 0 or self.table.max() >= n:
            return False
        return all(len(np.unique(self.table[:, i])) == n for i in range(self.table.shape[1]))

    def fixes_relators(self, p: GroupPresentation) -> bool:
        """every relator traces every coset back to itself"""
        cosets = np.arange(len(self))
        for relator in p.relators:
            current = cosets
            for x, e in relator:
                i = self._index[x]
                current = self.table[current, i] if e == 1 else self.inverse_table[current, i]
            if not np.array_equal(current, cosets):
                return False
        return True

    def is_schreier_transversal(self) -> bool:
        """transversal is prefix-closed and word c leads from coset 0 to coset c"""
        if len(self.transversal) != len(self) or self.transversal[0] != ():
            return False
        words = {word: c for c, word in enumerate(self.transversal)}
        return all(
            self.trace(0, word) == c and word[:-1] in words
            for c, word in enumerate(self.transversal)
        )

    def verify(self, p: GroupPresentation) -> bool:
        """complete, relator-compatible, with a valid Schreier transversal"""
        if tuple(p.generators) != self.generators or not self.is_permutation_table():
            return False
        return self.fixes_relators(p) and self.is_schreier_transversal()


def _standardize(generators: Sequence[str], rows: Mapping[int, list[int]]) -> CosetTable:
    """Renumber cosets in breadth-first order from coset 0, following the generators in
    their given order, and record the breadth-first transversal. rows[c][i] is the image
    of coset c under generator i."""
    order, transversal = [0], [()]
    number = {0: 0}
    for coset in order:
        for i, x in enumerate(generators):
            image = rows[coset][i]
            if image not in number:
                number[image] = len(order)
                order.append(image)
                transversal.append(transversal[number[coset]] + ((x, 1),))
    table = np.array([[number[rows[c][i]] for i in range(len(generators))] for c in order])
    return CosetTable(tuple(generators), table.reshape(len(order), len(generators)), tuple(transversal))


def derived_subgroup_coset_table(p: GroupPresentation) -> CosetTable:
    """Coset table of the commutator subgroup without enumeration: its cosets are the
    elements of the (finite) abelianization, and each generator translates by its image.

    Raises:
        InfiniteAbelianizationError: if the abelianization is infinite."""
    k = len(p.generators)
    form = smith_normal_form(relation_matrix(p), k, track_columns=True)
    if form.free_rank:
        message = (
            f"Commutator subgroup has infinite index: the abelianization has free rank "
            f"{form.free_rank}."
        )
        logger.error(message)
        raise InfiniteAbelianizationError(message)

    moduli = [(c, d) for c, d in form.pivots if d > 1]
    V = form.column_transform
    images = [tuple(V[j][c] % d for c, d in moduli) for j in range(k)]

    elements = [tuple(0 for _ in moduli)]
    number = {elements[0]: 0}
    rows = []
    for element in elements:  # grows while iterating, breadth first
        row = []
        for image in images:
            target = tuple((a + b) % d for a, b, (_, d) in zip(element, image, moduli))
            if target not in number:
                number[target] = len(elements)
                elements.append(target)
            row.append(number[target])
        rows.append(row)

    table = _standardize(p.generators, rows)
    logger.debug(f"Commutator subgroup has index {len(table)}.")
    return table


class _Enumerator:
    """Relator-tracing (HLT) Todd-Coxeter enumeration with coincidence processing.

    Columns are 2i for generator i and 2i + 1 for its inverse; -1 marks an undefined
    entry. 'parent' is a union-find forest over cosets, live cosets are their own root."""

    def __init__(self, p: GroupPresentation, max_cosets: int) -> None:
        """ """
        index = {x: i for i, x in enumerate(p.generators)}
        self.ncols = 2 * len(p.generators)
        self.relators = [[2 * index[x] + (e == -1) for x, e in r] for r in p.relators]
        self.max_cosets = max_cosets
        self.rows: list[list[int]] = [[-1] * self.ncols]
        self.parent: list[int] = [0]

    def rep(self, c: int) -> int:
        """ """
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> None:
        """ """
        if len(self.rows) >= self.max_cosets:
            raise CosetLimitExceeded
        new = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.parent.append(new)
        self.rows[c][x] = new
        self.rows[new][x ^ 1] = c

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        """ """
        k, l = self.rep(k), self.rep(l)
        if k != l:
            k, l = min(k, l), max(k, l)
            self.parent[l] = k
            queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        """identify cosets a and b and every consequence"""
        rows, queue = self.rows, []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(self.ncols):
                delta = rows[gamma][x]
                if delta < 0:
                    continue
                rows[delta][x ^ 1] = -1
                mu, nu = self.rep(gamma), self.rep(delta)
                if rows[mu][x] >= 0:
                    self.merge(nu, rows[mu][x], queue)
                elif rows[nu][x ^ 1] >= 0:
                    self.merge(mu, rows[nu][x ^ 1], queue)
                else:
                    rows[mu][x], rows[nu][x ^ 1] = nu, mu

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        """trace word from alpha in both directions, defining cosets until it closes"""
        rows = self.rows
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and rows[f][word[i]] >= 0:
                f = rows[f][word[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and rows[b][word[j] ^ 1] >= 0:
                b = rows[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][word[i]], rows[b][word[i] ^ 1] = b, f
                return
            self.define(f, word[i])

    def run(self, subgroup: Sequence[list[int]] = ()) -> None:
        """ """
        for word in subgroup:
            self.scan_and_fill(0, word)
        alpha = 0
        while alpha < len(self.rows):
            for relator in self.relators:
                if self.parent[alpha] != alpha:
                    break
                self.scan_and_fill(alpha, relator)
            if self.parent[alpha] == alpha:
                for x in range(self.ncols):
                    if self.rows[alpha][x] < 0:
                        self.define(alpha, x)
            alpha += 1

    def live_rows(self) -> dict[int, list[int]]:
        """forward action on live cosets, indexed by original coset number"""
        return {
            c: [self.rep(self.rows[c][2 * i]) for i in range(self.ncols // 2)]
            for c in range(len(self.rows))
            if self.parent[c] == c
        }


@dataclass(frozen=True)
class Exceeded:
    """Inconclusive enumeration: the coset cap was reached. Not a proof of infiniteness."""

    max_cosets: int

    def __bool__(self) -> bool:
        """ """
        return False


def todd_coxeter(
    p: GroupPresentation, max_cosets: int = 1_000_000, subgroup: Sequence[Word] = ()
) -> Union[CosetTable, Exceeded]:
    """Enumerate the cosets of the subgroup generated by 'subgroup' (default trivial).
    The cap counts every coset ever defined, including ones later found to coincide."""
    if max_cosets < 1:
        raise ValueError(f"max_cosets must be >= 1, got {max_cosets}")
    enumerator = _Enumerator(p, max_cosets)
    index = {x: i for i, x in enumerate(p.generators)}
    encoded = [[2 * index[x] + (e == -1) for x, e in w] for w in subgroup]
    try:
        enumerator.run(encoded)
    except CosetLimitExceeded:
        logger.warning(
            f"Coset enumeration of {p} exceeded {max_cosets} cosets, result inconclusive."
        )
        return Exceeded(max_cosets)

    live = enumerator.live_rows()
    table = _standardize(p.generators, live)
    logger.debug(
        f"Enumerated {len(table)} cosets after defining {len(enumerator.rows)} in total."
    )
    return table


def reidemeister_schreier(p: GroupPresentation, t: CosetTable) -> GroupPresentation:
    """Presentation of the subgroup at coset 0 on the Schreier generators x_c (coset c,
    generator x), those lying on the transversal tree being deleted. Relators are the
    rewritten conjugates of every relator of p from every coset.

    Raises:
        IncompatibleTableError: if t is incomplete, not relator-compatible or its
        transversal is not prefix-closed."""
    if not t.verify(p):
        message = (
            f"Coset table with {len(t)} cosets is incompatible with the presentation "
            f"{p}; it must be complete, fix every relator and carry a Schreier transversal."
        )
        logger.error(message)
        raise IncompatibleTableError(message)

    table, inverse = t.table.tolist(), t.inverse_table.tolist()
    index = {x: i for i, x in enumerate(p.generators)}

    tree = set()
    for c, word in enumerate(t.transversal[1:], start=1):
        x, e = word[-1]
        parent = t.trace(0, word[:-1])
        tree.add((parent, index[x]) if e == 1 else (c, index[x]))

    names = {}
    for c in range(len(t)):
        for i, x in enumerate(p.generators):
            if (c, i) not in tree:
                names[(c, i)] = f"{x}_{c}"

    relators = []
    for relator in p.relators:
        for c in range(len(t)):
            current, rewritten = c, []
            for x, e in relator:
                i = index[x]
                if e == 1:
                    key, current = (current, i), table[current][i]
                else:
                    current = inverse[current][i]
                    key = (current, i)
                if key in names:
                    rewritten.append((names[key], e))
            relators.append(tuple(rewritten))

    subgroup = GroupPresentation.build(names.values(), relators)
    logger.debug(
        f"Rewrote a subgroup of index {len(t)}: {len(subgroup.generators)} generators, "
        f"{len(subgroup.relators)} relators."
    )
    return subgroup
