"""Finite groups as multiplication tables obtained from complete coset tables over the
trivial subgroup, and their derived series."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from dyerkit.cosets import CosetTable
from dyerkit.logger import logger

ASSOCIATIVITY_EXHAUSTIVE_LIMIT = 512
ASSOCIATIVITY_SAMPLES = 100_000


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    """Elements 0..n-1 with 0 the identity; product[a, b] is the element a*b."""

    product: np.ndarray
    generator_images: tuple[tuple[str, int], ...]

    @property
    def order(self) -> int:
        """ """
        return self.product.shape[0]

    @cached_property
    def inverse(self) -> np.ndarray:
        """inverse[a] is the element b with a*b the identity"""
        rows, columns = np.nonzero(self.product == 0)
        inverse = np.empty(self.order, dtype=self.product.dtype)
        inverse[rows] = columns
        return inverse

    @property
    def generators(self) -> list[int]:
        """distinct non-identity generator images"""
        return sorted({element for _, element in self.generator_images} - {0})

    def multiply(self, a: int, b: int) -> int:
        """ """
        return int(self.product[a, b])

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b"""
        inverse, product = self.inverse, self.product
        return int(product[product[inverse[a], inverse[b]], product[a, b]])

    def conjugate(self, a: int, by: int) -> int:
        """by^-1 a by"""
        return int(self.product[self.product[self.inverse[by], a], by])

    @property
    def is_abelian(self) -> bool:
        """ """
        return bool(np.array_equal(self.product, self.product.T))

    def check_group_axioms(self) -> bool:
        """identity row and column, each row and column a permutation, inverses exact"""
        n, elements = self.order, np.arange(self.order)
        if not (np.array_equal(self.product[0], elements) and np.array_equal(self.product[:, 0], elements)):
            return False
        if np.count_nonzero(self.product == 0) != n:  # exactly one inverse per element
            return False
        latin = all(len(np.unique(self.product[a])) == n for a in range(n))
        if not latin or not all(len(np.unique(self.product[:, b])) == n for b in range(n)):
            return False
        return bool(np.all(self.product[elements, self.inverse] == 0))

    def check_associativity(self, seed: int = 0) -> bool:
        """Exhaustive over all triples for small groups, otherwise sampled."""
        product = self.product
        if self.order <= ASSOCIATIVITY_EXHAUSTIVE_LIMIT:
            # (ab)c == a(bc) for all a, b, c at once, one b at a time to bound memory
            for b in range(self.order):
                left = product[product[:, b]]  # left[a, c] = (ab)c
                right = product[:, product[b]]  # right[a, c] = a(bc)
                if not np.array_equal(left, right):
                    return False
            return True
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, self.order, size=(3, ASSOCIATIVITY_SAMPLES))
        return bool(np.array_equal(product[product[a, b], c], product[a, product[b, c]]))

    def closure(self, generators: Iterable[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated, by breadth-first right
        multiplication from the identity."""
        generators = list(generators)
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        frontier = np.array([0])
        while frontier.size and generators:
            images = np.unique(self.product[np.ix_(frontier, generators)])
            frontier = images[~member[images]]
            member[frontier] = True
        return member


def finite_group_table(t: CosetTable) -> FiniteGroupTable:
    """Regular representation of the group enumerated by t (cosets of the trivial
    subgroup): element c is the permutation of cosets induced by its transversal word,
    and a*b is the image of coset a under the permutation of b."""
    n = len(t)
    words = {word: c for c, word in enumerate(t.transversal)}
    permutations = np.empty((n, n), dtype=np.min_scalar_type(max(n - 1, 0)))
    permutations[0] = np.arange(n)
    for c in sorted(range(1, n), key=lambda c: len(t.transversal[c])):
        word = t.transversal[c]
        x, e = word[-1]
        i = t.generators.index(x)
        action = t.table[:, i] if e == 1 else t.inverse_table[:, i]
        permutations[c] = action[permutations[words[word[:-1]]]]

    product = np.ascontiguousarray(permutations.T)
    images = tuple((x, int(t.table[0, i])) for i, x in enumerate(t.generators))
    logger.debug(f"Built multiplication table of a group of order {n}.")
    return FiniteGroupTable(product, images)


def _derived_generators(gt: FiniteGroupTable, generators: list[int]) -> list[int]:
    """Generators of the commutator subgroup of H = <generators>: the normal closure in H
    of the commutators of pairs of generators. Each accepted generator at least doubles
    the subgroup, so at most log2 |H| are kept."""
    queue = [gt.commutator(a, b) for a, b in combinations(generators, 2)]
    accepted: list[int] = []
    member = gt.closure(accepted)
    while queue:
        element = queue.pop(0)
        if member[element]:
            continue
        accepted.append(element)
        member = gt.closure(accepted)
        queue.extend(gt.conjugate(element, s) for s in generators)
    return accepted


def derived_series(gt: FiniteGroupTable) -> list[int]:
    """Orders |G^(0)|, |G^(1)|, ... down to the first repetition (not repeated)."""
    generators = gt.generators
    orders = [int(gt.closure(generators).sum())]
    while True:
        generators = _derived_generators(gt, generators)
        size = int(gt.closure(generators).sum())
        if size == orders[-1]:
            logger.debug(f"Derived series orders {orders}.")
            return orders
        orders.append(size)


def derived_length_finite(gt: FiniteGroupTable) -> int:
    """First i with G^(i) = G^(i+1); 0 for the trivial (or a perfect) group."""
    return len(derived_series(gt)) - 1
