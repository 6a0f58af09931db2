"""Finitely presented groups: words over named generators and the Dyer presentation.

A word is a tuple of letters (generator, exponent) with exponent +1 or -1. The Dyer
group of a graph is generated by its vertices subject to v^f(v) for every finite-order
vertex and pi(v, w, m) = pi(w, v, m) for every edge {v, w} labelled m, where pi(a, b, n)
is the alternating word abab... with n letters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from dyerkit.graph import DyerGraph, is_finite
from dyerkit.logger import logger

Letter = tuple  # (generator name, +1 or -1)
Word = tuple  # tuple of letters


class PresentationError(Exception):
    """ """


def pi_word(a: str, b: str, n: int) -> Word:
    """alternating word a b a b ... with n letters"""
    return tuple(((a, 1) if i % 2 == 0 else (b, 1)) for i in range(n))


def inverse(word: Word) -> Word:
    """ """
    return tuple((x, -e) for x, e in reversed(word))


def free_reduce(word: Iterable[Letter]) -> Word:
    """ """
    stack: list[Letter] = []
    for x, e in word:
        if stack and stack[-1] == (x, -e):
            stack.pop()
        else:
            stack.append((x, e))
    return tuple(stack)


def cyclic_reduce(word: Iterable[Letter]) -> Word:
    """free reduction followed by cancelling inverse letters at the two ends"""
    word = free_reduce(word)
    start, end = 0, len(word)
    while end - start >= 2 and word[start] == (word[end - 1][0], -word[end - 1][1]):
        start, end = start + 1, end - 1
    return word[start:end]


def format_word(word: Word) -> str:
    """ """
    if not word:
        return "1"
    return " ".join(x if e == 1 else f"{x}^-1" for x, e in word)


@dataclass(frozen=True)
class GroupPresentation:
    """Generators in a fixed order and freely reduced relator words over them."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        """ """
        if not self.generators:
            message = "A presentation needs at least one generator."
            logger.error(message)
            raise PresentationError(message)
        if len(set(self.generators)) != len(self.generators):
            message = f"Presentation generators {self.generators} are not distinct."
            logger.error(message)
            raise PresentationError(message)
        known = set(self.generators)
        for relator in self.relators:
            if any(x not in known or e not in (1, -1) for x, e in relator):
                message = f"Relator {format_word(relator)} uses unknown letters."
                logger.error(message)
                raise PresentationError(message)
            if free_reduce(relator) != relator:
                message = f"Relator {format_word(relator)} is not freely reduced."
                logger.error(message)
                raise PresentationError(message)

    @classmethod
    def build(cls, generators: Iterable[str], relators: Iterable[Word]) -> GroupPresentation:
        """Cyclically reduce the relators, then drop empty and repeated ones."""
        reduced, seen = [], set()
        for relator in relators:
            relator = cyclic_reduce(relator)
            if relator and relator not in seen:
                seen.add(relator)
                reduced.append(relator)
        return cls(tuple(generators), tuple(reduced))

    def __str__(self) -> str:
        """ """
        relators = ", ".join(format_word(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {relators} >"


def build_presentation(g: DyerGraph) -> GroupPresentation:
    """Dyer presentation of g, generators in lexicographic order: v^f(v) per
    finite-order vertex, then pi(v, w, m) pi(w, v, m)^-1 per edge."""
    relators = [((v, 1),) * f for v, f in g.orders if is_finite(f)]
    for (v, w), m in g.labels:
        relators.append(free_reduce(pi_word(v, w, m) + inverse(pi_word(w, v, m))))
    presentation = GroupPresentation(g.vertices, tuple(relators))
    logger.debug(
        f"Built presentation with {len(presentation.generators)} generators and "
        f"{len(presentation.relators)} relators."
    )
    return presentation
