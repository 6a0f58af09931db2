"""The .dyg text format for Dyer graphs.

    # comment lines start with '#'
    vertex <name> <order>       order is an integer >= 2 or 'inf'
    edge <u> <v> <label>        label is an integer >= 2

Files are UTF-8 with LF line endings; blank lines are ignored. The canonical form puts
the comments first, then vertex lines sorted by name, then edge lines sorted by their
(lexicographically ordered) endpoints."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

from dyerkit.graph import (
    DyerGraph,
    Order,
    edge_key,
    format_order,
    parse_integer,
    parse_order,
    validate_dyer,
)
from dyerkit.logger import logger


class ParseError(Exception):
    """Raised on a malformed line; 'line' is 1-based."""

    def __init__(self, line: int, reason: str) -> None:
        """ """
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DygIOError(Exception):
    """Raised if a .dyg document can't be read from or written to a path."""


@dataclass(frozen=True)
class DygDocument:
    """A Dyer graph plus the comment lines (text after '#') that travel with it."""

    graph: DyerGraph
    comments: tuple[str, ...] = ()

    def to_text(self) -> str:
        """canonical form"""
        lines = [f"#{comment}" for comment in self.comments]
        lines += [f"vertex {v} {format_order(f)}" for v, f in self.graph.orders]
        lines += [f"edge {u} {v} {m}" for (u, v), m in self.graph.labels]
        return "\n".join(lines) + "\n"


def _raise(line: int, reason: str) -> None:
    """ """
    error = ParseError(line, reason)
    logger.error(f"Can't parse Dyer graph, {error}.")
    raise error


def parse_document(text: str) -> DygDocument:
    """Parse .dyg text, keeping its comments.

    Raises:
        ParseError: on the first malformed line.
        ValidationError: if the declarations break a Dyer graph invariant."""
    comments: list[str] = []
    vertices: dict[str, Order] = {}
    edges: dict[tuple[str, str], tuple[str, str, int]] = {}

    for number, line in enumerate(text.split("\n"), start=1):
        if line.startswith("#"):
            comments.append(line[1:])
            continue
        tokens = line.split()
        if not tokens:
            continue
        keyword, arguments = tokens[0], tokens[1:]

        if keyword == "vertex":
            if len(arguments) != 2:
                _raise(number, f"'vertex' takes a name and an order, got {len(arguments)} fields")
            name, token = arguments
            if name in vertices:
                _raise(number, f"vertex '{name}' is declared twice")
            try:
                vertices[name] = parse_order(token)
            except ValueError:
                _raise(number, f"order {token!r} is not an integer >= 2 or 'inf'")

        elif keyword == "edge":
            if len(arguments) != 3:
                _raise(number, f"'edge' takes two vertices and a label, got {len(arguments)} fields")
            u, v, token = arguments
            key = edge_key(u, v)
            if key in edges:
                _raise(number, f"edge {{{u}, {v}}} is declared twice")
            try:
                edges[key] = (u, v, parse_integer(token))
            except ValueError:
                _raise(number, f"label {token!r} is not an integer")

        else:
            _raise(number, f"unknown declaration {keyword!r}")

    graph = validate_dyer(vertices, edges.values())
    return DygDocument(graph, tuple(comments))


def parse_dyg(text: str) -> DyerGraph:
    """ """
    return parse_document(text).graph


def canonicalize(text: str) -> str:
    """canonical form of any valid document"""
    return parse_document(text).to_text()


def load(path: Union[str, Path]) -> DygDocument:
    """ """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError):
        message = (
            f"Unable to read a Dyer graph from {path = }. "
            f"You may have specified an invalid path."
        )
        logger.error(message)
        raise DygIOError(message) from None
    logger.debug(f"Loading Dyer graph from '{path.name}'...")
    return parse_document(text)


def dump(path: Union[str, Path], document: Union[DygDocument, DyerGraph]) -> None:
    """write the canonical form of a document (or bare graph) to path"""
    if isinstance(document, DyerGraph):
        document = DygDocument(document)
    path = Path(path)
    try:
        with open(path, mode="w", encoding="utf-8", newline="\n") as file:
            file.write(document.to_text())
    except OSError:
        message = (
            f"Unable to save a Dyer graph to a file at {path = }. "
            f"You may have specified an invalid path."
        )
        logger.error(message)
        raise DygIOError(message) from None
    logger.info(f"Saved Dyer graph with {len(document.graph)} vertices to '{path}'.")
