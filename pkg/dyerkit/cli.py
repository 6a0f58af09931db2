"""Command line surface: validate, classify, quotient, witness, oracle and gen.

Exit codes are 0 on success, 1 when an input fails to parse, validate or load and 2 on
usage errors. Classification verdicts never affect the exit code."""

from __future__ import annotations

import argparse
import json
from pathlib import Path
import sys
from typing import Optional, Sequence

from dyerkit.classify import even_quotient
from dyerkit.dyg import DygDocument, DygIOError, ParseError, dump, load
from dyerkit.generate import generate_document
from dyerkit.graph import (
    ValidationError,
    find_indecomposable_witness,
    join_decompose,
    parse_integer,
    parse_order,
)
from dyerkit.logger import add_file_sink, logger
from dyerkit.oracle import summarize
from dyerkit.report import emit_report, oracle_section
from dyerkit.settings import Settings

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


def _pool(text: str) -> list:
    """comma-separated vertex orders, e.g. 2,3,inf"""
    try:
        return [parse_order(token.strip()) for token in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid pool {text!r}") from None


def _label_pool(text: str) -> list[int]:
    """comma-separated edge labels, e.g. '2,3,4'"""
    try:
        labels = [parse_integer(token.strip()) for token in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid label pool {text!r}") from None
    if any(m < 2 for m in labels):
        raise argparse.ArgumentTypeError(f"labels in {text!r} must be >= 2")
    return labels


def _probability(text: str) -> float:
    """ """
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid probability {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"probability {value} outside [0, 1]")
    return value


def _positive(text: str) -> int:
    """ """
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid count {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"count {value} must be >= 1")
    return value


def _write(text: str) -> None:
    """documents and reports go to stdout, logs to stderr"""
    sys.stdout.write(text)


def _validate(args: argparse.Namespace, settings: Settings) -> int:
    """ """
    try:
        document = load(args.file)
    except ValidationError as error:
        for violation in error.violations:
            _write(f"violation: {violation}\n")
        return EXIT_INVALID
    g = document.graph
    _write(f"valid: {len(g)} vertices, {len(g.labels)} edges\n")
    return EXIT_OK


def _classify(args: argparse.Namespace, settings: Settings) -> int:
    """ """
    reports = []
    for file in args.files:
        g = load(file).graph
        report = emit_report(
            g,
            with_oracle=args.oracle,
            enumerate_cosets=args.enumerate,
            max_cosets=args.max_cosets or settings.max_cosets,
            max_index=settings.max_index,
        )
        reports.append((file, report))

    if args.json:
        if len(reports) == 1:
            _write(reports[0][1].to_json())
        else:
            batch = [{"file": str(file), "report": r.to_dict()} for file, r in reports]
            _write(json.dumps(batch, indent=2) + "\n")
    else:
        for file, report in reports:
            if len(reports) > 1:
                _write(f"== {file} ==\n")
            _write(report.to_text())
    return EXIT_OK


def _quotient(args: argparse.Namespace, settings: Settings) -> int:
    """ """
    omega = even_quotient(load(args.file).graph).graph
    if args.out is None:
        _write(DygDocument(omega).to_text())
    else:
        dump(args.out, omega)
    return EXIT_OK


def _witness(args: argparse.Namespace, settings: Settings) -> int:
    """ """
    g = load(args.file).graph
    decomposition = join_decompose(g)
    if not decomposition.is_indecomposable:
        factors = " ".join("{" + ", ".join(f) + "}" for f in decomposition.factors)
        _write(f"join factors: {factors}\n")
    elif len(g) < 3:
        _write(f"indecomposable with {len(g)} vertices, no witness triple\n")
    else:
        witness = find_indecomposable_witness(g)
        _write(f"indecomposable: {witness.kind.value} {' '.join(witness.vertices)}\n")
    return EXIT_OK


def _oracle(args: argparse.Namespace, settings: Settings) -> int:
    """ """
    g = load(args.file).graph
    summary = summarize(
        g,
        enumerate_cosets=True,
        max_cosets=args.max_cosets or settings.max_cosets,
        rounds=args.rounds,
        max_index=settings.max_index,
    )
    _write(json.dumps(oracle_section(summary), indent=2) + "\n")
    return EXIT_OK


def _gen(args: argparse.Namespace, settings: Settings) -> int:
    """ """
    document = generate_document(
        args.vertices,
        seed=args.seed,
        f_pool=args.f_pool or settings.f_pool,
        m_pool=args.m_pool or settings.m_pool,
        edge_prob=settings.edge_prob if args.edge_prob is None else args.edge_prob,
    )
    if args.out is None:
        _write(document.to_text())
    else:
        dump(args.out, document)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """ """
    parser = argparse.ArgumentParser(prog="dyerkit", description="Classify Dyer groups from their graphs")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="check that a .dyg file is a Dyer graph")
    validate.add_argument("file", type=Path)
    validate.set_defaults(run=_validate)

    classify = commands.add_parser("classify", help="report every classifier verdict")
    classify.add_argument("files", type=Path, nargs="+", help="one or more .dyg files")
    classify.add_argument("--json", action="store_true", help="machine-readable report")
    classify.add_argument("--oracle", action="store_true", help="confirm with group computations")
    classify.add_argument("--enumerate", action="store_true", help="with --oracle, also run Todd-Coxeter")
    classify.add_argument("--max-cosets", type=_positive, default=None)
    classify.set_defaults(run=_classify)

    quotient = commands.add_parser("quotient", help="write the even quotient graph")
    quotient.add_argument("file", type=Path)
    quotient.add_argument("-o", "--out", type=Path, default=None)
    quotient.set_defaults(run=_quotient)

    witness = commands.add_parser("witness", help="indecomposable witness or join factors")
    witness.add_argument("file", type=Path)
    witness.set_defaults(run=_witness)

    oracle = commands.add_parser("oracle", help="abelianization, derived series and order")
    oracle.add_argument("file", type=Path)
    oracle.add_argument("--max-cosets", type=_positive, default=None)
    oracle.add_argument("--rounds", type=_positive, default=3)
    oracle.set_defaults(run=_oracle)

    gen = commands.add_parser("gen", help="generate a random Dyer graph")
    gen.add_argument("--vertices", type=_positive, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--edge-prob", type=_probability, default=None)
    gen.add_argument("--f-pool", type=_pool, default=None, help="e.g. 2,3,inf")
    gen.add_argument("--m-pool", type=_label_pool, default=None, help="e.g. 2,3,4,5,6")
    gen.add_argument("-o", "--out", type=Path, default=None)
    gen.set_defaults(run=_gen)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """ """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:  # argparse exits 2 on usage errors, 0 on --help
        return EXIT_OK if error.code in (0, None) else EXIT_USAGE

    settings = Settings()
    if settings.logspath is not None:
        add_file_sink(Path(settings.logspath))
    logger.debug(f"Running dyerkit {args.command}...")

    try:
        return args.run(args, settings)
    except (ParseError, ValidationError, DygIOError):
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
