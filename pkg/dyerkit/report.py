"""Classification reports: every classifier verdict for one graph, with re-checkable
witnesses, rendered as text or as versioned JSON."""

from __future__ import annotations

from dataclasses import dataclass
import json
from typing import Any, Optional

from dyerkit.classify import (
    FailPair,
    FailPrime,
    InfiniteCoxeterClique,
    InfiniteOrderEdge,
    MissingTriangle,
    NotChordal,
    QuasiPerfectVerdict,
    VirtuallyFreeVerdict,
    abelianization_invariants,
    derived_length_lower_bound,
    even_quotient,
    graph_product_derived_length,
    is_even,
    is_quasi_perfect,
    is_virtually_free,
)
from dyerkit.cosets import Exceeded
from dyerkit.dyg import DygDocument
from dyerkit.graph import DyerGraph, Order, format_order
from dyerkit.logger import logger
from dyerkit.oracle import DerivedSeriesPrefix, OracleSummary, summarize
from dyerkit.snf import AbelianInvariants

SCHEMA = 1


def _order(value: Order) -> Any:
    """integers stay integers, infinity is spelled 'inf'"""
    text = format_order(value)
    return text if text == "inf" else int(text)


def _quasi_perfect_dict(verdict: QuasiPerfectVerdict) -> dict[str, Any]:
    """ """
    failure, witness = verdict.failure, None
    if isinstance(failure, FailPrime):
        witness = {
            "kind": failure.kind,
            "part": failure.part,
            "vertices": list(failure.vertices),
            "prime": failure.prime,
            "components": [list(c) for c in failure.components],
        }
    elif isinstance(failure, FailPair):
        witness = {
            "kind": failure.kind,
            "parts": [failure.first, failure.second],
            "first": list(failure.first_vertices),
            "second": list(failure.second_vertices),
        }
    return {"result": verdict.result, "witness": witness}


def _virtually_free_dict(verdict: VirtuallyFreeVerdict) -> dict[str, Any]:
    """ """
    failure, witness = verdict.failure, None
    if isinstance(failure, InfiniteOrderEdge):
        witness = {"kind": failure.kind, "vertices": list(failure.vertices)}
    elif isinstance(failure, MissingTriangle):
        witness = {"kind": failure.kind, "apex": failure.apex, "pair": list(failure.pair)}
    elif isinstance(failure, NotChordal):
        witness = {"kind": failure.kind, "cycle": list(failure.cycle)}
    elif isinstance(failure, InfiniteCoxeterClique):
        witness = {"kind": failure.kind, "clique": list(failure.clique), "reason": failure.reason}
    return {"result": verdict.result, "witness": witness}


def _invariants_dict(invariants: AbelianInvariants) -> dict[str, Any]:
    """ """
    return {"torsion": list(invariants.torsion), "free_rank": invariants.free_rank}


def _series_dict(series: DerivedSeriesPrefix) -> dict[str, Any]:
    """ """
    return {
        "quotients": [_invariants_dict(q) for q in series.quotients],
        "indices": list(series.indices),
        "stopped": series.stopped,
        "lower_bound": series.lower_bound,
        "exact": series.exact,
    }


def oracle_section(summary: OracleSummary) -> dict[str, Any]:
    """ """
    section: dict[str, Any] = {
        "applicable": summary.applicable,
        "abelianization": _invariants_dict(summary.abelianization),
        "closed_form_agrees": summary.closed_form_agrees,
    }
    if not summary.applicable:
        section["note"] = summary.note
        return section
    if summary.skipped:
        section["note"] = summary.note
    else:
        section["quasi_perfect"] = summary.quasi_perfect
        section["agreement"] = summary.agreement
        section["derived_index"] = summary.derived_index
        section["derived_abelianization"] = _invariants_dict(summary.derived_abelianization)
    section["derived_series"] = _series_dict(summary.series)
    if isinstance(summary.group_order, Exceeded):
        section["group_order"] = f"exceeded {summary.group_order.max_cosets} cosets"
        section["derived_length"] = None
    elif summary.group_order is not None:
        section["group_order"] = summary.group_order
        section["derived_length"] = summary.derived_length
    return section


@dataclass(frozen=True)
class ClassificationReport:
    """ """

    graph: DyerGraph
    even: bool
    quasi_perfect: QuasiPerfectVerdict
    virtually_free: VirtuallyFreeVerdict
    abelianization: tuple[Order, ...]
    derived_length_lower_bound: Order
    even_quotient: DyerGraph
    graph_product_dl: Optional[Order] = None
    oracle: Optional[OracleSummary] = None

    def to_dict(self) -> dict[str, Any]:
        """fields in a fixed order"""
        report: dict[str, Any] = {
            "schema": SCHEMA,
            "graph": DygDocument(self.graph).to_text(),
            "even": self.even,
            "quasi_perfect": _quasi_perfect_dict(self.quasi_perfect),
            "virtually_free": _virtually_free_dict(self.virtually_free),
            "abelianization": [_order(f) for f in self.abelianization],
            "derived_length_lower_bound": _order(self.derived_length_lower_bound),
        }
        if self.graph_product_dl is not None:
            report["graph_product_dl"] = _order(self.graph_product_dl)
        report["even_quotient"] = DygDocument(self.even_quotient).to_text()
        if self.oracle is not None:
            report["oracle"] = oracle_section(self.oracle)
        return report

    def to_json(self) -> str:
        """ """
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        """ """
        report = self.to_dict()
        lines = []
        for key, value in report.items():
            if isinstance(value, str) and "\n" in value:
                lines.append(f"{key}:")
                lines += [f"  {line}" for line in value.splitlines()]
            elif isinstance(value, dict):
                lines.append(f"{key}:")
                lines += [f"  {k}: {json.dumps(v)}" for k, v in value.items()]
            else:
                lines.append(f"{key}: {json.dumps(value)}")
        return "\n".join(lines) + "\n"


def emit_report(
    g: DyerGraph,
    with_oracle: bool = False,
    enumerate_cosets: bool = False,
    max_cosets: int = 1_000_000,
    max_index: int = 5000,
) -> ClassificationReport:
    """Run every classifier on g (and the oracle when asked). Witnesses are rechecked
    against g before the report is returned."""
    quasi_perfect = is_quasi_perfect(g)
    virtually_free = is_virtually_free(g)
    assert quasi_perfect.recheck(g), f"quasi-perfect witness fails on {g}"
    assert virtually_free.recheck(g), f"virtually-free witness fails on {g}"

    oracle = None
    if with_oracle:
        oracle = summarize(g, enumerate_cosets, max_cosets, max_index=max_index)

    report = ClassificationReport(
        graph=g,
        even=is_even(g),
        quasi_perfect=quasi_perfect,
        virtually_free=virtually_free,
        abelianization=abelianization_invariants(g),
        derived_length_lower_bound=derived_length_lower_bound(g),
        even_quotient=even_quotient(g).graph,
        graph_product_dl=graph_product_derived_length(g).value if g.is_graph_product else None,
        oracle=oracle,
    )
    logger.debug(f"Classified {g}: quasi-perfect {quasi_perfect.result}, virtually free {virtually_free.result}.")
    return report
