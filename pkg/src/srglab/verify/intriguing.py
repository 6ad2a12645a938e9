"""Intriguing-set oracle.

Y is intriguing with numbers (h1, h2) when every vertex of Y has h1
neighbours in Y and every vertex outside Y has h2. It is positive when
h1 - h2 = e+ and negative when h1 - h2 = e-.
"""

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd

from srglab.construct.vertex_set import Expected, SetType, VertexSet
from srglab.exceptions import NotIntriguing, WrongFamily
from srglab.srg import Graph, SrgParams, complement_relation, expected_params

logger = logging.getLogger(__name__)


@dataclass
class IntriguingReport:
    """Measured intersection numbers of one vertex set."""

    graph: dict[str, Any]
    set_size: int
    provenance: str
    h1_measured: int | None
    h2_measured: int | None
    set_type: SetType
    expected: Expected | None = None
    witness: dict[str, Any] | None = None
    eigenvector_ok: bool | None = None
    counting_identity_ok: bool | None = None
    construction_ok: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def is_intriguing(self) -> bool:
        return self.h1_measured is not None and self.h2_measured is not None

    @property
    def matches_expected(self) -> bool | None:
        if self.expected is None:
            return None
        return (
            self.is_intriguing
            and (self.h1_measured, self.h2_measured) == (self.expected.h1, self.expected.h2)
            and self.set_type == self.expected.set_type
        )

    @property
    def passed(self) -> bool:
        """Intriguing, and no attached check or construction note disagrees."""
        return (
            self.is_intriguing
            and self.matches_expected is not False
            and self.eigenvector_ok is not False
            and self.counting_identity_ok is not False
            and self.construction_ok is not False
        )

    @property
    def matches_printed(self) -> bool | None:
        if self.expected is None or self.expected.printed is None:
            return None
        return self.is_intriguing and (self.h1_measured, self.h2_measured) == self.expected.printed

    def to_dict(self) -> dict[str, Any]:
        return {
            "graph": self.graph,
            "set": {"size": self.set_size, "provenance": self.provenance},
            "measured": {"h1": self.h1_measured, "h2": self.h2_measured},
            "type": self.set_type.value,
            "expected": self.expected.to_dict() if self.expected else None,
            "matches_expected": self.matches_expected,
            "matches_printed": self.matches_printed,
            "eigenvector_ok": self.eigenvector_ok,
            "counting_identity_ok": self.counting_identity_ok,
            "construction_ok": self.construction_ok,
            "witness": self.witness,
            "notes": self.notes,
        }

    def to_record(self) -> dict[str, Any]:
        """Flat row for tabular output."""
        exp = self.expected
        return {
            **{f"graph_{k}": v for k, v in self.graph.items()},
            "provenance": self.provenance,
            "size": self.set_size,
            "h1": self.h1_measured,
            "h2": self.h2_measured,
            "type": self.set_type.value,
            "expected_h1": exp.h1 if exp else None,
            "expected_h2": exp.h2 if exp else None,
            "expected_type": exp.set_type.value if exp else None,
            "printed": str(exp.printed) if exp and exp.printed else None,
            "matches_expected": self.matches_expected,
            "matches_printed": self.matches_printed,
            "eigenvector_ok": self.eigenvector_ok,
            "construction_ok": self.construction_ok,
            "notes": "; ".join(self.notes),
            "passed": self.passed,
        }


def reports_dataframe(reports: list[IntriguingReport]) -> pd.DataFrame:
    if not reports:
        return pd.DataFrame()
    return pd.DataFrame([r.to_record() for r in reports])


def classify(h1: int, h2: int, params: SrgParams) -> SetType:
    diff = h1 - h2
    if diff == params.e_plus:
        return SetType.POSITIVE
    if diff == params.e_minus:
        return SetType.NEGATIVE
    return SetType.DEGENERATE


def _constant(counts: np.ndarray) -> int | None:
    if counts.size == 0 or np.all(counts == counts[0]):
        return int(counts[0]) if counts.size else None
    return None


def check_intriguing(
    g: Graph, y: VertexSet, params: SrgParams | None = None, eigen: bool = True
) -> IntriguingReport:
    """Count |N(P) & Y| for every vertex P and classify Y.

    For Y empty h1 is taken equal to h2; for Y = X h2 is taken equal to h1.

    Args:
        g: Built graph
        y: Vertex set over g's spec
        params: Parameters supplying e+ and e-; defaults to the family formulas
        eigen: Also run the eigenvector identity when Y is intriguing
    """
    if y.spec != g.spec or y.v != g.v:
        raise WrongFamily(f"Set over {y.spec.label}, graph is {g.spec.label}")
    params = params or expected_params(g.spec)
    counts = g.count_into(y.indices)
    inside = y.membership()
    h1 = _constant(counts[inside])
    h2 = _constant(counts[~inside])
    if y.size == 0:
        h1 = h2
    elif y.size == g.v:
        h2 = h1

    report = IntriguingReport(
        graph=g.spec.to_dict(),
        set_size=y.size,
        provenance=str(y.provenance),
        h1_measured=h1,
        h2_measured=h2,
        set_type=SetType.NOT_INTRIGUING,
        expected=y.expected,
        construction_ok=False if y.notes else None,
        notes=list(y.notes),
    )
    if h1 is None or h2 is None:
        report.h1_measured = report.h2_measured = None
        report.witness = _witness(g, counts, inside)
        logger.debug(f"{y.provenance} is not intriguing: {report.witness}")
        return report

    report.set_type = classify(h1, h2, params)
    if report.set_type is SetType.DEGENERATE:
        report.notes.append(f"h1 - h2 = {h1 - h2} is neither e+ = {params.e_plus} nor e-")
    report.counting_identity_ok = y.size * (params.k - h1) == (g.v - y.size) * h2
    if eigen:
        report.eigenvector_ok = eigenvector_check(g, y, report)
    if report.matches_expected is False:
        logger.warning(
            f"{g.spec.label} {y.provenance}: measured ({h1}, {h2}, {report.set_type.value}), "
            f"expected ({y.expected.h1}, {y.expected.h2}, {y.expected.set_type.value})"
        )
    return report


def _witness(g: Graph, counts: np.ndarray, inside: np.ndarray) -> dict[str, Any]:
    """First vertex (in index order) whose count differs from the first of its side."""
    for in_set in (True, False):
        side = np.flatnonzero(inside == in_set)
        if side.size == 0:
            continue
        reference = int(counts[side[0]])
        bad = side[counts[side] != reference]
        if bad.size:
            vertex = int(bad[0])
            return {
                "vertex": g.label(vertex),
                "index": vertex,
                "in_set": in_set,
                "count": int(counts[vertex]),
                "reference": reference,
            }
    return {}


def eigenvector_check(g: Graph, y: VertexSet, report: IntriguingReport) -> bool:
    """A w = (h1 - h2) w for w = (h1 - h2 - k) j_Y + h2 j, in exact integers.

    Raises:
        NotIntriguing: report does not carry intersection numbers
    """
    if not report.is_intriguing:
        raise NotIntriguing(f"{y.provenance} has no intersection numbers")
    h1, h2 = report.h1_measured, report.h2_measured
    theta = h1 - h2
    degrees = g.degrees()
    k = int(degrees[0])
    inside = y.membership().astype(np.int64)
    w = (theta - k) * inside + h2
    aw = (theta - k) * g.count_into(y.indices) + h2 * degrees
    return bool(np.array_equal(aw, theta * w))


def complement_transfer(
    g_odd: Graph, g_perp: Graph, y: VertexSet
) -> tuple[IntriguingReport, IntriguingReport]:
    """Reports of Y in no-odd(3, r, eps) and of the same vertices in no-perp(3, r, eps).

    The graphs are complements on one vertex order, so Y keeps being intriguing
    with (|Y| - 1 - h1, |Y| - h2) and its type swaps.

    Raises:
        WrongFamily: the graphs are not complementary on the same vertices
    """
    if not complement_relation(g_odd, g_perp):
        raise WrongFamily(f"{g_odd.spec.label} and {g_perp.spec.label} are not complements")
    odd_report = check_intriguing(g_odd, y)
    moved = VertexSet(
        g_perp.spec, g_perp.v, y.indices, y.provenance, trivial=y.trivial, notes=list(y.notes)
    )
    expected = None
    if odd_report.is_intriguing and 0 < y.size < g_odd.v:
        swapped = {SetType.POSITIVE: SetType.NEGATIVE, SetType.NEGATIVE: SetType.POSITIVE}
        expected = Expected(
            y.size - 1 - odd_report.h1_measured,
            y.size - odd_report.h2_measured,
            swapped.get(odd_report.set_type, odd_report.set_type),
            source="complement_graph",
        )
    perp_report = check_intriguing(g_perp, moved.with_expected(expected))
    return odd_report, perp_report
