"""Acceptance pipeline.

Builds every graph of the default parameter grid, runs every construction on
it and writes one pass/fail row per (check, graph, item) as parquet and CSV.
"""

import logging
import time
from collections.abc import Callable, Iterator
from pathlib import Path
from typing import Any

import pandas as pd
from tqdm import tqdm

from srglab.config import DEFAULT_CONFIG, Config
from srglab.construct import (
    LEMMAS,
    GroupKind,
    VertexSet,
    construction_I,
    construction_I_complement,
    construction_I_difference,
    construction_III,
    group_orbits,
    lemma_checks,
    orbit_union_sets,
    sample_y,
)
from srglab.construct.nonsingular import construction_III_sizes, required_y_class
from srglab.construct.singular import chain_length, legal_t, witt_invariant_numbers
from srglab.exceptions import SrgLabError
from srglab.geometry import Family, FormModel
from srglab.srg import (
    Graph,
    GraphSpec,
    build_graph,
    complement_relation,
    expected_params,
    measure_params,
)
from srglab.utils import GraphCache
from srglab.verify import IntriguingReport, check_intriguing, complement_transfer

logger = logging.getLogger(__name__)

Row = dict[str, Any]


def default_grid() -> list[GraphSpec]:
    """Standard-model graphs of the acceptance grid, both eps where defined."""
    tuples = [
        (Family.NO_PERP, 3, 2),
        (Family.NO_PERP, 3, 3),
        (Family.NO_PERP, 5, 2),
        (Family.NO_PERP, 5, 3),
        (Family.NO_EVEN3, 3, 2),
        (Family.NO_EVEN3, 3, 3),
        (Family.NO_EVEN2, 2, 2),
        (Family.NO_EVEN2, 2, 3),
        (Family.NO_EVEN2, 2, 4),
        (Family.NO_ODD, 3, 2),
        (Family.NO_ODD, 5, 2),
        (Family.NO_ODD, 7, 2),
        (Family.NO_ODD, 3, 3),
        (Family.NO_ODD, 5, 3),
    ]
    grid = [GraphSpec(family, q, r, eps) for family, q, r in tuples for eps in (1, -1)]
    grid.append(GraphSpec(Family.NU, 2, 3, None))
    return grid


def group_model_spec(spec: GraphSpec) -> GraphSpec | None:
    """The graph the family's group acts on, or None when there is none."""
    if spec.family is Family.NU:
        return spec
    if spec.family in (Family.NO_EVEN3, Family.NO_EVEN2) and spec.eps != 1:
        return None
    return GraphSpec(spec.family, spec.q, spec.r, spec.eps, FormModel.SPLIT, spec.part)


class TablesPipeline:
    """Runs the acceptance grid.

    Outputs:
    - tables.parquet
    - tables.csv
    """

    def __init__(self, config: Config | None = None, grid: list[GraphSpec] | None = None):
        """Initialize pipeline.

        Args:
            config: srglab configuration
            grid: Graphs to check; defaults to default_grid()
        """
        self.config = config or DEFAULT_CONFIG
        self.config.ensure_dirs()
        self.grid = grid if grid is not None else default_grid()
        self.cache = GraphCache(self.config.cache_dir) if self.config.use_cache else None
        self._graphs: dict[GraphSpec, Graph] = {}

    def graph(self, spec: GraphSpec) -> Graph:
        if spec not in self._graphs:
            self._graphs[spec] = build_graph(spec, self.config, self.cache)
        return self._graphs[spec]

    def _progress(self, items: list, desc: str) -> Iterator:
        return iter(tqdm(items, desc=desc, disable=not self.config.show_progress, leave=False))

    @staticmethod
    def _guarded(check: str, spec: GraphSpec | None, item: str, fn: Callable[[], list[Row]]) -> list[Row]:
        """fn's rows, or a single failed row carrying the error."""
        try:
            return fn()
        except SrgLabError as e:
            logger.error(f"{check} {spec.label if spec else ''} {item}: {e}")
            row = _base_row(check, spec, item)
            row.update({"passed": False, "notes": f"{type(e).__name__}: {e}"})
            return [row]

    # -- steps ---------------------------------------------------------------

    def run_params(self) -> list[Row]:
        """Measured (v, k, lambda, mu) against the family formulas."""
        rows: list[Row] = []
        for spec in self._progress(self.grid, "params"):

            def one(spec: GraphSpec = spec) -> list[Row]:
                g = self.graph(spec)
                measured = measure_params(g)
                expected = expected_params(spec)
                row = _base_row("params", spec, "srg")
                row.update(
                    {
                        "measured": str(measured.as_tuple()),
                        "expected": str(expected.as_tuple()),
                        "passed": measured.as_tuple() == expected.as_tuple(),
                        "notes": f"built in {g.build_seconds:.2f}s",
                    }
                )
                return [row]

            rows.extend(self._guarded("params", spec, "srg", one))
        return rows

    def run_singular(self) -> list[Row]:
        """Perp sets, their complements and flag differences on every orthogonal graph."""
        rows: list[Row] = []
        specs = [s for s in self.grid if s.family is not Family.NU]
        for spec in self._progress(specs, "singular"):

            def one(spec: GraphSpec = spec) -> list[Row]:
                g = self.graph(spec)
                out = []
                for t in legal_t(spec):
                    out.append(_report_row("perp", f"t={t}", check_intriguing(g, construction_I(g, t))))
                    out.append(
                        _report_row(
                            "complement", f"t={t}", check_intriguing(g, construction_I_complement(g, t))
                        )
                    )
                for t in range(1, chain_length(spec.family, spec.r)):
                    out.append(
                        _report_row(
                            "difference", f"t={t}", check_intriguing(g, construction_I_difference(g, t))
                        )
                    )
                return out

            rows.extend(self._guarded("singular", spec, "", one))
        return rows

    def run_orbits(self) -> list[Row]:
        """K-orbits and unions, L-orbits and M_k on the group models."""
        rows: list[Row] = []
        specs = [s for s in (group_model_spec(s) for s in self.grid) if s is not None]
        for spec in self._progress(specs, "orbits"):

            def one(spec: GraphSpec = spec) -> list[Row]:
                g = self.graph(spec)
                out = []
                if spec.family in (Family.NO_EVEN3, Family.NO_EVEN2):
                    sets: list[VertexSet] = group_orbits(GroupKind.L, g)
                    check = "l_orbit"
                else:
                    sets = orbit_union_sets(g)
                    check = {
                        Family.NO_PERP: "k_orbit",
                        Family.NO_ODD: "k_orbit_union",
                        Family.NU: "m_k",
                    }[spec.family]
                for n, vset in enumerate(sets):
                    out.append(_report_row(check, f"#{n}", check_intriguing(g, vset)))
                return out

            rows.extend(self._guarded("orbits", spec, "", one))
        return rows

    def run_nonsingular(self, samples: int = 5) -> list[Row]:
        """Construction III at sampled y, plus constancy of |M & X| across them."""
        rows: list[Row] = []
        specs = []
        for spec in self.grid:
            try:
                required_y_class(spec)
            except SrgLabError:
                continue
            specs.append(spec)
        for spec in self._progress(specs, "nonsingular"):

            def one(spec: GraphSpec = spec) -> list[Row]:
                g = self.graph(spec)
                out = []
                ys = sample_y(g, samples, self.config.seed)
                for y in ys:
                    vset = construction_III(g, y)
                    out.append(_report_row("nonsingular", str(vset.provenance), check_intriguing(g, vset)))
                sizes = construction_III_sizes(g, ys)
                row = _base_row("nonsingular_size", spec, f"{len(sizes)} samples")
                row.update(
                    {"size": sizes[0], "passed": len(set(sizes)) == 1, "notes": str(sizes)}
                )
                out.append(row)
                return out

            rows.extend(self._guarded("nonsingular", spec, "", one))
        return rows

    def run_complements(self, q: int = 3, r: int = 2) -> list[Row]:
        """no-odd(3, r, eps) against no-perp(3, r, eps), and the set transfer between them."""
        rows: list[Row] = []
        for eps in (1, -1):
            odd = GraphSpec(Family.NO_ODD, q, r, eps)

            def one(eps: int = eps, odd: GraphSpec = odd) -> list[Row]:
                g_odd = self.graph(odd)
                g_perp = self.graph(GraphSpec(Family.NO_PERP, q, r, eps))
                row = _base_row("complement_graph", odd, "adjacency")
                row["passed"] = complement_relation(g_odd, g_perp)
                out = [row]
                for t in legal_t(odd):
                    _, moved = complement_transfer(g_odd, g_perp, construction_I(g_odd, t))
                    out.append(_report_row("complement_transfer", f"t={t}", moved))
                return out

            rows.extend(self._guarded("complement_graph", odd, "", one))
        return rows

    def run_witt(self) -> list[Row]:
        """(h1, h2) of W^perp & X over every totally singular W of each legal dimension."""
        rows: list[Row] = []
        for spec in (
            GraphSpec(Family.NO_PERP, 3, 2, 1),
            GraphSpec(Family.NO_PERP, 3, 2, -1),
            GraphSpec(Family.NO_EVEN2, 2, 2, 1),
            GraphSpec(Family.NO_EVEN2, 2, 2, -1),
        ):

            def one(spec: GraphSpec = spec) -> list[Row]:
                g = self.graph(spec)
                out = []
                for t in legal_t(spec):
                    found = witt_invariant_numbers(g, t)
                    row = _base_row("witt", spec, f"t={t}")
                    row.update({"passed": len(found) == 1, "notes": str(sorted(found))})
                    out.append(row)
                return out

            rows.extend(self._guarded("witt", spec, "", one))
        return rows

    def run_lemmas(self) -> list[Row]:
        rows: list[Row] = []
        for name in LEMMAS:

            def one(name: str = name) -> list[Row]:
                report = lemma_checks(name, self.config)
                row = _base_row("lemma", None, name)
                row.update(
                    {
                        "passed": report.passed,
                        "notes": f"{report.cases} cases, {len(report.failures)} failures",
                    }
                )
                return [row]

            rows.extend(self._guarded("lemma", None, name, one))
        return rows

    def run(self) -> pd.DataFrame:
        """Run every step and return the pass/fail matrix."""
        logger.info("=" * 60)
        logger.info(f"Acceptance grid: {len(self.grid)} graphs")
        logger.info("=" * 60)
        start = time.perf_counter()

        steps = [
            ("parameters", self.run_params),
            ("singular subspaces", self.run_singular),
            ("orbit unions", self.run_orbits),
            ("nonsingular points", self.run_nonsingular),
            ("complement graphs", self.run_complements),
            ("Witt independence", self.run_witt),
            ("lemmas", self.run_lemmas),
        ]
        rows: list[Row] = []
        for n, (name, step) in enumerate(steps, 1):
            logger.info(f"Step {n}: {name}")
            step_rows = step()
            failed = sum(not r["passed"] for r in step_rows)
            logger.info(f"  {len(step_rows)} rows, {failed} failed")
            rows.extend(step_rows)

        df = pd.DataFrame(rows)
        df["passed"] = df["passed"].astype(bool)
        logger.info("=" * 60)
        logger.info(
            f"{int(df['passed'].sum())}/{len(df)} rows pass in {time.perf_counter() - start:.1f}s"
        )
        logger.info("=" * 60)
        return df

    def save(self, df: pd.DataFrame) -> list[Path]:
        """Write the matrix as parquet and CSV under reports_dir."""
        parquet_path = self.config.reports_dir / "tables.parquet"
        csv_path = self.config.reports_dir / "tables.csv"
        out = df.copy()
        for column in out.columns:
            if out[column].dtype == object:
                out[column] = out[column].map(lambda x: None if x is None else str(x))
        out.to_parquet(parquet_path, index=False)
        out.to_csv(csv_path, index=False)
        logger.info(f"Saved {len(df)} rows to {parquet_path}")
        return [parquet_path, csv_path]


def _base_row(check: str, spec: GraphSpec | None, item: str) -> Row:
    graph = spec.to_dict() if spec is not None else {}
    return {
        "check": check,
        **{f"graph_{k}": v for k, v in graph.items()},
        "item": item,
    }


def _report_row(check: str, item: str, report: IntriguingReport) -> Row:
    record = report.to_record()
    notes = list(report.notes)
    if report.witness:
        notes.append(f"witness {report.witness}")
    return {"check": check, **record, "item": item, "notes": "; ".join(notes)}
