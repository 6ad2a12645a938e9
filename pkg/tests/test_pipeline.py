"""Integration tests for the acceptance pipeline."""

import pandas as pd
import pytest

from srglab.exceptions import UnsupportedParameters
from srglab.geometry import Family, FormModel
from srglab.process.pipeline import TablesPipeline, default_grid, group_model_spec
from srglab.srg import GraphSpec

SMALL_GRID = [
    GraphSpec("no-even2", 2, 2, -1),
    GraphSpec("no-even2", 2, 2, 1),
    GraphSpec("no-perp", 3, 2, 1),
]


class TestGrid:
    """Tests for the parameter grid."""

    def test_default_grid(self):
        """Test both eps appear for the orthogonal families and nu once."""
        grid = default_grid()
        assert GraphSpec("no-perp", 5, 2, -1) in grid
        assert GraphSpec("no-odd", 7, 2, 1) in grid
        assert [s for s in grid if s.family is Family.NU] == [GraphSpec("nu", 2, 3)]

    def test_group_model_spec(self):
        """Test the group constructions move to the split model."""
        assert group_model_spec(GraphSpec("no-perp", 3, 2, 1)).model is FormModel.SPLIT
        assert group_model_spec(GraphSpec("no-even2", 2, 3, -1)) is None
        nu = GraphSpec("nu", 2, 3)
        assert group_model_spec(nu) == nu


class TestTablesPipeline:
    """Integration tests for TablesPipeline."""

    def test_run_params(self, test_config):
        """Test the parameter rows of a small grid."""
        pipeline = TablesPipeline(test_config, SMALL_GRID)
        rows = pipeline.run_params()

        assert len(rows) == 3
        assert all(row["passed"] for row in rows)
        assert rows[0]["measured"] == "(10, 3, 0, 1)"

    def test_run_singular(self, test_config):
        """Test perps, complements and differences all pass."""
        pipeline = TablesPipeline(test_config, SMALL_GRID)
        rows = pipeline.run_singular()

        # 2 + 2 rows for the two no-even2 graphs, 4 + 1 for no-perp(3,2,+1)
        assert len(rows) == 9
        assert all(row["passed"] for row in rows), [r for r in rows if not r["passed"]]
        assert {row["check"] for row in rows} == {"perp", "complement", "difference"}

    def test_orbit_shape_note_in_rows(self, test_config, monkeypatch):
        """Test an orbit count off its closed form fails the orbit rows with a note."""
        monkeypatch.setattr("srglab.construct.groups.expected_orbit_shape", lambda kind, g: (4, 9))
        pipeline = TablesPipeline(test_config, [GraphSpec("no-perp", 3, 2, 1)])
        rows = pipeline.run_orbits()

        assert len(rows) == 5
        assert {row["check"] for row in rows} == {"k_orbit"}
        assert not any(row["passed"] for row in rows)
        assert all("expected 4 of size 9" in row["notes"] for row in rows)

    def test_orbit_rows_pass(self, test_config):
        """Test the K-orbit rows of no-perp(3,2,+1) pass without notes."""
        rows = TablesPipeline(test_config, [GraphSpec("no-perp", 3, 2, 1)]).run_orbits()

        assert len(rows) == 5
        assert all(row["passed"] and row["notes"] == "" for row in rows)

    def test_graphs_are_memoized(self, test_config):
        """Test one build per spec within a pipeline."""
        pipeline = TablesPipeline(test_config, SMALL_GRID)
        assert pipeline.graph(SMALL_GRID[0]) is pipeline.graph(SMALL_GRID[0])

    def test_guarded_turns_errors_into_rows(self):
        """Test a failing step yields one failed row."""

        def boom():
            raise UnsupportedParameters("no such graph")

        rows = TablesPipeline._guarded("params", SMALL_GRID[0], "srg", boom)
        assert len(rows) == 1
        assert rows[0]["passed"] is False
        assert rows[0]["notes"].startswith("UnsupportedParameters")
        assert rows[0]["graph_family"] == "no-even2"

    def test_run_witt(self, test_config):
        """Test the Witt rows report a single pair per dimension."""
        rows = TablesPipeline(test_config, []).run_witt()

        assert len(rows) == 5
        assert all(row["passed"] for row in rows)

    def test_save(self, test_config):
        """Test the matrix is written as parquet and CSV."""
        pipeline = TablesPipeline(test_config, SMALL_GRID)
        df = pd.DataFrame(pipeline.run_params() + pipeline.run_singular())
        parquet_path, csv_path = pipeline.save(df)

        assert parquet_path.exists()
        assert csv_path.exists()
        back = pd.read_parquet(parquet_path)
        assert len(back) == len(df)
        assert "check" in back.columns

    @pytest.mark.slow
    def test_full_run(self, test_config):
        """Test the whole default grid passes."""
        pipeline = TablesPipeline(test_config)
        df = pipeline.run()

        assert df["passed"].all(), df[~df["passed"]].to_string()
