"""Tests for the srglab command line."""

import json

import pytest
import yaml

from srglab.exceptions import UnsupportedParameters
from srglab.geometry import FormModel
from srglab.process import RunConfig
from srglab.run import main

PETERSEN = ["--family", "no-even2", "--q", "2", "--r", "2", "--eps", "-1"]
PERP3 = ["--family", "no-perp", "--q", "3", "--r", "2", "--eps", "1"]


@pytest.fixture
def cli(temp_output_dir, capsys):
    """Run main() against a temp output directory; returns (status, stdout)."""

    def _run(*args, cache=False):
        flags = ["--output-dir", str(temp_output_dir), "--quiet"]
        if not cache:
            flags.append("--no-cache")
        status = main([*flags, *args])
        return status, capsys.readouterr().out

    return _run


class TestBuildCommand:
    """Tests for srglab build."""

    def test_petersen_json(self, cli):
        """Test the JSON summary of the Petersen graph."""
        status, out = cli("build", *PETERSEN)
        summary = json.loads(out)
        assert status == 0
        assert (summary["v"], summary["k"], summary["lambda"], summary["mu"]) == (10, 3, 0, 1)
        assert summary["matches_expected"] is True

    def test_dot(self, cli):
        """Test DOT output."""
        status, out = cli("build", *PETERSEN, "--format", "dot")
        assert status == 0
        assert out.startswith("graph G {")

    def test_cache_written(self, cli, temp_output_dir):
        """Test a cached build leaves an .npz file."""
        status, _ = cli("build", *PETERSEN, cache=True)
        assert status == 0
        assert list((temp_output_dir / "cache").glob("*.npz"))
        status, _ = cli("build", *PETERSEN, cache=True)
        assert status == 0

    def test_output_file_recorded(self, cli, temp_output_dir):
        """Test --output writes the report and records it in the manifest."""
        target = temp_output_dir / "petersen.json"
        status, out = cli("build", *PETERSEN, "--output", str(target))
        assert status == 0
        assert out == ""
        assert json.loads(target.read_text())["v"] == 10
        manifest = yaml.safe_load((temp_output_dir / "run_manifest.yml").read_text())
        entry = manifest["files"]["petersen.json"]
        assert entry["command"] == "build"
        assert len(entry["file_hash"]) == 64

    def test_modulus(self, cli):
        """Test --modulus builds over x^2 + x + 2 and records it in the summary."""
        odd9 = ["--family", "no-odd", "--q", "9", "--r", "1", "--eps", "1"]
        status, out = cli("--ignore-caps", "build", *odd9, "--modulus", "2,1,1")
        summary = json.loads(out)
        assert status == 0
        assert (summary["v"], summary["k"], summary["lambda"], summary["mu"]) == (45, 16, 8, 4)

        status, out = cli("--ignore-caps", "build", *odd9, "--modulus", "2,0,1")
        assert status == 2
        assert json.loads(out)["error"] == "ReducibleModulus"

    def test_invalid_parameters_exit_2(self, cli):
        """Test q = 7 for no-perp prints an error record and exits 2."""
        status, out = cli("build", "--family", "no-perp", "--q", "7", "--r", "2", "--eps", "1")
        record = json.loads(out)
        assert status == 2
        assert record["error"] == "UnsupportedParameters"
        assert record["command"] == "build"


class TestConstructCommand:
    """Tests for srglab construct and verify."""

    def test_construct_then_verify(self, cli):
        """Test a written set file re-verifies with the same numbers."""
        status, out = cli("construct", "--method", "I", "--t", "1", *PETERSEN)
        payload = json.loads(out)
        assert status == 0
        assert payload["measured"] == {"h1": 1, "h2": 3}
        assert payload["type"] == "negative"

        status, out = cli("verify", payload["set_file"])
        again = json.loads(out)
        assert status == 0
        assert again["measured"] == payload["measured"]

    def test_method_iii_with_point(self, cli):
        """Test method III with an explicit nonsquare point."""
        status, out = cli("construct", "--method", "III", "--y", "([1],[0],[0],[0],[2])", *PERP3)
        payload = json.loads(out)
        assert status == 0
        assert payload["measured"] == {"h1": 6, "h2": 3}

    def test_method_iii_sampled(self, cli):
        """Test method III records its seed."""
        status, out = cli("construct", "--method", "III", "--seed", "11", *PERP3)
        assert status == 0
        assert json.loads(out)["seed"] == 11

    def test_method_ii_uses_split_model(self, cli):
        """Test method II builds the split model and emits a K-orbit."""
        status, out = cli("construct", "--method", "II", *PERP3)
        payload = json.loads(out)
        assert status == 0
        assert payload["graph"]["model"] == "split"
        assert payload["set"]["size"] == 9

    def test_missing_t(self, cli):
        """Test method I without --t is a usage error."""
        status, out = cli("construct", "--method", "I", *PETERSEN)
        assert status == 2
        assert "--t" in json.loads(out)["message"]

    def test_dot_only_for_build(self, cli):
        """Test DOT output is refused for construct."""
        status, _ = cli("construct", "--method", "I", "--t", "1", "--format", "dot", *PETERSEN)
        assert status == 2


class TestOtherCommands:
    """Tests for scan, lemmas and fields."""

    def test_scan(self, cli):
        """Test the K-orbit scan of no-perp(3,2,+1)."""
        status, out = cli("scan", *PERP3)
        payload = json.loads(out)
        assert status == 0
        assert payload["orbits"] == 5
        assert len(payload["unions"]) == 31

    def test_lemma(self, cli):
        """Test a single lemma run."""
        status, out = cli("lemmas", "--lemma", "nonvanishing", "--q", "3")
        payload = json.loads(out)
        assert status == 0
        assert payload["lemmas"][0]["passed"] is True

    def test_fields_text(self, cli):
        """Test the field listing."""
        status, out = cli("fields", "list", "--format", "text")
        assert status == 0
        assert "GF(9)" in out
        assert "x^2 + 1" in out


class TestRunConfig:
    """Tests for RunConfig validation and defaults."""

    def test_split_default_for_method_ii(self):
        """Test method II defaults to the split model."""
        rc = RunConfig("construct", "no-odd", 5, 2, 1, method="II")
        assert rc.graph_spec().model is FormModel.SPLIT

    def test_standard_default_for_method_i(self):
        """Test method I defaults to the standard model."""
        rc = RunConfig("construct", "no-odd", 5, 2, 1, method="I", t=1)
        assert rc.graph_spec().model is FormModel.STANDARD

    def test_y_only_with_iii(self):
        """Test --y is refused for other methods."""
        rc = RunConfig("construct", "no-perp", 3, 2, 1, method="I", t=1, y="([1])")
        with pytest.raises(UnsupportedParameters):
            rc.validate()

    def test_verify_needs_file(self):
        """Test verify without a set file is refused."""
        with pytest.raises(UnsupportedParameters):
            RunConfig("verify").validate()
