"""Tests for graph specs, builds and parameter measurement."""

import networkx as nx
import numpy as np
import pytest

from srglab.config import Config
from srglab.exceptions import (
    IrrationalEigenvalues,
    NotRegular,
    NotStronglyRegular,
    ReducibleModulus,
    UnsupportedParameters,
)
from srglab.srg import (
    Graph,
    GraphSpec,
    SrgParams,
    build_graph,
    complement_relation,
    expected_params,
    graph_summary,
    line_singular_counts,
    measure_params,
    srg_eigenvalues,
    tangent_points_on_line,
    validate_spec,
)


class TestGraphSpec:
    """Tests for GraphSpec validation and labels."""

    def test_label_and_key(self):
        """Test label and key render every parameter."""
        spec = GraphSpec("no-perp", 5, 2, -1, "split")
        assert spec.label == "no-perp q=5 r=2 eps=-1 model=split"
        assert spec.key == "no-perp_q5_r2_m_split_part1"

    def test_part_only_for_even3(self):
        """Test part is rejected outside no-even3."""
        with pytest.raises(UnsupportedParameters):
            GraphSpec("no-perp", 3, 2, 1, part=2)

    def test_nu_takes_no_eps(self):
        """Test nu rejects an eps."""
        with pytest.raises(UnsupportedParameters):
            GraphSpec("nu", 2, 3, 1)

    def test_hashable(self):
        """Test equal specs hash equally."""
        assert {GraphSpec("no-odd", 3, 2, 1): 1}[GraphSpec("no-odd", 3, 2, 1)] == 1

    def test_modulus_in_label_and_key(self):
        """Test a non-default modulus is part of the label, key and record."""
        spec = GraphSpec("no-odd", 9, 1, 1, modulus=[2, 1, 1])
        assert spec.modulus == (2, 1, 1)
        assert spec.label == "no-odd q=9 r=1 eps=+1 modulus=x^2 + x + 2"
        assert spec.key == "no-odd_q9_r1_p_standard_part1_mod211"
        assert spec.to_dict()["modulus"] == [2, 1, 1]
        assert spec != GraphSpec("no-odd", 9, 1, 1)

    def test_modulus_rejected(self):
        """Test reducible moduli and moduli for prime fields are refused."""
        with pytest.raises(ReducibleModulus):
            GraphSpec("no-odd", 9, 1, 1, modulus=(2, 0, 1))
        with pytest.raises(UnsupportedParameters):
            GraphSpec("no-odd", 3, 2, 1, modulus=(1, 1))


class TestFormulas:
    """Tests for parameter formulas and eigenvalues."""

    @pytest.mark.parametrize(
        "family,q,r,eps,params",
        [
            ("no-even2", 2, 2, -1, (10, 3, 0, 1)),
            ("no-perp", 5, 2, 1, (325, 60, 15, 10)),
            ("no-even3", 3, 3, 1, (117, 36, 15, 9)),
            ("no-odd", 5, 2, 1, (325, 144, 68, 60)),
            ("no-odd", 5, 2, -1, (300, 104, 28, 40)),
            ("nu", 2, 3, None, (672, 495, 366, 360)),
        ],
    )
    def test_anchor_values(self, family, q, r, eps, params):
        """Test the closed forms at the anchor tuples."""
        assert expected_params(GraphSpec(family, q, r, eps)).as_tuple() == params

    def test_petersen_eigenvalues(self):
        """Test srg(10,3,0,1) has eigenvalues 1 and -2."""
        assert srg_eigenvalues(10, 3, 0, 1) == (1, -2)

    def test_irrational_eigenvalues(self):
        """Test the pentagon parameters give irrational eigenvalues."""
        with pytest.raises(IrrationalEigenvalues):
            srg_eigenvalues(5, 2, 0, 1)

    def test_params_identities(self):
        """Test e+ e- = mu - k and e+ + e- = lambda - mu are enforced."""
        with pytest.raises(IrrationalEigenvalues):
            SrgParams(10, 3, 0, 1, 2, -2)

    def test_vertex_cap(self):
        """Test max_vertices rejects a large graph unless caps are ignored."""
        config = Config()
        config.max_vertices = 100
        spec = GraphSpec("no-perp", 5, 2, 1)
        with pytest.raises(UnsupportedParameters):
            validate_spec(spec, config)
        config.ignore_caps = True
        assert validate_spec(spec, config).v == 325

    def test_r_cap(self):
        """Test max_r caps r per q."""
        config = Config()
        config.max_r = {3: 2}
        with pytest.raises(UnsupportedParameters):
            validate_spec(GraphSpec("no-perp", 3, 3, 1), config)


class TestBuild:
    """Tests for explicit graph builds."""

    def test_petersen(self, petersen):
        """Test no-even2(2,2,-1) is the Petersen graph."""
        assert measure_params(petersen).as_tuple() == (10, 3, 0, 1)
        assert nx.is_isomorphic(petersen.to_networkx(), nx.petersen_graph())

    def test_k33(self, k33):
        """Test no-even2(2,2,+1) is K_{3,3}."""
        assert measure_params(k33).as_tuple() == (6, 3, 0, 3)
        assert nx.is_isomorphic(k33.to_networkx(), nx.complete_bipartite_graph(3, 3))

    def test_perp5(self, perp5):
        """Test no-perp(5,2,+1) measures (325, 60, 15, 10)."""
        assert measure_params(perp5).as_tuple() == (325, 60, 15, 10)

    def test_odd5(self, odd5):
        """Test no-odd(5,2,+1) measures (325, 144, 68, 60)."""
        assert measure_params(odd5).as_tuple() == (325, 144, 68, 60)

    def test_even3(self, even3):
        """Test no-even3(3,3,+1) measures (117, 36, 15, 9)."""
        assert measure_params(even3).as_tuple() == (117, 36, 15, 9)

    def test_adjacency_symmetric(self, perp3):
        """Test the adjacency is symmetric with an empty diagonal."""
        assert perp3.is_symmetric()

    def test_build_is_deterministic(self, petersen):
        """Test two builds give identical packed rows."""
        again = build_graph(petersen.spec, Config(show_progress=False))
        assert np.array_equal(again.packed, petersen.packed)
        assert np.array_equal(again.vertices, petersen.vertices)

    def test_row_block_independent(self, perp3):
        """Test the block size does not change the adjacency."""
        config = Config(show_progress=False, row_block=7)
        again = build_graph(perp3.spec, config)
        assert np.array_equal(again.packed, perp3.packed)

    @pytest.mark.slow
    def test_nu(self, nu):
        """Test the hermitian graph measures (672, 495, 366, 360)."""
        assert measure_params(nu).as_tuple() == (672, 495, 366, 360)


class TestGraphQueries:
    """Tests for counting, lookup and export."""

    def test_degrees(self, petersen):
        """Test every Petersen vertex has degree 3."""
        assert set(petersen.degrees().tolist()) == {3}

    def test_count_into(self, petersen):
        """Test |N(P) & N(0)| is k at 0 and lambda = 0 on N(0)."""
        nbrs = petersen.neighbours(0)
        counts = petersen.count_into(nbrs)
        assert counts[0] == 3
        assert np.all(counts[nbrs] == 0)

    def test_index_of(self, petersen):
        """Test lookup of vertices and of a non-vertex."""
        assert np.array_equal(petersen.index_of(petersen.vertices), np.arange(10))
        assert petersen.index_of(np.zeros((1, 4), dtype=np.int64))[0] == -1

    def test_to_dot(self, petersen):
        """Test the DOT export lists 10 nodes and 15 edges."""
        dot = petersen.to_dot()
        assert dot.startswith("graph G {")
        assert dot.count(" -- ") == 15
        assert dot.count("label=") == 10

    def test_summary(self, petersen):
        """Test the JSON summary flags a match."""
        summary = graph_summary(petersen, measure_params(petersen), expected_params(petersen.spec))
        assert summary["matches_expected"] is True
        assert (summary["v"], summary["k"], summary["lambda"], summary["mu"]) == (10, 3, 0, 1)


class TestMeasurementErrors:
    """Tests for the regularity checks."""

    def test_not_regular(self, petersen):
        """Test a path on three vertices is rejected."""
        adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=bool)
        g = Graph.from_adjacency(petersen.spec, adj)
        with pytest.raises(NotRegular):
            measure_params(g)

    def test_not_strongly_regular(self, petersen):
        """Test the 6-cycle is rejected with an offending pair."""
        adj = np.zeros((6, 6), dtype=bool)
        for i in range(6):
            adj[i, (i + 1) % 6] = adj[(i + 1) % 6, i] = True
        g = Graph.from_adjacency(petersen.spec, adj)
        with pytest.raises(NotStronglyRegular) as info:
            measure_params(g)
        assert info.value.adjacent is False


class TestGeometricOracles:
    """Tests for the complement relation and the tangent-line oracle."""

    def test_complement_relation(self, odd3, perp3):
        """Test no-odd(3,2,+1) is the complement of no-perp(3,2,+1)."""
        assert complement_relation(odd3, perp3)

    def test_complement_relation_minus(self):
        """Test the complement relation for eps = -1."""
        config = Config(show_progress=False)
        odd = build_graph(GraphSpec("no-odd", 3, 2, -1), config)
        perp = build_graph(GraphSpec("no-perp", 3, 2, -1), config)
        assert complement_relation(odd, perp)

    def test_not_complements(self, odd5, perp5):
        """Test q = 5 graphs are not complements."""
        assert not complement_relation(odd5, perp5)

    @staticmethod
    def _assert_tangent_adjacency(g, ii, jj):
        counts = line_singular_counts(g.form, g.vertices[ii], g.vertices[jj])
        assert np.array_equal(g.adjacency()[ii, jj], counts == 1)

    def test_tangent_criterion_matches_lines(self, odd3):
        """Test adjacency in no-odd(3,2,+1) is one singular point on the line."""
        adj = odd3.adjacency()
        pairs = [(i, j) for i in range(0, odd3.v, 3) for j in range(odd3.v) if i != j]
        xs = odd3.vertices[[i for i, _ in pairs]]
        ys = odd3.vertices[[j for _, j in pairs]]
        counts = line_singular_counts(odd3.form, xs, ys)
        for (i, j), count in zip(pairs, counts, strict=True):
            assert adj[i, j] == (count == 1)

    @pytest.mark.parametrize("fixture", ["odd5", "odd5_minus_split"])
    def test_tangent_criterion_all_pairs_q5(self, fixture, request):
        """Test the tangent criterion on every ordered pair of no-odd(5,2,eps)."""
        g = request.getfixturevalue(fixture)
        ii, jj = np.nonzero(~np.eye(g.v, dtype=bool))
        assert len(ii) == g.v * (g.v - 1)
        self._assert_tangent_adjacency(g, ii, jj)

    def test_tangent_points_on_line(self, odd3):
        """Test tangent_points_on_line counts one singular point exactly on edges."""
        adj = odd3.adjacency()
        first = odd3.point(0)
        for j in range(1, odd3.v):
            count = tangent_points_on_line(odd3.form, first, odd3.point(j))
            assert count in (0, 1, 2)
            assert adj[0, j] == (count == 1)

    @pytest.mark.slow
    def test_hermitian_tangent_criterion(self, nu):
        """Test H(x,y)^(q+1) = h(x) h(y) agrees with tangent lines on sampled nu pairs."""
        rng = np.random.default_rng(36)
        ii = rng.integers(0, nu.v, 2500)
        jj = rng.integers(0, nu.v, 2500)
        keep = ii != jj
        ii, jj = ii[keep], jj[keep]
        assert len(ii) >= 2000
        self._assert_tangent_adjacency(nu, ii, jj)

        adj = nu.adjacency()
        for i, j in zip(ii[:40], jj[:40], strict=True):
            count = tangent_points_on_line(nu.form, nu.point(int(i)), nu.point(int(j)))
            assert adj[i, j] == (count == 1)
