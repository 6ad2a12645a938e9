"""Tests for the three intriguing-set constructions and the set algebra."""

import numpy as np
import pytest

from srglab.config import Config
from srglab.construct import (
    Expected,
    GroupKind,
    Provenance,
    SetType,
    VertexSet,
    complement,
    construction_I,
    construction_I_complement,
    construction_I_difference,
    construction_III,
    difference,
    disjoint_union,
    group_orbits,
    legal_t,
    m_k_sets,
    orbit_union_sets,
    read_set_file,
    sample_y,
    table_set_algebra,
    write_set_file,
)
from srglab.construct.nonsingular import construction_III_sizes
from srglab.construct.singular import witt_invariant_numbers
from srglab.exceptions import (
    MixedTypes,
    NotDisjoint,
    NotNested,
    UnsupportedParameters,
    WrongFamily,
    WrongSquareClass,
)
from srglab.geometry import coordinate_subspace
from srglab.srg import GraphSpec, build_graph, measure_params
from srglab.verify import check_intriguing


def _split(family, q, r, eps):
    return build_graph(GraphSpec(family, q, r, eps, "split"), Config(show_progress=False))


class TestSingularSubspaces:
    """Tests for perps of totally singular subspaces."""

    def test_legal_t(self):
        """Test t = r is dropped in odd dimension with eps = -1."""
        assert legal_t(GraphSpec("no-perp", 3, 2, 1)) == [1, 2]
        assert legal_t(GraphSpec("no-perp", 3, 2, -1)) == [1]
        assert legal_t(GraphSpec("no-even2", 2, 3, 1)) == [1, 2]

    def test_petersen_perp(self, petersen):
        """Test W_1^perp in the Petersen graph has 6 vertices and numbers (1, 3)."""
        y = construction_I(petersen, 1)
        assert y.size == 6
        report = check_intriguing(petersen, y)
        assert (report.h1_measured, report.h2_measured) == (1, 3)
        assert report.set_type is SetType.NEGATIVE
        assert report.passed

    def test_perp5(self, perp5):
        """Test no-perp(5,2,+1) at t = 1 gives (10, 15), negative."""
        report = check_intriguing(perp5, construction_I(perp5, 1))
        assert (report.h1_measured, report.h2_measured) == (10, 15)
        assert report.set_type is SetType.NEGATIVE
        assert report.matches_expected

    def test_odd5(self, odd5):
        """Test no-odd(5,2,+1) at t = 1 gives (44, 30), positive."""
        report = check_intriguing(odd5, construction_I(odd5, 1))
        assert (report.h1_measured, report.h2_measured) == (44, 30)
        assert report.set_type is SetType.POSITIVE

    @pytest.mark.parametrize("t", [1, 2])
    def test_every_legal_t_passes(self, perp3, t):
        """Test the perp, its complement and the attached checks agree."""
        assert check_intriguing(perp3, construction_I(perp3, t)).passed
        assert check_intriguing(perp3, construction_I_complement(perp3, t)).passed

    def test_flag_difference(self, perp3):
        """Test the flag difference uses the derived numbers (0, 3)."""
        y = construction_I_difference(perp3, 1)
        report = check_intriguing(perp3, y)
        assert (y.expected.h1, y.expected.h2) == (0, 3)
        assert y.expected.printed == (0, 6)
        assert report.matches_expected
        assert report.matches_printed is False

    def test_illegal_t(self, perp3):
        """Test t beyond the chain is rejected."""
        with pytest.raises(UnsupportedParameters):
            construction_I(perp3, 3)

    def test_subspace_must_be_singular(self, perp3):
        """Test a nonsingular coordinate point is refused."""
        w = coordinate_subspace(perp3.field, perp3.form.dim, [2])
        with pytest.raises(UnsupportedParameters):
            construction_I(perp3, subspace=w)

    def test_witt_independence(self, petersen):
        """Test every singular point of the elliptic quadric gives the same numbers."""
        assert witt_invariant_numbers(petersen, 1) == {(1, 3)}


class TestGroupOrbits:
    """Tests for the K- and L-orbit constructions."""

    def test_k_orbits_perp3(self, perp3_split):
        """Test K splits no-perp(3,2,+1) into 5 negative orbits of size 9."""
        orbits = group_orbits(GroupKind.K, perp3_split)
        assert len(orbits) == 5
        assert {o.size for o in orbits} == {9}
        for orbit in orbits:
            report = check_intriguing(perp3_split, orbit)
            assert (report.h1_measured, report.h2_measured) == (0, 3)
            assert report.set_type is SetType.NEGATIVE

    def test_orbits_partition(self, perp3_split):
        """Test the orbits are disjoint and cover X."""
        orbits = group_orbits("K", perp3_split)
        counts = np.zeros(perp3_split.v, dtype=int)
        for orbit in orbits:
            counts[orbit.indices] += 1
        assert np.all(counts == 1)

    def test_orbit_shape_mismatch_is_noted(self, perp3_split, monkeypatch):
        """Test orbits off their closed-form shape carry a note that fails the report."""
        monkeypatch.setattr("srglab.construct.groups.expected_orbit_shape", lambda kind, g: (4, 9))
        orbits = group_orbits(GroupKind.K, perp3_split)
        note = "K-orbit shape: 5 orbits of sizes [9], expected 4 of size 9"
        assert all(o.notes == [note] for o in orbits)

        report = check_intriguing(perp3_split, orbits[0])
        assert (report.h1_measured, report.h2_measured) == (0, 3)
        assert report.construction_ok is False
        assert not report.passed
        assert note in report.to_record()["notes"]

        union = disjoint_union(orbits[0], orbits[1])
        assert union.notes == [note]
        assert complement(orbits[0]).notes == [note]

    def test_matching_shape_has_no_notes(self, perp3_split):
        """Test orbits of the expected shape carry no notes."""
        orbits = group_orbits(GroupKind.K, perp3_split)
        assert all(not o.notes for o in orbits)
        assert check_intriguing(perp3_split, orbits[0]).construction_ok is None

    def test_k_needs_split_model(self, perp3):
        """Test K refuses the standard coordinates."""
        with pytest.raises(WrongFamily):
            group_orbits(GroupKind.K, perp3)

    def test_k_orbit_unions_plus(self, odd5_split):
        """Test no-odd(5,2,+1) gives the x = 0 orbit and six unions."""
        sets = orbit_union_sets(odd5_split)
        assert len(sets) == 7
        numbers = set()
        for y in sets:
            report = check_intriguing(odd5_split, y)
            assert report.passed
            numbers.add((report.h1_measured, report.h2_measured))
        assert numbers == {(24, 10), (34, 20)}

    def test_k_orbit_unions_minus(self, odd5_minus_split):
        """Test no-odd(5,2,-1) unions have numbers (4, 20)."""
        for y in orbit_union_sets(odd5_minus_split):
            report = check_intriguing(odd5_minus_split, y)
            assert (report.h1_measured, report.h2_measured) == (4, 20)
            assert report.set_type is SetType.NEGATIVE

    def test_l_orbits_even3(self):
        """Test L splits no-even3(3,3,+1) into 13 orbits with numbers (0, 3)."""
        g = _split("no-even3", 3, 3, 1)
        orbits = group_orbits(GroupKind.L, g)
        assert len(orbits) == 13
        assert {o.size for o in orbits} == {9}
        report = check_intriguing(g, orbits[0])
        assert (report.h1_measured, report.h2_measured) == (0, 3)
        assert report.passed

    def test_l_orbits_even2(self):
        """Test L splits no-even2(2,3,+1) into 7 positive orbits of size 4."""
        g = _split("no-even2", 2, 3, 1)
        orbits = group_orbits(GroupKind.L, g)
        assert len(orbits) == 7
        for orbit in orbits:
            report = check_intriguing(g, orbit)
            assert (report.h1_measured, report.h2_measured) == (3, 2)
            assert report.set_type is SetType.POSITIVE


class TestNonsingularPoints:
    """Tests for the nonsingular-point construction."""

    def test_perp5(self, perp5):
        """Test a nonsquare y in no-perp(5,2,+1) gives 130 vertices, (30, 20)."""
        y = construction_III(perp5, (1, 0, 0, 0, 2))
        assert y.size == 130
        report = check_intriguing(perp5, y)
        assert (report.h1_measured, report.h2_measured) == (30, 20)
        assert report.set_type is SetType.POSITIVE

    def test_even3(self, even3):
        """Test no-even3(3,3,+1) with Q(y) = 2 gives (12, 15), negative."""
        report = check_intriguing(even3, construction_III(even3, (1, 2, 0, 0, 0, 0)))
        assert (report.h1_measured, report.h2_measured) == (12, 15)
        assert report.set_type is SetType.NEGATIVE

    def test_vertex_is_wrong_class(self, perp5):
        """Test a vertex of the graph has the wrong square class."""
        with pytest.raises(WrongSquareClass):
            construction_III(perp5, perp5.vertices[0])

    def test_singular_y(self, perp5):
        """Test a singular y is refused."""
        with pytest.raises(WrongSquareClass):
            construction_III(perp5, (1, 0, 0, 0, 0))

    def test_wrong_family(self, odd3):
        """Test no-odd has no nonsingular-point construction."""
        with pytest.raises(WrongFamily):
            construction_III(odd3, (1, 0, 0, 0, 2))

    def test_sampled_sizes_constant(self, perp5):
        """Test seeded samples all give sets of size 130 that pass."""
        ys = sample_y(perp5, 3, seed=7)
        assert ys == sample_y(perp5, 3, seed=7)
        for y in ys:
            vset = construction_III(perp5, y)
            assert vset.size == 130
            assert check_intriguing(perp5, vset).passed
        assert construction_III_sizes(perp5, ys) == [130, 130, 130]


class TestSetAlgebra:
    """Tests for complements, differences and unions."""

    def test_complement_numbers(self, perp5):
        """Test the complement of a (10, 15) set has (45, 50)."""
        y = construction_I(perp5, 1)
        comp = complement(y, k=60)
        assert (comp.expected.h1, comp.expected.h2) == (45, 50)
        assert check_intriguing(perp5, comp).passed

    def test_union_of_orbits(self, perp3_split):
        """Test a union of two negative orbits adds up."""
        a, b = group_orbits(GroupKind.K, perp3_split)[:2]
        union = disjoint_union(a, b)
        assert (union.expected.h1, union.expected.h2) == (3, 6)
        assert check_intriguing(perp3_split, union).passed

    def test_not_disjoint(self, petersen):
        """Test a set cannot be united with itself."""
        y = construction_I(petersen, 1)
        with pytest.raises(NotDisjoint):
            disjoint_union(y, y)

    def test_mixed_types(self, petersen):
        """Test sets of different types cannot be united."""
        spec = petersen.spec
        a = VertexSet(spec, 10, [0], Provenance("a"), Expected(0, 1, SetType.POSITIVE))
        b = VertexSet(spec, 10, [1], Provenance("b"), Expected(0, 1, SetType.NEGATIVE))
        with pytest.raises(MixedTypes):
            disjoint_union(a, b)

    def test_not_nested(self, petersen):
        """Test difference needs inner inside outer."""
        spec = petersen.spec
        outer = VertexSet(spec, 10, [0, 1], Provenance("outer"))
        inner = VertexSet(spec, 10, [2], Provenance("inner"))
        with pytest.raises(NotNested):
            difference(outer, inner)

    def test_empty_set_needs_trivial(self, petersen):
        """Test the empty set is only built when marked trivial."""
        with pytest.raises(UnsupportedParameters):
            VertexSet(petersen.spec, 10, [], Provenance("empty"))
        empty = VertexSet(petersen.spec, 10, [], Provenance("empty"), trivial=True)
        report = check_intriguing(petersen, empty)
        assert report.h1_measured == report.h2_measured == 0

    def test_unsorted_indices(self, petersen):
        """Test indices must increase."""
        with pytest.raises(UnsupportedParameters):
            VertexSet(petersen.spec, 10, [3, 1], Provenance("bad"))

    def test_unknown_operation(self, petersen):
        """Test the dispatcher rejects unknown operations."""
        y = construction_I(petersen, 1)
        with pytest.raises(UnsupportedParameters):
            table_set_algebra("intersection", y)

    def test_provenance_str(self):
        """Test parameters render sorted by name."""
        assert str(Provenance("construction_I", {"t": 1, "basis": 2})) == "construction_I(basis=2, t=1)"


class TestSetFiles:
    """Tests for writing and reading set files."""

    def test_round_trip(self, petersen, temp_output_dir):
        """Test a written set reads back with its expected values."""
        y = construction_I(petersen, 1)
        path = write_set_file(temp_output_dir / "perp.set", y, petersen)
        lines = path.read_text().splitlines()
        assert lines[0] == "# graph: no-even2 q=2 r=2 eps=-1"
        assert lines[1].startswith("# meta: ")
        assert len(lines) == 2 + y.size
        back = read_set_file(path, petersen)
        assert np.array_equal(back.indices, y.indices)
        assert back.expected == y.expected

    def test_wrong_graph(self, petersen, k33, temp_output_dir):
        """Test a set file is refused by another graph."""
        path = write_set_file(temp_output_dir / "perp.set", construction_I(petersen, 1), petersen)
        with pytest.raises(WrongFamily):
            read_set_file(path, k33)

    def test_non_vertex_line(self, petersen, temp_output_dir):
        """Test a singular point in a set file is reported."""
        path = temp_output_dir / "bad.set"
        path.write_text("# graph: no-even2 q=2 r=2 eps=-1\n([1], [0], [0], [0])\n")
        with pytest.raises(UnsupportedParameters):
            read_set_file(path, petersen)

    def test_malformed_header(self, petersen, temp_output_dir):
        """Test a file without a graph header is refused."""
        path = temp_output_dir / "bad.set"
        path.write_text("([1], [1], [0], [0])\n")
        with pytest.raises(UnsupportedParameters):
            read_set_file(path, petersen)


class TestHermitianUnions:
    """Tests for the sets M_k of the hermitian graph."""

    @pytest.mark.slow
    @pytest.mark.parametrize("choice", [0, 1])
    def test_m_k_sets(self, nu, choice):
        """Test nu(2,3) gives 21 negative sets M_k of size 32 with (15, 24)."""
        sets = m_k_sets(nu, choice)
        assert len(sets) == 21
        for y in sets:
            assert y.size == 32
            assert not y.notes
            report = check_intriguing(nu, y, eigen=False)
            assert (report.h1_measured, report.h2_measured) == (15, 24)
            assert report.set_type is SetType.NEGATIVE
            assert report.passed
            assert report.matches_printed is False


class TestFieldRepresentation:
    """Tests that results do not depend on the modulus of the coordinate field."""

    @pytest.fixture(scope="class")
    def graphs(self):
        """no-odd(9,1,+1) over GF(9) with the default modulus and with x^2 + x + 2."""
        config = Config(show_progress=False, use_cache=False, ignore_caps=True)
        default = build_graph(GraphSpec("no-odd", 9, 1, 1), config)
        other = build_graph(GraphSpec("no-odd", 9, 1, 1, modulus=(2, 1, 1)), config)
        return default, other

    def test_fields_differ(self, graphs):
        """Test the two builds use x^2 + 1 and x^2 + x + 2."""
        default, other = graphs
        assert default.field.modulus == (1, 0, 1)
        assert other.field.modulus == (2, 1, 1)

    def test_same_parameters(self, graphs):
        """Test both moduli give srg(45, 16, 8, 4)."""
        default, other = graphs
        assert measure_params(default).as_tuple() == (45, 16, 8, 4)
        assert measure_params(other) == measure_params(default)

    def test_same_singular_construction(self, graphs):
        """Test W_1^perp & X gives 9 vertices with (8, 2), positive, under both moduli."""
        reports = [check_intriguing(g, construction_I(g, 1)) for g in graphs]
        for report in reports:
            assert report.set_size == 9
            assert (report.h1_measured, report.h2_measured) == (8, 2)
            assert report.set_type is SetType.POSITIVE
            assert report.passed

    def test_set_file_keeps_modulus(self, graphs, temp_output_dir):
        """Test a set file over the second modulus reads back only against its own graph."""
        default, other = graphs
        y = construction_I(other, 1)
        path = write_set_file(temp_output_dir / "tangent.set", y, other)
        assert path.read_text().splitlines()[0] == (
            "# graph: no-odd q=9 r=1 eps=+1 modulus=x^2 + x + 2"
        )
        back = read_set_file(path, other)
        assert np.array_equal(back.indices, y.indices)
        with pytest.raises(WrongFamily):
            read_set_file(path, default)
