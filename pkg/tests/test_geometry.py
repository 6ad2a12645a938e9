"""Tests for forms, points and subspaces."""

import numpy as np
import pytest

from srglab.exceptions import DimensionMismatch, UnsupportedParameters
from srglab.geometry import (
    Family,
    FormKind,
    ProjectivePoint,
    QuadraticFormSpec,
    Subspace,
    Vector,
    all_subspaces,
    canonical_form,
    coordinate_subspace,
    enumerate_vertices,
    eval_Q,
    format_coords,
    hermitian_forms,
    is_totally_singular,
    parse_coords,
    perp_basis,
    polar_B,
    prime_power,
)
from srglab.geometry.matrix import all_vectors
from srglab.geometry.points import projective_points
from srglab.gf import field_create
from srglab.srg import GraphSpec, expected_params


class TestCanonicalForms:
    """Tests for the canonical forms of each family."""

    def test_prime_power(self):
        """Test q = 9 and q = 64 decompose."""
        assert prime_power(9) == (3, 2)
        assert prime_power(64) == (2, 6)
        with pytest.raises(UnsupportedParameters):
            prime_power(6)

    @pytest.mark.parametrize(
        "family,q,r,eps,kind,dim",
        [
            ("no-perp", 3, 2, 1, FormKind.PARABOLIC, 5),
            ("no-odd", 5, 2, -1, FormKind.PARABOLIC, 5),
            ("no-even2", 2, 3, 1, FormKind.HYPERBOLIC, 6),
            ("no-even2", 2, 3, -1, FormKind.ELLIPTIC, 6),
            ("no-even3", 3, 2, -1, FormKind.ELLIPTIC, 4),
        ],
    )
    def test_kind_and_dimension(self, family, q, r, eps, kind, dim):
        """Test each family gets the expected form type."""
        form = canonical_form(family, q, r, eps)
        assert isinstance(form, QuadraticFormSpec)
        assert form.kind is kind
        assert form.dim == dim

    def test_elliptic_is_anisotropic_on_last_pair(self):
        """Test the elliptic quadric in PG(3, 2) has q^2 + 1 = 5 points."""
        form = canonical_form("no-even2", 2, 2, -1)
        points = projective_points(form.field, form.dim)
        assert int((form.values(points) == 0).sum()) == 5

    def test_hyperbolic_point_count(self):
        """Test the hyperbolic quadric in PG(3, 3) has (q + 1)^2 = 16 points."""
        form = canonical_form("no-even3", 3, 2, 1)
        points = projective_points(form.field, form.dim)
        assert int((form.values(points) == 0).sum()) == 16

    def test_invalid_family_parameters(self):
        """Test the validity table rejects unsupported tuples."""
        with pytest.raises(UnsupportedParameters):
            canonical_form("no-perp", 7, 2, 1)
        with pytest.raises(UnsupportedParameters):
            canonical_form("no-even2", 4, 2, 1)
        with pytest.raises(UnsupportedParameters):
            canonical_form("no-odd", 3, 1, -1)
        with pytest.raises(UnsupportedParameters):
            canonical_form("nu", 2, 2)

    def test_split_needs_hyperbolic(self):
        """Test the split model is refused for elliptic even-dimensional forms."""
        with pytest.raises(UnsupportedParameters):
            canonical_form("no-even2", 2, 3, -1, "split")

    def test_values_match_eval_Q(self):
        """Test the vectorised Q agrees with direct evaluation."""
        form = canonical_form("no-perp", 3, 2, 1)
        rows = all_vectors(form.field, form.dim)
        values = form.values(rows)
        for row, value in zip(rows[::17], values[::17], strict=True):
            assert eval_Q(form, Vector.of(form.field, row)).value == value

    def test_polar_is_symmetric(self):
        """Test B(x, y) = B(y, x) and agrees with Q(x + y) - Q(x) - Q(y)."""
        form = canonical_form("no-even2", 2, 2, -1)
        rows = all_vectors(form.field, form.dim)
        B = form.polar(rows, rows)
        assert np.array_equal(B, B.T)
        x, y = Vector.of(form.field, rows[5]), Vector.of(form.field, rows[11])
        assert polar_B(form, x, y).value == B[5, 11]

    def test_dimension_mismatch(self):
        """Test vectors of the wrong length are rejected."""
        form = canonical_form("no-perp", 3, 2, 1)
        with pytest.raises(DimensionMismatch):
            form.values(np.zeros((1, 4), dtype=np.int64))


class TestHermitianSpace:
    """Tests for the GF(64)^2 hermitian space."""

    def test_fields(self):
        """Test the tower GF(2) < GF(4) < GF(64)."""
        space = canonical_form("nu", 2, 3)
        assert space.big_field.order == 64
        assert space.mid_field.order == 4
        assert space.base_field.order == 2

    def test_h_matches_H_diagonal_trace(self):
        """Test h values lie in GF(q) and agree with the scalar evaluation."""
        space = canonical_form("nu", 2, 3)
        big = space.big_field
        a = Vector((3, 17), big)
        b = Vector((5, 1), big)
        H, h = hermitian_forms(space, a, b)
        assert H.field.order == 4
        assert h.field.order == 2
        assert space.emb_base(h.value) == space.h_values(np.array([3]), np.array([17]))[0]


class TestPoints:
    """Tests for projective points and vertex enumeration."""

    def test_projective_point_count(self):
        """Test PG(2, 3) has 13 points."""
        assert len(projective_points(field_create(3), 3)) == 13

    def test_normalization(self):
        """Test a point is normalized to leading coefficient 1."""
        f = field_create(5)
        point = ProjectivePoint.of(Vector((0, 3, 1), f))
        assert point.rep.coords == (0, 1, 2)

    def test_zero_vector_rejected(self):
        """Test the zero vector spans no point."""
        with pytest.raises(UnsupportedParameters):
            ProjectivePoint.of(Vector((0, 0), field_create(3)))

    @pytest.mark.parametrize(
        "family,q,r,eps",
        [
            ("no-perp", 3, 2, 1),
            ("no-perp", 3, 2, -1),
            ("no-even3", 3, 2, 1),
            ("no-even2", 2, 3, -1),
            ("no-odd", 5, 2, -1),
        ],
    )
    def test_vertex_count_matches_formula(self, family, q, r, eps):
        """Test |X| equals v from the parameter formulas."""
        vertices = enumerate_vertices(family, q, r, eps)
        assert len(vertices) == expected_params(GraphSpec(family, q, r, eps)).v

    def test_vertices_sorted(self):
        """Test vertices come in lexicographic order."""
        vertices = enumerate_vertices(Family.NO_EVEN2, 2, 2, -1)
        coords = [p.rep.coords for p in vertices]
        assert coords == sorted(coords)

    def test_text_round_trip(self):
        """Test format_coords and parse_coords are inverse over GF(9)."""
        f = field_create(3, 2)
        coords = (0, 1, 5, 8)
        text = format_coords(f, coords)
        assert text == "([0,0], [1,0], [2,1], [2,2])"
        assert parse_coords(text, f) == coords

    def test_malformed_text(self):
        """Test a vertex without parentheses is rejected."""
        with pytest.raises(UnsupportedParameters):
            parse_coords("[1], [0]", field_create(3))


class TestSubspaces:
    """Tests for subspaces and perps."""

    def test_perp_of_point(self):
        """Test the perp of a point in a 5-space is a hyperplane."""
        form = canonical_form("no-perp", 3, 2, 1)
        point = ProjectivePoint.of(Vector((1, 0, 0, 0, 0), form.field))
        perp = perp_basis(form, point)
        assert perp.dim_sub == 4

    def test_flag_is_totally_singular(self):
        """Test <e_0, e_1> is totally singular for the standard parabolic form."""
        form = canonical_form("no-perp", 3, 2, 1)
        w = coordinate_subspace(form.field, form.dim, [0, 1])
        assert is_totally_singular(form, w)
        assert is_totally_singular(form, w, enumerate_all=True)

    def test_non_singular_subspace(self):
        """Test <e_2> is not totally singular (Q = x_2^2 there)."""
        form = canonical_form("no-perp", 3, 2, 1)
        w = coordinate_subspace(form.field, form.dim, [2])
        assert not is_totally_singular(form, w)

    def test_all_subspaces_count(self):
        """Test GF(2)^4 has 35 two-dimensional subspaces."""
        assert len(all_subspaces(field_create(2), 4, 2)) == 35

    def test_perp_dimensions_random(self):
        """Test dim S + dim S^perp = 5 and S^perp^perp = S for randomly spanned subspaces."""
        form = canonical_form("no-perp", 3, 2, 1)
        rng = np.random.default_rng(20)
        for n in range(20):
            rows = rng.integers(0, 3, size=(1 + n % 4, form.dim))
            s = Subspace.span(form.field, form.dim, [tuple(int(c) for c in row) for row in rows])
            if s.dim_sub == 0:
                continue
            perp = perp_basis(form, s)
            assert s.dim_sub + perp.dim_sub == 5
            assert perp_basis(form, perp).same_span(s)

    def test_dependent_basis_rejected(self):
        """Test a dependent basis raises."""
        f = field_create(3)
        with pytest.raises(DimensionMismatch):
            Subspace(f, 3, ((1, 0, 0), (2, 0, 0)))

    def test_span_canonical(self):
        """Test two bases of one subspace have the same span."""
        f = field_create(3)
        a = Subspace.span(f, 3, [(1, 1, 0), (0, 1, 0)])
        b = Subspace.span(f, 3, [(1, 0, 0), (0, 2, 0)])
        assert a.same_span(b)
