from itertools import permutations

import pytest

from core.coeffs import LocalizedScalar
from core.errors import LabelError
from core.grassmann import GeneratorId, coefficient_of, degree_split
from core.pentagon import LHS, RHS
from core.weights import (
    DeformationParams,
    TetrahedronRef,
    c_factor,
    epsilon,
    face_product,
    weight_f,
    weight_f_factored,
    weight_g,
    weight_h,
)

PENTAGON_TETRAHEDRA = [TetrahedronRef.of(1, 2, 3, 4), TetrahedronRef.of(1, 2, 3, 5), TetrahedronRef.of(1, 2, 4, 5),
                       TetrahedronRef.of(1, 3, 4, 5), TetrahedronRef.of(2, 3, 4, 5)]


def a(*labels):
    return GeneratorId.face(*labels)


class TestTetrahedron:
    def test_sign(self):
        assert TetrahedronRef.of(1, 2, 3, 4).sign == 1
        assert TetrahedronRef.of(2, 1, 3, 4).sign == -1
        assert TetrahedronRef.of(2, 3, 4, 1).sign == -1

    def test_faces_follow_vertex_order(self):
        t = TetrahedronRef.of(1, 2, 3, 5)
        assert [str(g) for g in t.faces()] == ["a[123]", "a[125]", "a[135]", "a[235]"]

    def test_rejects_repeated_or_unknown_labels(self):
        with pytest.raises(LabelError):
            TetrahedronRef.of(1, 1, 2, 3)
        with pytest.raises(LabelError):
            TetrahedronRef.of(1, 2, 3, 6)

    def test_pentagon_sides_use_all_five(self):
        assert sorted(str(t) for t in LHS.tetrahedra + RHS.tetrahedra) == [str(t) for t in PENTAGON_TETRAHEDRA]


class TestEpsilon:
    @pytest.mark.parametrize("vertices, expected", [
        ((1, 2, 3, 4), 1),
        ((1, 2, 3, 5), -1),
        ((1, 2, 4, 5), -1),
        ((1, 3, 4, 5), 1),
        ((2, 3, 4, 5), -1),
        ((2, 1, 3, 4), -1),
        ((3, 1, 4, 5), -1),
    ])
    def test_values(self, vertices, expected):
        assert epsilon(TetrahedronRef(vertices)) == expected


class TestCFactor:
    def test_symbolic_product(self, symbolic_field):
        z = symbolic_field.zeta_diff
        expected = z(1, 2) * z(1, 3) * z(1, 4) * z(2, 3) * z(2, 4) * z(3, 4)
        assert c_factor(TetrahedronRef.of(1, 2, 3, 4), symbolic_field) == expected

    def test_numeric(self, numeric_field):
        assert c_factor(TetrahedronRef.of(1, 2, 3, 4), numeric_field) == LocalizedScalar(12)

    def test_permutation_invariant(self, symbolic_field):
        reference = c_factor(TetrahedronRef.of(1, 3, 4, 5), symbolic_field)
        for order in permutations((1, 3, 4, 5)):
            assert c_factor(TetrahedronRef(order), symbolic_field) == reference


class TestWeightF:
    def test_coefficients(self, symbolic_field):
        f = weight_f(TetrahedronRef.of(1, 2, 3, 4), symbolic_field)
        assert coefficient_of(f, (a(1, 2, 3), a(1, 2, 4))) == symbolic_field.zeta_diff(1, 2)
        assert coefficient_of(f, (a(1, 3, 4), a(2, 3, 4))) == symbolic_field.zeta_diff(3, 4)
        assert coefficient_of(f, (a(1, 2, 3), a(1, 3, 4))) == -symbolic_field.zeta_diff(1, 3)
        assert len(f) == 6

    @pytest.mark.parametrize("t", PENTAGON_TETRAHEDRA, ids=str)
    def test_factored_form_agrees(self, t, symbolic_field):
        assert weight_f_factored(t, symbolic_field) == weight_f(t, symbolic_field)
        weight_f(t, symbolic_field, check=True)

    def test_transposition_flips_sign(self, symbolic_field):
        f = weight_f(TetrahedronRef.of(1, 2, 3, 4), symbolic_field)
        assert weight_f(TetrahedronRef.of(2, 1, 3, 4), symbolic_field) == -f

    @pytest.mark.parametrize("t", PENTAGON_TETRAHEDRA, ids=str)
    def test_antisymmetry_over_all_orderings(self, t, symbolic_field):
        reference = weight_f(t, symbolic_field)
        for order in permutations(t.vertices):
            other = TetrahedronRef(order)
            expected = reference if other.sign > 0 else -reference
            assert weight_f(other, symbolic_field) == expected

    def test_even_quadratic(self, symbolic_field):
        f = weight_f(TetrahedronRef.of(1, 2, 3, 4), symbolic_field)
        assert f.is_even
        assert list(degree_split(f)) == [2]


class TestDeformations:
    def test_g_with_zero_lambda_is_f(self, symbolic_field):
        t = TetrahedronRef.of(1, 2, 4, 5)
        params = DeformationParams(symbolic_field.zero, symbolic_field.parameter("mu"))
        assert weight_g(t, params, symbolic_field) == weight_f(t, symbolic_field)

    def test_g_top_coefficient(self, symbolic_field):
        params = DeformationParams.symbolic(symbolic_field)
        lam = params.lam
        t = TetrahedronRef.of(1, 2, 3, 4)
        g = weight_g(t, params, symbolic_field)
        assert coefficient_of(g, t.faces()) == lam * c_factor(t, symbolic_field)

        t = TetrahedronRef.of(1, 2, 3, 5)
        g = weight_g(t, params, symbolic_field)
        assert coefficient_of(g, (a(1, 2, 3), a(1, 2, 5), a(1, 3, 5), a(2, 3, 5))) == -lam * c_factor(t, symbolic_field)

    def test_g_degree_split(self, symbolic_field):
        t = TetrahedronRef.of(1, 3, 4, 5)
        params = DeformationParams.symbolic(symbolic_field)
        parts = degree_split(weight_g(t, params, symbolic_field))
        assert list(parts) == [2, 4]
        assert parts[2] == weight_f(t, symbolic_field)
        assert parts[4] == face_product(t, symbolic_field, params.lam * c_factor(t, symbolic_field))

    def test_h_scalar_part(self, symbolic_field):
        params = DeformationParams.symbolic(symbolic_field)
        assert weight_h(TetrahedronRef.of(1, 2, 3, 4), params, symbolic_field).scalar_part == params.mu
        assert weight_h(TetrahedronRef.of(1, 2, 3, 5), params, symbolic_field).scalar_part == -params.mu

    def test_h_with_zero_mu_is_f(self, symbolic_field):
        t = TetrahedronRef.of(2, 3, 4, 5)
        params = DeformationParams.zero(symbolic_field)
        assert weight_h(t, params, symbolic_field) == weight_f(t, symbolic_field)

    @pytest.mark.parametrize("t", PENTAGON_TETRAHEDRA, ids=str)
    def test_deformations_are_even(self, t, prime_field):
        params = DeformationParams.symbolic(prime_field)
        assert weight_g(t, params, prime_field).is_even
        assert weight_h(t, params, prime_field).is_even
        assert weight_h(t, params, prime_field).degrees == (0, 2)

