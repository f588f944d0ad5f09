from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from core.coeffs import (
    DEFAULT_PRIME,
    VERTICES,
    LocalizedField,
    LocalizedScalar,
    PrimeField,
    eval_modp,
    exact_div_linear,
    linear_form,
    scalar_arith,
    split_linear_factors,
    zeta_diff,
)
from core.errors import CoincidentCoordinatesError, ConfigError, LabelError, NonUnitDivisionError
from tests.strategies import scalars


class TestZetaDiff:
    def test_difference_of_indeterminates(self):
        assert zeta_diff(1, 2).numerator == linear_form(1, 2)
        assert zeta_diff(1, 2).denominator == ()

    def test_equal_labels_give_zero(self):
        assert zeta_diff(3, 3).is_zero

    def test_antisymmetry(self):
        assert zeta_diff(2, 1) == -zeta_diff(1, 2)

    def test_telescoping(self):
        for i, j, k in product(VERTICES, repeat=3):
            assert zeta_diff(i, j) + zeta_diff(j, k) == zeta_diff(i, k)

    def test_unknown_vertex(self):
        with pytest.raises(LabelError, match="outside"):
            zeta_diff(1, 6)


class TestScalarArith:
    def test_exact_cancellation(self):
        product_ = scalar_arith(zeta_diff(1, 3), zeta_diff(3, 4), "mul")
        assert scalar_arith(product_, zeta_diff(3, 4), "div") == zeta_diff(1, 3)

    def test_telescoping_sum(self):
        assert scalar_arith(zeta_diff(1, 2), zeta_diff(2, 3), "add") == zeta_diff(1, 3)

    def test_absorbing_zero(self):
        assert scalar_arith(zeta_diff(1, 2), LocalizedScalar(0), "mul").is_zero

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            scalar_arith(zeta_diff(1, 2), LocalizedScalar(0), "div")

    def test_division_by_non_unit(self):
        with pytest.raises(NonUnitDivisionError, match="not a unit"):
            scalar_arith(LocalizedScalar(1), zeta_diff(1, 2) + zeta_diff(1, 3), "div")

    def test_division_by_constant_times_units(self):
        divisor = zeta_diff(2, 1) * zeta_diff(4, 5) * 3
        quotient = scalar_arith(zeta_diff(1, 3), divisor, "div")
        assert quotient * divisor == zeta_diff(1, 3)
        assert sorted(quotient.denominator) == [(1, 2), (4, 5)]

    def test_unknown_operation(self):
        with pytest.raises(ValueError, match="Unknown scalar operation"):
            scalar_arith(zeta_diff(1, 2), zeta_diff(1, 3), "pow")


class TestExactDivision:
    def test_divisible(self):
        p = linear_form(1, 3) * linear_form(3, 4)
        assert exact_div_linear(p, (3, 4)) == linear_form(1, 3)

    def test_not_divisible(self):
        assert exact_div_linear(linear_form(1, 2), (3, 4)) is None

    def test_zero(self):
        assert not exact_div_linear(linear_form(1, 1), (3, 4))

    def test_pair_order_enforced(self):
        with pytest.raises(LabelError, match="i < j"):
            exact_div_linear(linear_form(1, 2), (4, 3))

    def test_split_linear_factors(self):
        p = 2 * linear_form(1, 2) ** 2 * linear_form(3, 5)
        rest, factors = split_linear_factors(p)
        assert rest.is_ground and rest.LC == 2
        assert factors == {(1, 2): 2, (3, 5): 1}


class TestLocalizedScalar:
    def test_normalized_on_construction(self):
        value = LocalizedScalar(linear_form(1, 3) * linear_form(3, 4), [(3, 4)])
        assert value.denominator == ()
        assert value.numerator == linear_form(1, 3)

    def test_normalization_idempotent(self):
        value = LocalizedScalar(linear_form(1, 3) * linear_form(3, 4), [(3, 4), (3, 4), (1, 2)])
        again = LocalizedScalar(value.numerator, value.denominator)
        assert again.numerator == value.numerator
        assert again.denominator == value.denominator

    def test_equality_cross_multiplied(self):
        assert LocalizedScalar(linear_form(1, 2), [(4, 5)]) == LocalizedScalar(
            linear_form(1, 2) * linear_form(2, 3), [(2, 3), (4, 5)]
        )

    def test_render(self):
        value = zeta_diff(1, 2) * zeta_diff(1, 5) / zeta_diff(4, 5)
        assert value.render() == "(z1 - z2)*(z1 - z5)/(z4 - z5)"
        assert (-value).render() == "-(z1 - z2)*(z1 - z5)/(z4 - z5)"

    def test_render_sum_in_parentheses(self):
        value = (zeta_diff(1, 2) + zeta_diff(1, 3)) / zeta_diff(4, 5)
        assert value.render().startswith("(")
        assert value.render().endswith(")/(z4 - z5)")

    @settings(max_examples=50)
    @given(scalars(), scalars(), scalars())
    def test_ring_laws(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x


class TestFields:
    def test_numeric_coordinates_must_be_distinct(self):
        with pytest.raises(CoincidentCoordinatesError):
            LocalizedField(zeta=(0, 1, 2, 3, 3))

    def test_numeric_zeta_diff(self, numeric_field):
        assert numeric_field.zeta_diff(2, 5) == LocalizedScalar(-3)

    def test_prime_must_be_odd(self):
        with pytest.raises(ConfigError, match="odd prime"):
            PrimeField((0, 1, 2, 3, 4), prime=2)
        with pytest.raises(ConfigError, match="odd prime"):
            PrimeField((0, 1, 2, 3, 4), prime=15)

    def test_small_primes_rejected(self):
        for prime in (3, 7, 19):
            with pytest.raises(ConfigError, match="at least 23"):
                PrimeField((0, 1, 2, 3, 4), prime=prime)
        assert PrimeField((0, 1, 2, 3, 4), prime=23).prime == 23

    def test_coincident_modulo_p(self):
        with pytest.raises(CoincidentCoordinatesError, match="modulo 23"):
            PrimeField((0, 1, 2, 3, 26), prime=23)

    def test_parameters(self, symbolic_field, prime_field):
        assert not symbolic_field.parameter("lam").is_zero
        assert prime_field.residue(prime_field.parameter("mu")) == 5
        with pytest.raises(LabelError):
            symbolic_field.parameter("nu")

    def test_random_point_is_reproducible(self):
        from random import Random

        first = PrimeField.random(Random(7))
        second = PrimeField.random(Random(7))
        assert first.coordinates() == second.coordinates()
        assert first.prime == DEFAULT_PRIME


class TestEvalModp:
    def test_zeta34(self, prime_field):
        assert prime_field.residue(eval_modp(zeta_diff(3, 4), prime_field)) == DEFAULT_PRIME - 1

    def test_ratio(self, prime_field):
        value = zeta_diff(1, 2) / zeta_diff(4, 5)
        assert prime_field.residue(eval_modp(value, prime_field)) == 1

    def test_symbolic_zero_vanishes_everywhere(self):
        zero = zeta_diff(1, 2) + zeta_diff(2, 3) - zeta_diff(1, 3)
        for zeta in [(0, 1, 2, 3, 4), (5, 9, 13, 2, 8)]:
            field = PrimeField(zeta)
            assert not eval_modp(zero, field)

    def test_parameters_evaluated(self, symbolic_field, prime_field):
        value = symbolic_field.parameter("lam") * symbolic_field.parameter("mu")
        assert prime_field.residue(eval_modp(value, prime_field)) == 15

    @settings(max_examples=50)
    @given(scalars(), scalars(), st.sampled_from([(0, 1, 2, 3, 4), (10, 3, 77, 5, 41)]))
    def test_homomorphism(self, x, y, zeta):
        field = PrimeField(zeta)
        assert eval_modp(x * y, field) == eval_modp(x, field) * eval_modp(y, field)
        assert eval_modp(x + y, field) == eval_modp(x, field) + eval_modp(y, field)


class TestDeterminant:
    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)
    ))
    def test_modular_matches_sympy(self, rows):
        field = PrimeField((0, 1, 2, 3, 4), prime=10007)
        ours = field.determinant([[field.from_int(v) for v in row] for row in rows])
        assert field.residue(ours) == Matrix(rows).det() % 10007

    @settings(max_examples=50)
    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)
    ))
    def test_exact_matches_sympy(self, rows):
        field = LocalizedField(zeta=(0, 1, 3, 7, 12))
        ours = field.determinant([[field.from_fraction(Fraction(v, 3)) for v in row] for row in rows])
        expected = Matrix(rows).det() / 3 ** len(rows)
        assert ours == LocalizedScalar(Fraction(int(expected.p), int(expected.q)))

    def test_symbolic_with_denominators(self, symbolic_field):
        z = symbolic_field.zeta_diff
        rows = [[z(1, 3) / z(3, 4), z(2, 3)], [LocalizedScalar(1), z(3, 4)]]
        assert symbolic_field.determinant(rows) == z(1, 3) - z(2, 3)

    def test_non_square(self, symbolic_field):
        with pytest.raises(LabelError, match="square"):
            symbolic_field.determinant([[LocalizedScalar(1), LocalizedScalar(2)]])
