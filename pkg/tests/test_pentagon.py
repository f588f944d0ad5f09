from fractions import Fraction

import pytest

from core.coeffs import LocalizedField
from core.errors import CoincidentCoordinatesError, ConfigError
from core.grassmann import GeneratorId, coefficient_of, degree_split, evaluate_element
from core.pentagon import (
    LHS,
    RHS,
    THEOREM_MONOMIALS,
    FamilySpec,
    composite_explore,
    degree_profile,
    lambda_mu_divisible,
    modular_consistency,
    modular_points,
    pentagon_lhs,
    pentagon_rhs,
    residual,
    residual_element,
    theorem_check,
)


def a(*labels):
    return GeneratorId.face(*labels)


REFERENCE = (a(1, 2, 4), a(1, 2, 5), a(1, 3, 5))


class TestSides:
    def test_outer_faces(self):
        expected = ["a[124]", "a[125]", "a[134]", "a[135]", "a[234]", "a[235]"]
        assert [str(g) for g in LHS.outer_faces] == expected
        assert [str(g) for g in RHS.outer_faces] == expected

    def test_lhs_reference_coefficient(self, symbolic_field):
        z = symbolic_field.zeta_diff
        lhs = pentagon_lhs(FamilySpec("f").bind(symbolic_field), symbolic_field)
        assert coefficient_of(lhs, REFERENCE) == -(z(1, 2) * z(1, 5))

    def test_rhs_reference_coefficient(self, symbolic_field):
        z = symbolic_field.zeta_diff
        rhs = pentagon_rhs(FamilySpec("f").bind(symbolic_field), symbolic_field)
        assert coefficient_of(rhs, REFERENCE) == -(z(1, 2) * z(1, 5))

    def test_sides_use_outer_faces_only(self, symbolic_field):
        family = FamilySpec("f").bind(symbolic_field)
        for side, build in ((LHS, pentagon_lhs), (RHS, pentagon_rhs)):
            assert set(build(family, symbolic_field).support) <= set(side.outer_faces)

    def test_f_sides_are_cubic(self, symbolic_field):
        family = FamilySpec("f").bind(symbolic_field)
        assert list(degree_split(pentagon_lhs(family, symbolic_field))) == [3]
        assert list(degree_split(pentagon_rhs(family, symbolic_field))) == [3]

    def test_rhs_pole(self):
        with pytest.raises(CoincidentCoordinatesError):
            field = LocalizedField(zeta=(0, 1, 2, 3, 3))
            pentagon_rhs(FamilySpec("f").bind(field), field)


class TestSymbolicResidual:
    def test_f(self):
        report = residual(FamilySpec("f"))
        assert report.zero
        assert report.residual.is_zero
        assert report.residual_terms == []
        assert list(report.lhs_degrees) == [3]
        assert report.residual_degrees == {}

    def test_g_with_symbolic_lambda(self):
        assert residual(FamilySpec("g")).zero

    def test_h_with_symbolic_mu(self):
        assert residual(FamilySpec("h")).zero

    def test_composite_reduces_to_h(self):
        assert residual(FamilySpec("composite", lam=Fraction(0))).zero

    def test_composite_reduces_to_g(self):
        assert residual(FamilySpec("composite", mu=Fraction(0))).zero

    def test_numeric_coordinates(self):
        report = residual(FamilySpec("g", lam=Fraction(3, 2)), zeta=[Fraction(v) for v in (0, 1, 3, 7, 12)])
        assert report.zero

    def test_unknown_mode(self):
        with pytest.raises(ConfigError, match="Unknown mode"):
            residual(FamilySpec("f"), mode="float")

    def test_unknown_kind(self):
        with pytest.raises(ConfigError, match="Unknown weight kind"):
            FamilySpec("q")


class TestModularResidual:
    @pytest.mark.parametrize("kind", ["f", "g", "h"])
    def test_twenty_points(self, kind):
        report = residual(FamilySpec(kind), mode="modp", trials=20, seed=7)
        assert report.zero
        assert len(report.points) == 20
        assert all(point.zero for point in report.points)
        assert report.seed == 7

    def test_points_are_seeded(self):
        first = modular_points(FamilySpec("g"), 3, seed=11)
        second = modular_points(FamilySpec("g"), 3, seed=11)
        assert [p.coordinates() for p in first] == [p.coordinates() for p in second]
        assert [p.residue(p.lam) for p in first] == [p.residue(p.lam) for p in second]

    def test_explicit_parameters_kept(self):
        for point in modular_points(FamilySpec("h", mu=Fraction(2)), 4, seed=0):
            assert point.residue(point.mu) == 2

    def test_needs_a_trial(self):
        with pytest.raises(ConfigError, match="at least one trial"):
            modular_points(FamilySpec("f"), 0, seed=0)

    @pytest.mark.parametrize("kind", ["f", "g", "h"])
    def test_consistent_with_symbolic(self, kind):
        assert all(modular_consistency(FamilySpec(kind), trials=20, seed=3))

    def test_symbolic_residual_evaluates_pointwise(self):
        field = LocalizedField()
        spec = FamilySpec("composite")
        symbolic = residual_element(spec.bind(field), field)
        for point in modular_points(spec, 3, seed=5):
            assert evaluate_element(symbolic, point) == residual_element(spec.bind(point), point)


class TestTheorems:
    def test_g_proof_monomial(self, symbolic_field):
        lhs, rhs = theorem_check("g", symbolic_field)
        assert lhs == rhs
        assert not lhs.is_zero

    def test_h_proof_monomial(self, symbolic_field):
        lhs, rhs = theorem_check("h", symbolic_field)
        assert lhs == rhs
        mu = symbolic_field.parameter("mu")
        assert lhs == mu * symbolic_field.zeta_diff(2, 3)

    def test_h_other_monomial(self, symbolic_field):
        lhs, rhs = theorem_check("h", symbolic_field, [a(1, 3, 5)])
        assert lhs == rhs

    def test_modular_shadow(self):
        for point in modular_points(FamilySpec("g"), 10, seed=1):
            for kind in THEOREM_MONOMIALS:
                lhs, rhs = theorem_check(kind, point)
                assert lhs == rhs

    def test_only_deformations(self):
        with pytest.raises(ConfigError):
            theorem_check("f")

    def test_g_degree_structure(self, symbolic_field):
        assert degree_profile("g", symbolic_field) == {"lhs": (5,), "rhs": (5,)}

    def test_h_degree_structure(self, symbolic_field):
        assert degree_profile("h", symbolic_field) == {"lhs": (1,), "rhs": (1,)}


class TestComposite:
    def test_degenerate_cells_vanish(self):
        report = composite_explore([(Fraction(0), None), (None, Fraction(0))])
        assert [entry.zero for entry in report.entries] == [True, True]
        assert all(entry.term_count == 0 for entry in report.entries)

    def test_symbolic_residual_divisible_by_lambda_mu(self):
        report = composite_explore([(None, None)])
        entry = report.entries[0]
        assert entry.lambda_mu_divisible is True
        assert entry.lam == "sym" and entry.mu == "sym"

    def test_divisibility_of_residual_element(self, symbolic_field):
        difference = residual_element(FamilySpec("composite").bind(symbolic_field), symbolic_field)
        assert lambda_mu_divisible(difference)

    def test_modular_cells(self):
        report = composite_explore([(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))], mode="modp", seed=2)
        assert report.mode == "modp"
        assert all(entry.zero for entry in report.entries)
        assert all(entry.lambda_mu_divisible is None for entry in report.entries)
