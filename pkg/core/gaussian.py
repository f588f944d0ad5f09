# core/gaussian.py
"""
Gaussian (fermionic) integral representation of the weights.

Each weight is a double Berezin integral over two auxiliary generators
b1, b2 of exp(form), where the form is bilinear in (b, a) with the 2x4
matrix A of the tetrahedron, plus one extra quadratic term for g (faces)
or h (auxiliaries). Coefficients of the bilinear exponentials are minors
of the stacked matrices, which gives an independent route to every
pentagon coefficient.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from core.coeffs import CoefficientField
from core.errors import CoincidentCoordinatesError, LabelError, VerificationError
from core.grassmann import (
    GeneratorId,
    GrassmannElement,
    Monomial,
    berezin_multi,
    coefficient_of,
    gr_exp,
    gr_mul,
    monomial,
)
from core.pentagon import FamilySpec, PentagonSide, WeightFamily, get_side, integrate_side, pentagon_side
from core.weights import TetrahedronRef, epsilon

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormMatrix:
    """Rows labeled by auxiliary generators, columns by face generators"""

    field: CoefficientField
    row_labels: Tuple[GeneratorId, ...]
    col_labels: Tuple[GeneratorId, ...]
    entries: Tuple[Tuple[object, ...], ...]

    def __post_init__(self):
        if len(set(self.row_labels)) != len(self.row_labels):
            raise LabelError(f"Duplicate row labels in {self.row_labels}")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise LabelError(f"Duplicate column labels in {self.col_labels}")
        if len(self.entries) != len(self.row_labels) or any(len(row) != len(self.col_labels) for row in self.entries):
            raise LabelError(
                f"Entry grid does not match {len(self.row_labels)} rows x {len(self.col_labels)} columns"
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def _row(self, label: GeneratorId) -> int:
        try:
            return self.row_labels.index(label)
        except ValueError:
            raise LabelError(f"Unknown row label {label}") from None

    def _col(self, label: GeneratorId) -> int:
        try:
            return self.col_labels.index(label)
        except ValueError:
            raise LabelError(f"Unknown column label {label}") from None

    def entry(self, row: GeneratorId, col: GeneratorId):
        return self.entries[self._row(row)][self._col(col)]

    def submatrix(self, rows: Sequence[GeneratorId], cols: Sequence[GeneratorId]) -> List[List[object]]:
        row_index = [self._row(r) for r in rows]
        col_index = [self._col(c) for c in cols]
        return [[self.entries[i][j] for j in col_index] for i in row_index]

    def restrict_rows(self, rows: Sequence[GeneratorId]) -> "FormMatrix":
        return FormMatrix(self.field, tuple(rows), self.col_labels, tuple(map(tuple, self.submatrix(rows, self.col_labels))))

    def embed(self, col_labels: Sequence[GeneratorId]) -> "FormMatrix":
        """Same rows over a larger column space; new columns are zero"""
        missing = [c for c in self.col_labels if c not in col_labels]
        if missing:
            raise LabelError(f"Columns {missing} are absent from the target column space")
        entries = tuple(
            tuple(self.entry(r, c) if c in self.col_labels else self.field.zero for c in col_labels)
            for r in self.row_labels
        )
        return FormMatrix(self.field, self.row_labels, tuple(col_labels), entries)

    def same_entries(self, other: "FormMatrix") -> bool:
        if self.row_labels != other.row_labels or self.col_labels != other.col_labels:
            return False
        return all(a == b for mine, theirs in zip(self.entries, other.entries) for a, b in zip(mine, theirs))

    def rendered(self) -> List[List[str]]:
        return [[self.field.render(value) for value in row] for row in self.entries]


def matrix_A(t: TetrahedronRef, field: CoefficientField) -> FormMatrix:
    """
    [ z23      -z24      z34  0 ]
    [ z13/z34  -z14/z34  0    1 ]

    under k -> i_k, columns a_{i1i2i3}, a_{i1i2i4}, a_{i1i3i4}, a_{i2i3i4}.
    """
    z34 = t.zeta(field, 2, 3)
    if not z34:
        raise CoincidentCoordinatesError(
            f"zeta_{t.vertices[2]}{t.vertices[3]} vanishes; matrix A of {t} undefined"
        )
    zero, one = field.zero, field.one
    entries = (
        (t.zeta(field, 1, 2), -t.zeta(field, 1, 3), z34, zero),
        (t.zeta(field, 0, 2) / z34, -t.zeta(field, 0, 3) / z34, zero, one),
    )
    return FormMatrix(field, t.aux(), t.faces(), entries)


@dataclass(frozen=True)
class BilinearForm:
    """sum_r,c b_r A_rc a_c plus an optional quadratic extra term"""

    matrix: FormMatrix
    name: str = "Phi"
    extra: Optional[GrassmannElement] = dataclass_field(default=None, compare=False)

    @property
    def bilinear_part(self) -> GrassmannElement:
        field = self.matrix.field
        result = GrassmannElement.zero(field)
        for r, row in zip(self.matrix.row_labels, self.matrix.entries):
            for c, value in zip(self.matrix.col_labels, row):
                if value:
                    pair = gr_mul(GrassmannElement.generator(field, r), GrassmannElement.generator(field, c))
                    result = result + pair.scale(value)
        return result

    @property
    def element(self) -> GrassmannElement:
        if self.extra is None:
            return self.bilinear_part
        return self.bilinear_part + self.extra

    @property
    def is_bilinear(self) -> bool:
        return all(
            len(m) == 2 and m[0].is_face and m[1].is_aux
            for m in self.element.terms
        )


def form_phi(t: TetrahedronRef, field: CoefficientField) -> BilinearForm:
    return BilinearForm(matrix_A(t, field), name=f"Phi_{t}")


def gamma_extra(t: TetrahedronRef, lam, field: CoefficientField) -> GrassmannElement:
    """eps*lam*z13*z14*z23*z24*z34 * a_{i1i3i4} a_{i2i3i4}"""
    coefficient = lam
    for k, l in ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        coefficient = coefficient * t.zeta(field, k, l)
    if epsilon(t) < 0:
        coefficient = -coefficient
    first, second = t.face(0, 2, 3), t.face(1, 2, 3)
    return gr_mul(GrassmannElement.generator(field, first), GrassmannElement.generator(field, second)).scale(coefficient)


def psi_extra(t: TetrahedronRef, mu, field: CoefficientField) -> GrassmannElement:
    """eps*mu * b2 b1"""
    b1, b2 = t.aux()
    value = mu if epsilon(t) > 0 else -mu
    return gr_mul(GrassmannElement.generator(field, b2), GrassmannElement.generator(field, b1)).scale(value)


def form_gamma(t: TetrahedronRef, lam, field: CoefficientField) -> BilinearForm:
    return BilinearForm(matrix_A(t, field), name=f"Gamma_{t}", extra=gamma_extra(t, lam, field))


def form_psi(t: TetrahedronRef, mu, field: CoefficientField) -> BilinearForm:
    return BilinearForm(matrix_A(t, field), name=f"Psi_{t}", extra=psi_extra(t, mu, field))


def form_for(family: WeightFamily, t: TetrahedronRef, field: CoefficientField) -> BilinearForm:
    if family.kind == "f":
        return form_phi(t, field)
    if family.kind == "g":
        return form_gamma(t, family.params.lam, field)
    if family.kind == "h":
        return form_psi(t, family.params.mu, field)
    raise LabelError(f"No Gaussian form is known for the {family.kind} weight")


def aux_generators(form: BilinearForm) -> Tuple[GeneratorId, ...]:
    return form.matrix.row_labels


def integrate_out_aux(form: BilinearForm) -> GrassmannElement:
    """exp(form) integrated over b1 then b2"""
    return berezin_multi(gr_exp(form.element), aux_generators(form))


def representation_holds(family: WeightFamily, t: TetrahedronRef, field: CoefficientField) -> bool:
    return integrate_out_aux(form_for(family, t, field)) == family.weight(t, field)


def gaussian_side(side: PentagonSide, family: WeightFamily, field: CoefficientField) -> GrassmannElement:
    """
    Whole side as one multiple integral: exp of the summed forms, all
    auxiliary pairs integrated in product order, then the inner faces.
    """
    forms = [form_for(family, t, field) for t in side.tetrahedra]
    total = GrassmannElement.zero(field)
    for form in forms:
        total = total + form.element
    integrand = gr_exp(total)
    for form in forms:
        integrand = berezin_multi(integrand, aux_generators(form))
    return berezin_multi(integrand, side.inner).scale(side.prefactor(field))


# -----------------------------
# Combined matrices and minors
# -----------------------------
def side_rows(side: PentagonSide) -> Tuple[GeneratorId, ...]:
    return tuple(g for t in side.matrix_order for g in t.aux())


def big_matrix(side, field: CoefficientField) -> FormMatrix:
    """
    Combined matrix of a side, read off the summed bilinear forms.

    Rows follow ``matrix_order`` (b1 then b2 per tetrahedron), columns are
    the sorted faces of the side.
    """
    side = get_side(side) if isinstance(side, str) else side
    total = GrassmannElement.zero(field)
    for t in side.matrix_order:
        total = total + form_phi(t, field).element
    rows, cols = side_rows(side), side.faces
    # b*a = -(a*b) in canonical order
    entries = tuple(tuple(-coefficient_of(total, (c, r)) for c in cols) for r in rows)
    return FormMatrix(field, rows, cols, entries)


def stacking_holds(side: PentagonSide, field: CoefficientField) -> bool:
    combined = big_matrix(side, field)
    for t in side.matrix_order:
        block = combined.restrict_rows(t.aux())
        if not block.same_entries(matrix_A(t, field).embed(side.faces)):
            return False
    return True


def minor(m: FormMatrix, rows: Sequence[GeneratorId], cols: Sequence[GeneratorId]):
    """Determinant of the submatrix at the given rows and columns"""
    if len(rows) != len(cols):
        raise LabelError(f"Minor needs as many rows as columns, got {len(rows)} and {len(cols)}")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise LabelError("Minor labels must be duplicate-free")
    return m.field.determinant(m.submatrix(rows, cols))


class MinorRule:
    """
    Coefficients of f-pentagon sides as signed minors of the combined matrix.

    The sign of an outer monomial m is the product of:
      - a global sign of the auxiliary integration, fixed once against the
        direct expansion at the first monomial with a nonzero coefficient
      - the sign of integrating the inner faces out of inner * m
    """

    def __init__(self, side, field: CoefficientField):
        self.side = get_side(side) if isinstance(side, str) else side
        self.field = field
        self.matrix = big_matrix(self.side, field)
        self.rows = side_rows(self.side)
        self.prefactor = self.side.prefactor(field)
        self.direct = pentagon_side(self.side, FamilySpec("f").bind(field), field)
        self.sign = self._calibrate()

    def valid_monomials(self) -> List[Monomial]:
        return [monomial(*faces) for faces in combinations(self.side.outer_faces, len(self.rows) - len(self.side.inner))]

    def check_monomial(self, m: Sequence[GeneratorId]) -> Monomial:
        m = monomial(*m)
        size = len(self.rows) - len(self.side.inner)
        if len(m) != size:
            raise LabelError(f"{self.side.name} minors need degree {size} monomials, got degree {len(m)}")
        stray = [g for g in m if g not in self.side.outer_faces]
        if stray:
            raise LabelError(
                f"{', '.join(map(str, stray))} not among the outer faces of the {self.side.name}"
            )
        return m

    def _bookkeeping(self, m: Monomial) -> int:
        full = GrassmannElement.from_monomial(self.field, self.side.inner + m)
        value = coefficient_of(berezin_multi(full, self.side.inner), m)
        return 1 if value == self.field.one else -1

    def _unsigned(self, m: Monomial):
        cols = monomial(*(self.side.inner + m))
        value = minor(self.matrix, self.rows, cols) * self.prefactor
        return value if self._bookkeeping(m) > 0 else -value

    def _calibrate(self) -> int:
        for m in self.valid_monomials():
            expected = coefficient_of(self.direct, m)
            if not expected:
                continue
            unsigned = self._unsigned(m)
            if unsigned == expected:
                return 1
            if unsigned == -expected:
                return -1
            raise VerificationError(
                f"Minor of {self.side.name} at {m} is not +-{self.field.render(expected)}"
            )
        raise VerificationError(f"No nonzero coefficient on the {self.side.name} to calibrate against")

    def coefficient(self, m: Sequence[GeneratorId]):
        m = self.check_monomial(m)
        value = self._unsigned(m)
        return value if self.sign > 0 else -value

    def agreement(self) -> Dict[Monomial, bool]:
        """Minor route against direct expansion, for every valid monomial"""
        return {m: self.coefficient(m) == coefficient_of(self.direct, m) for m in self.valid_monomials()}


def coefficient_via_minor(side, m: Sequence[GeneratorId], field: CoefficientField):
    return MinorRule(side, field).coefficient(m)


def gaussian_route_holds(side: PentagonSide, spec: FamilySpec, field: CoefficientField) -> bool:
    family = spec.bind(field)
    weights = [family.weight(t, field) for t in side.tetrahedra]
    return gaussian_side(side, family, field) == integrate_side(side, weights, field)
