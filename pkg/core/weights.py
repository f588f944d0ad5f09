# core/weights.py
"""
Tetrahedron weights f, g, h.

Weights are written for tetrahedron 1234 and transported to any ordered
tetrahedron i1 i2 i3 i4 by k -> i_k. Face generators are unoriented, so the
orientation of the vertex order shows up only through the signs produced
when substituted products are brought to canonical order.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Tuple

from core.coeffs import VERTICES, CoefficientField
from core.errors import CoincidentCoordinatesError, LabelError, VerificationError
from core.grassmann import GeneratorId, GrassmannElement, gr_mul

logger = logging.getLogger(__name__)

# Orientation of the five tetrahedra of the 2->3 move, relative to 1234.
SORTED_EPSILON: Dict[Tuple[int, int, int, int], int] = {
    (1, 2, 3, 4): 1,
    (1, 2, 3, 5): -1,
    (1, 2, 4, 5): -1,
    (1, 3, 4, 5): 1,
    (2, 3, 4, 5): -1,
}

# (sign, zeta pair, first face, second face) in positions of 1234
_F_TERMS = (
    (1, (0, 1), (0, 1, 2), (0, 1, 3)),
    (-1, (0, 2), (0, 1, 2), (0, 2, 3)),
    (1, (0, 3), (0, 1, 3), (0, 2, 3)),
    (1, (1, 2), (0, 1, 2), (1, 2, 3)),
    (-1, (1, 3), (0, 1, 3), (1, 2, 3)),
    (1, (2, 3), (0, 2, 3), (1, 2, 3)),
)


@dataclass(frozen=True)
class TetrahedronRef:
    """Ordered tetrahedron i1 i2 i3 i4"""

    vertices: Tuple[int, int, int, int]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(vertices) != 4 or len(set(vertices)) != 4:
            raise LabelError(f"Tetrahedron needs 4 distinct vertices, got {vertices!r}")
        for label in vertices:
            if label not in VERTICES:
                raise LabelError(f"Vertex label {label!r} is outside {VERTICES}")
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def of(cls, *vertices: int) -> "TetrahedronRef":
        if len(vertices) == 1:
            vertices = tuple(vertices[0])
        return cls(tuple(vertices))

    @property
    def sorted_vertices(self) -> Tuple[int, int, int, int]:
        return tuple(sorted(self.vertices))

    @property
    def sign(self) -> int:
        """Sign of the permutation bringing the vertex order to sorted order"""
        inversions = sum(1 for a, b in combinations(self.vertices, 2) if a > b)
        return -1 if inversions % 2 else 1

    def face(self, *positions: int) -> GeneratorId:
        return GeneratorId.face(*(self.vertices[p] for p in positions))

    def faces(self) -> Tuple[GeneratorId, GeneratorId, GeneratorId, GeneratorId]:
        """a_{i1i2i3}, a_{i1i2i4}, a_{i1i3i4}, a_{i2i3i4}"""
        return (
            self.face(0, 1, 2),
            self.face(0, 1, 3),
            self.face(0, 2, 3),
            self.face(1, 2, 3),
        )

    def aux(self) -> Tuple[GeneratorId, GeneratorId]:
        return GeneratorId.aux(self.vertices, 1), GeneratorId.aux(self.vertices, 2)

    def zeta(self, field: CoefficientField, k: int, l: int):
        return field.zeta_diff(self.vertices[k], self.vertices[l])

    def __str__(self) -> str:
        return "".join(map(str, self.vertices))


@dataclass(frozen=True)
class DeformationParams:
    """Overall parameters lambda (degree-4 term) and mu (degree-0 term)"""

    lam: object
    mu: object

    @classmethod
    def symbolic(cls, field: CoefficientField) -> "DeformationParams":
        return cls(field.parameter("lam"), field.parameter("mu"))

    @classmethod
    def zero(cls, field: CoefficientField) -> "DeformationParams":
        return cls(field.zero, field.zero)


def epsilon(t: TetrahedronRef) -> int:
    """Orientation sign relative to 1234, extended to any vertex order by the permutation sign"""
    try:
        base = SORTED_EPSILON[t.sorted_vertices]
    except KeyError:
        raise LabelError(f"Tetrahedron {t} is not one of the pentagon tetrahedra") from None
    return base * t.sign


def c_factor(t: TetrahedronRef, field: CoefficientField):
    """Product of the six zeta differences over the sorted vertex set"""
    result = field.one
    for i, j in combinations(t.sorted_vertices, 2):
        result = result * field.zeta_diff(i, j)
    return result


def _face_pair(t: TetrahedronRef, field: CoefficientField, first, second) -> GrassmannElement:
    return gr_mul(
        GrassmannElement.generator(field, t.face(*first)),
        GrassmannElement.generator(field, t.face(*second)),
    )


def weight_f(t: TetrahedronRef, field: CoefficientField, check: bool = False) -> GrassmannElement:
    """
    Six-term quadratic weight, built without any division.

    With ``check`` the factored form is built as well and must agree.
    """
    result = GrassmannElement.zero(field)
    for sign, (k, l), first, second in _F_TERMS:
        coefficient = t.zeta(field, k, l)
        if sign < 0:
            coefficient = -coefficient
        result = result + _face_pair(t, field, first, second).scale(coefficient)
    if check:
        factored = weight_f_factored(t, field)
        if factored != result:
            raise VerificationError(f"Factored and expanded weights of {t} disagree")
    return result


def weight_f_factored(t: TetrahedronRef, field: CoefficientField) -> GrassmannElement:
    """(1/zeta_{i3i4}) (z23 a123 - z24 a124 + z34 a134)(z13 a123 - z14 a124 + z34 a234)"""
    z34 = t.zeta(field, 2, 3)
    if not z34:
        raise CoincidentCoordinatesError(f"zeta_{t.vertices[2]}{t.vertices[3]} vanishes; factored weight of {t} undefined")
    a123, a124, a134, a234 = (GrassmannElement.generator(field, g) for g in t.faces())
    left = a123.scale(t.zeta(field, 1, 2)) - a124.scale(t.zeta(field, 1, 3)) + a134.scale(z34)
    right = a123.scale(t.zeta(field, 0, 2)) - a124.scale(t.zeta(field, 0, 3)) + a234.scale(z34)
    return gr_mul(left, right).scale(field.one / z34)


def face_product(t: TetrahedronRef, field: CoefficientField, coefficient=None) -> GrassmannElement:
    """The four face generators of t in canonical order"""
    return GrassmannElement.from_monomial(field, t.faces(), coefficient)


def weight_g(t: TetrahedronRef, params: DeformationParams, field: CoefficientField) -> GrassmannElement:
    """f + eps * lam * c * a123 a124 a134 a234"""
    coefficient = params.lam * c_factor(t, field)
    if epsilon(t) < 0:
        coefficient = -coefficient
    return weight_f(t, field) + face_product(t, field, coefficient)


def weight_h(t: TetrahedronRef, params: DeformationParams, field: CoefficientField) -> GrassmannElement:
    """f + eps * mu"""
    value = params.mu if epsilon(t) > 0 else -params.mu
    return weight_f(t, field) + GrassmannElement.scalar(field, value)

