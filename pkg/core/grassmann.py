# core/grassmann.py
"""
Grassmann algebra over face generators a[ijk] and auxiliary generators
b1[ijkl], b2[ijkl], with Berezin integration and nilpotent exponentials.

Every sign in the package comes from one global generator order: all face
generators (by sorted triple) precede all auxiliary generators (by sorted
4-tuple, then slot). Monomials are strictly increasing tuples in that
order.
"""

import logging
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from core.coeffs import VERTICES, CoefficientField, PrimeField, eval_modp
from core.errors import GrassmannDomainError, LabelError

logger = logging.getLogger(__name__)

FACE, AUX = 0, 1


@dataclass(frozen=True, order=True)
class GeneratorId:
    """A face generator a[ijk] or an auxiliary generator b<slot>[ijkl]"""

    kind: int
    labels: Tuple[int, ...]
    slot: int = 0

    @classmethod
    def face(cls, *labels: int) -> "GeneratorId":
        if len(labels) == 1 and isinstance(labels[0], (tuple, list)):
            labels = tuple(labels[0])
        _check_labels(labels, 3)
        return cls(FACE, tuple(sorted(labels)))

    @classmethod
    def aux(cls, tetrahedron: Sequence[int], slot: int) -> "GeneratorId":
        _check_labels(tuple(tetrahedron), 4)
        if slot not in (1, 2):
            raise LabelError(f"Auxiliary slot must be 1 or 2, got {slot!r}")
        return cls(AUX, tuple(sorted(tetrahedron)), slot)

    @property
    def is_face(self) -> bool:
        return self.kind == FACE

    @property
    def is_aux(self) -> bool:
        return self.kind == AUX

    def relabeled(self, images: Sequence[int]) -> "GeneratorId":
        """Same kind and slot on the vertices k -> images[k-1]"""
        labels = tuple(images[k - 1] for k in self.labels)
        return GeneratorId.face(*labels) if self.is_face else GeneratorId.aux(labels, self.slot)

    def __str__(self) -> str:
        digits = "".join(map(str, self.labels))
        return f"a[{digits}]" if self.is_face else f"b{self.slot}[{digits}]"

    def __repr__(self) -> str:
        return str(self)


def _check_labels(labels: Tuple[int, ...], size: int) -> None:
    if len(labels) != size or len(set(labels)) != size:
        raise LabelError(f"Expected {size} distinct vertex labels, got {labels!r}")
    for label in labels:
        if label not in VERTICES:
            raise LabelError(f"Vertex label {label!r} is outside {VERTICES}")


Monomial = Tuple[GeneratorId, ...]


def monomial(*generators: GeneratorId) -> Monomial:
    """Canonical (sorted) monomial; a repeated generator is an error here"""
    ordered = tuple(sorted(generators))
    if len(set(ordered)) != len(ordered):
        raise LabelError(f"Monomial {ordered} repeats a generator")
    return ordered


def render_monomial(m: Monomial) -> str:
    return "*".join(str(g) for g in m) if m else "1"


def merge_monomials(left: Monomial, right: Monomial) -> Tuple[int, Optional[Monomial]]:
    """
    Product of two canonical monomials.

    Returns (sign, monomial); the monomial is None when a generator repeats.
    The sign is the parity of the permutation sorting left + right.
    """
    if not left:
        return 1, right
    if not right:
        return 1, left
    if not set(left).isdisjoint(right):
        return 1, None
    inversions = 0
    for generator in right:
        inversions += len(left) - bisect_right(left, generator)
    return (-1 if inversions % 2 else 1), tuple(sorted(left + right))


def _sort_key(m: Monomial):
    return (len(m), m)


def _enclosed(text: str) -> bool:
    """A bare number, or one parenthesized group spanning the whole text"""
    if text.isdigit():
        return True
    if not text.startswith("("):
        return False
    depth = 0
    for position, char in enumerate(text):
        depth += {"(": 1, ")": -1}.get(char, 0)
        if depth == 0:
            return position == len(text) - 1
    return False


class GrassmannElement:
    """Finite sum of canonical monomials with coefficients in a field"""

    __slots__ = ("field", "terms")

    def __init__(self, field: CoefficientField, terms: Optional[Mapping[Monomial, object]] = None):
        self.field = field
        self.terms: Dict[Monomial, object] = {m: c for m, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def zero(cls, field: CoefficientField) -> "GrassmannElement":
        return cls(field)

    @classmethod
    def scalar(cls, field: CoefficientField, value) -> "GrassmannElement":
        return cls(field, {(): value})

    @classmethod
    def generator(cls, field: CoefficientField, g: GeneratorId, coefficient=None) -> "GrassmannElement":
        return cls(field, {(g,): field.one if coefficient is None else coefficient})

    @classmethod
    def from_monomial(cls, field: CoefficientField, generators: Iterable[GeneratorId], coefficient=None) -> "GrassmannElement":
        return cls(field, {monomial(*generators): field.one if coefficient is None else coefficient})

    # algebra
    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        return gr_add(self, other)

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "GrassmannElement") -> "GrassmannElement":
        return gr_add(self, -other)

    def __mul__(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            return gr_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "GrassmannElement":
        return self.scale(other)

    def scale(self, value) -> "GrassmannElement":
        if not value:
            return GrassmannElement(self.field)
        return GrassmannElement(self.field, {m: c * value for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    __hash__ = None

    # queries
    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({len(m) for m in self.terms}))

    @property
    def is_even(self) -> bool:
        return all(len(m) % 2 == 0 for m in self.terms)

    @property
    def is_odd(self) -> bool:
        return all(len(m) % 2 == 1 for m in self.terms)

    @property
    def scalar_part(self):
        return self.terms.get((), self.field.zero)

    @property
    def support(self) -> Tuple[GeneratorId, ...]:
        return tuple(sorted({g for m in self.terms for g in m}))

    def monomials(self) -> Tuple[Monomial, ...]:
        """Monomials in degree-major, then lexicographic order"""
        return tuple(sorted(self.terms, key=_sort_key))

    def items(self):
        return [(m, self.terms[m]) for m in self.monomials()]

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.items():
            coefficient = self.field.render(c)
            if not m:
                pieces.append(coefficient)
            else:
                if not _enclosed(coefficient):
                    coefficient = f"({coefficient})"
                pieces.append(f"{coefficient}*{render_monomial(m)}")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GrassmannElement({self.render()})"

    def __len__(self) -> int:
        return len(self.terms)


# -----------------------------
# Operations
# -----------------------------
def gr_add(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    terms = dict(x.terms)
    for m, c in y.terms.items():
        terms[m] = terms[m] + c if m in terms else c
    return GrassmannElement(x.field, terms)


def gr_mul(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    """Bilinear product; a_i a_j = -a_j a_i and a_i a_i = 0"""
    terms: Dict[Monomial, object] = {}
    for left, a in x.terms.items():
        for right, b in y.terms.items():
            sign, merged = merge_monomials(left, right)
            if merged is None:
                continue
            product = a * b if sign > 0 else -(a * b)
            terms[merged] = terms[merged] + product if merged in terms else product
    return GrassmannElement(x.field, terms)


def berezin(x: GrassmannElement, g: GeneratorId) -> GrassmannElement:
    """
    Single Berezin integral over g.

    Terms without g vanish; otherwise g is moved to the rightmost position
    (sign (-1)**(k-1-p) for position p in a degree-k monomial) and removed.
    """
    terms: Dict[Monomial, object] = {}
    for m, c in x.terms.items():
        if g not in m:
            continue
        position = m.index(g)
        rest = m[:position] + m[position + 1:]
        terms[rest] = c if (len(m) - 1 - position) % 2 == 0 else -c
    return GrassmannElement(x.field, terms)


def berezin_multi(x: GrassmannElement, generators: Sequence[GeneratorId]) -> GrassmannElement:
    """Iterated integral; the first generator listed is integrated first (innermost)"""
    for g in generators:
        x = berezin(x, g)
    return x


def gr_exp(x: GrassmannElement) -> GrassmannElement:
    """
    Taylor series of exp for an even element without scalar part.

    The series stops at the first vanishing power (nilpotency).

    Raises:
        GrassmannDomainError: x is not even or has a nonzero scalar part
    """
    if not x.is_even:
        raise GrassmannDomainError("exp is only defined here for even elements")
    if x.scalar_part:
        raise GrassmannDomainError("exp of an element with nonzero scalar part is not supported")
    field = x.field
    result = GrassmannElement.scalar(field, field.one)
    power = result
    n = 0
    while True:
        power = gr_mul(power, x)
        if not power:
            break
        n += 1
        result = gr_add(result, power.scale(field.from_fraction(Fraction(1, factorial(n)))))
    logger.debug("exp series stopped after %d powers", n)
    return result


def relabel(x: GrassmannElement, images: Sequence[int], parameter_sign: int = 1) -> GrassmannElement:
    """
    Image of x under the automorphism induced by the vertex relabeling
    k -> images[k-1].

    Generators are relabeled and each monomial is re-sorted with its sign.
    Coefficients go through the field's own relabeling, so the result
    lives over the relabeled field (a moved point in modp mode).
    """
    target, relabel_coefficient = x.field.relabeled(images, parameter_sign)
    terms: Dict[Monomial, object] = {}
    for m, c in x.terms.items():
        moved = [g.relabeled(images) for g in m]
        inversions = sum(1 for a, b in combinations(moved, 2) if a > b)
        value = relabel_coefficient(c)
        terms[monomial(*moved)] = -value if inversions % 2 else value
    return GrassmannElement(target, terms)


def coefficient_of(x: GrassmannElement, m: Iterable[GeneratorId]):
    """Coefficient at a monomial (given in any order), or zero"""
    return x.terms.get(monomial(*m), x.field.zero)


def degree_split(x: GrassmannElement) -> Dict[int, GrassmannElement]:
    parts: Dict[int, Dict[Monomial, object]] = {}
    for m, c in x.terms.items():
        parts.setdefault(len(m), {})[m] = c
    return {degree: GrassmannElement(x.field, parts[degree]) for degree in sorted(parts)}


def degree_counts(x: GrassmannElement) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for m in x.terms:
        counts[len(m)] = counts.get(len(m), 0) + 1
    return dict(sorted(counts.items()))


def evaluate_element(x: GrassmannElement, field: PrimeField) -> GrassmannElement:
    """Map every symbolic coefficient through eval_modp"""
    return GrassmannElement(field, {m: eval_modp(c, field) for m, c in x.terms.items()})
