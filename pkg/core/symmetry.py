# core/symmetry.py
"""
Vertex relabelings that carry the 2->3 move onto itself.

Permuting 1,2,3 among themselves and 4,5 among themselves permutes the
tetrahedra of each side and its inner faces. Every weight comes back up
to a sign once lam and mu pick up the sign of the permutation, so each
side is mapped to plus or minus itself, and the same sign on both sides
means the equation is mapped onto itself.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from core.coeffs import CoefficientField, LocalizedField
from core.grassmann import GrassmannElement, Monomial, monomial, relabel
from core.pentagon import LHS, RHS, FamilySpec, pentagon_side

logger = logging.getLogger(__name__)

Relabeling = Tuple[int, ...]

# images[k - 1] is the new label of vertex k; identity first
PENTAGON_SYMMETRIES: Tuple[Relabeling, ...] = tuple(
    low + high for low in permutations((1, 2, 3)) for high in permutations((4, 5))
)


def permutation_sign(images: Sequence[int]) -> int:
    inversions = sum(1 for a, b in combinations(images, 2) if a > b)
    return -1 if inversions % 2 else 1


def relabel_spec(spec: FamilySpec, sign: int) -> FamilySpec:
    """Fixed lam and mu follow the sign; symbolic ones are substituted by the field"""
    lam = None if spec.lam is None else sign * spec.lam
    mu = None if spec.mu is None else sign * spec.mu
    return FamilySpec(spec.kind, lam, mu)


def induced_sign(image: GrassmannElement, original: GrassmannElement) -> Optional[int]:
    """1 or -1 when image is +-original, None otherwise"""
    if image == original:
        return 1
    if image == -original:
        return -1
    return None


def monomial_orbit(m: Sequence, relabelings: Sequence[Relabeling] = PENTAGON_SYMMETRIES) -> Set[Monomial]:
    return {monomial(*(g.relabeled(images) for g in m)) for images in relabelings}


@dataclass(frozen=True)
class SideSymmetry:
    """Signs with which the lhs and rhs map onto themselves (None: they do not)"""

    images: Relabeling
    lhs: Optional[int]
    rhs: Optional[int]

    @property
    def holds(self) -> bool:
        return self.lhs is not None and self.lhs == self.rhs

    def label(self) -> str:
        return "".join(map(str, self.images))

    def detail(self) -> str:
        def render(sign):
            return "none" if sign is None else f"{sign:+d}"

        return f"lhs {render(self.lhs)}, rhs {render(self.rhs)}"


def side_symmetries(
    spec: FamilySpec,
    field: Optional[CoefficientField] = None,
    relabelings: Sequence[Relabeling] = PENTAGON_SYMMETRIES,
) -> List[SideSymmetry]:
    """
    Relabel both sides of the weight family and compare with the sides
    computed on the relabeled field.

    In symbolic mode the coordinates are substituted and the sides are
    compared with themselves; in modp mode the image is compared with the
    sides at the moved point.
    """
    field = field or LocalizedField()
    family = spec.bind(field)
    sides = {side.name: pentagon_side(side, family, field) for side in (LHS, RHS)}
    outcomes = []
    for images in relabelings:
        sign = permutation_sign(images)
        moved = {name: relabel(element, images, sign) for name, element in sides.items()}
        target = moved[LHS.name].field
        target_spec = relabel_spec(spec, sign)
        if target is field and target_spec == spec:
            expected = sides
        else:
            target_family = target_spec.bind(target)
            expected = {side.name: pentagon_side(side, target_family, target) for side in (LHS, RHS)}
        outcome = SideSymmetry(
            images=tuple(images),
            lhs=induced_sign(moved[LHS.name], expected[LHS.name]),
            rhs=induced_sign(moved[RHS.name], expected[RHS.name]),
        )
        logger.debug("relabeling %s: %s", outcome.label(), outcome.detail())
        outcomes.append(outcome)
    return outcomes


def orbit_coverage(
    parts: Dict[str, GrassmannElement],
    target: Monomial,
) -> Dict[str, Tuple[Set[Monomial], Set[Monomial]]]:
    """
    Per side, (orbit of the target monomial, monomials of the same degree
    present in the part). Equal sets mean one coefficient settles them all.
    """
    orbit = monomial_orbit(target)
    return {
        name: (orbit, {m for m in part.terms if len(m) == len(target)})
        for name, part in parts.items()
    }
