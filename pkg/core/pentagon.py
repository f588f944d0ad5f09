# core/pentagon.py
"""
Both sides of the pentagon equation for the 2->3 move

    int W1234 W1235 da123 = -(1/zeta45) iiint W1245 W2345 W1345 da345 da245 da145

for the weight families f, g, h and the composite g + eps*mu, with
symbolic proofs, modular sampling, the single-monomial theorem checks and
the composite exploration.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from random import Random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.polyerrors import ExactQuotientFailed

from core.coeffs import (
    DEFAULT_PRIME,
    PARAMETERS,
    POLY_RING,
    VERTICES,
    CoefficientField,
    LocalizedField,
    PrimeField,
)
from core.errors import CoincidentCoordinatesError, ConfigError, LabelError
from core.grassmann import (
    GeneratorId,
    GrassmannElement,
    Monomial,
    berezin_multi,
    coefficient_of,
    degree_counts,
    evaluate_element,
    gr_mul,
    monomial,
)
from core.notation import format_rational, parse_monomial
from core.report_schema import (
    CompositeEntry,
    ExplorationReport,
    PentagonReport,
    PointReport,
    TermReport,
)
from core.weights import DeformationParams, TetrahedronRef, epsilon, weight_f, weight_g, weight_h

logger = logging.getLogger(__name__)

WEIGHT_KINDS = ("f", "g", "h", "composite")

# Proof monomials of the two deformation theorems
THEOREM_MONOMIALS: Dict[str, Monomial] = {
    "g": parse_monomial("124,125,134,135,235"),
    "h": parse_monomial("234"),
}


# -----------------------------
# Weight families
# -----------------------------
@dataclass(frozen=True)
class WeightFamily:
    """A weight kind bound to concrete deformation parameters of one field"""

    kind: str
    params: DeformationParams

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ConfigError(f"Unknown weight kind {self.kind!r}; expected one of {WEIGHT_KINDS}")

    def weight(self, t: TetrahedronRef, field: CoefficientField) -> GrassmannElement:
        if self.kind == "f":
            return weight_f(t, field)
        if self.kind == "g":
            return weight_g(t, self.params, field)
        if self.kind == "h":
            return weight_h(t, self.params, field)
        # composite: f + eps*lam*c*(face product) + eps*mu
        mu = self.params.mu if epsilon(t) > 0 else -self.params.mu
        return weight_g(t, self.params, field) + GrassmannElement.scalar(field, mu)


@dataclass(frozen=True)
class FamilySpec:
    """
    Field-independent description of a weight family.

    ``None`` for lam or mu means symbolic: a fresh indeterminate in the
    exact field, a random residue at each modular point.
    """

    kind: str
    lam: Optional[Fraction] = None
    mu: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ConfigError(f"Unknown weight kind {self.kind!r}; expected one of {WEIGHT_KINDS}")

    def bind(self, field: CoefficientField) -> WeightFamily:
        lam = field.parameter("lam") if self.lam is None else field.from_fraction(self.lam)
        mu = field.parameter("mu") if self.mu is None else field.from_fraction(self.mu)
        return WeightFamily(self.kind, DeformationParams(lam, mu))

    def label(self) -> str:
        if self.kind == "f":
            return "f"
        if self.kind == "g":
            return f"g(lam={format_rational(self.lam)})"
        if self.kind == "h":
            return f"h(mu={format_rational(self.mu)})"
        return f"composite(lam={format_rational(self.lam)}, mu={format_rational(self.mu)})"


# -----------------------------
# Sides
# -----------------------------
@dataclass(frozen=True)
class PentagonSide:
    """
    One side of the pentagon equation.

    ``tetrahedra`` is the product order, ``inner`` the integration list
    (first entry integrated first), ``matrix_order`` the row order of the
    combined Gaussian matrix.
    """

    name: str
    tetrahedra: Tuple[TetrahedronRef, ...]
    inner: Tuple[GeneratorId, ...]
    matrix_order: Tuple[TetrahedronRef, ...]
    scaled: bool = False

    @property
    def faces(self) -> Tuple[GeneratorId, ...]:
        return tuple(sorted({g for t in self.tetrahedra for g in t.faces()}))

    @property
    def outer_faces(self) -> Tuple[GeneratorId, ...]:
        return tuple(g for g in self.faces if g not in self.inner)

    def prefactor(self, field: CoefficientField):
        """1 on the left, -1/zeta45 on the right"""
        if not self.scaled:
            return field.one
        z45 = field.zeta_diff(4, 5)
        if not z45:
            raise CoincidentCoordinatesError(f"zeta_45 vanishes at {field.describe()}; the r.h.s. has a pole")
        return -(field.one / z45)


def _tet(digits: str) -> TetrahedronRef:
    return TetrahedronRef(tuple(int(d) for d in digits))


LHS = PentagonSide(
    name="lhs",
    tetrahedra=(_tet("1234"), _tet("1235")),
    inner=(GeneratorId.face(1, 2, 3),),
    matrix_order=(_tet("1234"), _tet("1235")),
)

RHS = PentagonSide(
    name="rhs",
    tetrahedra=(_tet("1245"), _tet("2345"), _tet("1345")),
    inner=(GeneratorId.face(3, 4, 5), GeneratorId.face(2, 4, 5), GeneratorId.face(1, 4, 5)),
    matrix_order=(_tet("1245"), _tet("1345"), _tet("2345")),
    scaled=True,
)

SIDES = {"lhs": LHS, "rhs": RHS}


def get_side(name: str) -> PentagonSide:
    try:
        return SIDES[name]
    except KeyError:
        raise LabelError(f"Unknown side {name!r}; expected lhs or rhs") from None


def integrate_side(side: PentagonSide, weights: Sequence[GrassmannElement], field: CoefficientField) -> GrassmannElement:
    """Multiply weights in the given order, integrate the inner faces, apply the prefactor"""
    product = reduce(gr_mul, weights)
    return berezin_multi(product, side.inner).scale(side.prefactor(field))


def pentagon_side(side: PentagonSide, family: WeightFamily, field: CoefficientField) -> GrassmannElement:
    started = time.perf_counter()
    weights = [family.weight(t, field) for t in side.tetrahedra]
    result = integrate_side(side, weights, field)
    logger.info(
        "pentagon %s built for %s: %d terms in %.2fs",
        side.name, family.kind, len(result), time.perf_counter() - started,
    )
    return result


def pentagon_lhs(family: WeightFamily, field: CoefficientField) -> GrassmannElement:
    return pentagon_side(LHS, family, field)


def pentagon_rhs(family: WeightFamily, field: CoefficientField) -> GrassmannElement:
    return pentagon_side(RHS, family, field)


def residual_element(family: WeightFamily, field: CoefficientField) -> GrassmannElement:
    return pentagon_lhs(family, field) - pentagon_rhs(family, field)


# -----------------------------
# Verification
# -----------------------------
def modular_points(
    spec: FamilySpec,
    trials: int,
    seed: int,
    prime: int = DEFAULT_PRIME,
    zeta: Optional[Sequence[Fraction]] = None,
) -> List[PrimeField]:
    """Seeded evaluation points; fixed zeta and explicit lam/mu are kept at every point"""
    if trials < 1:
        raise ConfigError("Modular verification needs at least one trial")
    rng = Random(seed)
    return [PrimeField.random(rng, prime, zeta=zeta, lam=spec.lam, mu=spec.mu) for _ in range(trials)]


def residual(
    spec: FamilySpec,
    mode: str = "symbolic",
    zeta: Optional[Sequence[Fraction]] = None,
    trials: int = 20,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
) -> PentagonReport:
    """
    lhs - rhs for one weight family.

    Symbolic mode is a proof over the localized field (lam, mu adjoined as
    indeterminates when not fixed). Modular mode evaluates natively at
    ``trials`` seeded points of GF(prime).
    """
    if mode == "symbolic":
        field = LocalizedField(zeta)
        family = spec.bind(field)
        lhs = pentagon_lhs(family, field)
        rhs = pentagon_rhs(family, field)
        difference = lhs - rhs
        return PentagonReport(
            weight=spec.label(),
            mode="symbolic",
            zero=difference.is_zero,
            lhs_degrees=degree_counts(lhs),
            rhs_degrees=degree_counts(rhs),
            residual_degrees=degree_counts(difference),
            residual_terms=TermReport.from_element(difference),
            residual=difference,
        )
    if mode != "modp":
        raise ConfigError(f"Unknown mode {mode!r}; expected symbolic or modp")

    points: List[PointReport] = []
    first = failing = None
    for index, field in enumerate(modular_points(spec, trials, seed, prime, zeta)):
        family = spec.bind(field)
        lhs = pentagon_lhs(family, field)
        rhs = pentagon_rhs(family, field)
        difference = lhs - rhs
        logger.debug("point %d at %s: %d residual terms", index, field.describe(), len(difference))
        if first is None:
            first = (lhs, rhs)
        if failing is None and not difference.is_zero:
            failing = difference
        points.append(PointReport(
            index=index,
            zeta=field.coordinates(),
            lam=field.residue(field.lam),
            mu=field.residue(field.mu),
            zero=difference.is_zero,
            nonzero_terms=len(difference),
        ))
    shown = failing if failing is not None else difference
    return PentagonReport(
        weight=spec.label(),
        mode="modp",
        zero=failing is None,
        lhs_degrees=degree_counts(first[0]),
        rhs_degrees=degree_counts(first[1]),
        residual_degrees=degree_counts(shown),
        residual_terms=TermReport.from_element(shown),
        prime=prime,
        seed=seed,
        points=points,
        residual=shown,
    )


def modular_consistency(
    spec: FamilySpec,
    trials: int = 20,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    symbolic_residual: Optional[GrassmannElement] = None,
) -> List[bool]:
    """
    At each seeded point, evaluate the symbolic residual and compare with
    the residual computed natively mod p.
    """
    if symbolic_residual is None:
        field = LocalizedField()
        symbolic_residual = residual_element(spec.bind(field), field)
    outcomes = []
    for field in modular_points(spec, trials, seed, prime):
        native = residual_element(spec.bind(field), field)
        outcomes.append(evaluate_element(symbolic_residual, field) == native)
    return outcomes


def theorem_check(
    kind: str,
    field: Optional[CoefficientField] = None,
    monomial_: Optional[Iterable[GeneratorId]] = None,
):
    """
    (lhs, rhs) coefficients of the proof monomial.

    g: a124*a125*a134*a135*a235 with symbolic lam.
    h: a single outer face, a234 by default, with symbolic mu.
    """
    if kind not in THEOREM_MONOMIALS:
        raise ConfigError(f"Theorem check is defined for g and h, not {kind!r}")
    field = field or LocalizedField()
    family = FamilySpec(kind).bind(field)
    target = THEOREM_MONOMIALS[kind] if monomial_ is None else monomial(*monomial_)
    lhs = coefficient_of(pentagon_lhs(family, field), target)
    rhs = coefficient_of(pentagon_rhs(family, field), target)
    return lhs, rhs


def deformation_parts(kind: str, field: Optional[CoefficientField] = None) -> Dict[str, GrassmannElement]:
    """side(w) - side(f) per side, lam and mu taken from the field"""
    field = field or LocalizedField()
    family = FamilySpec(kind).bind(field)
    base = FamilySpec("f").bind(field)
    return {
        side.name: pentagon_side(side, family, field) - pentagon_side(side, base, field)
        for side in (LHS, RHS)
    }


def degree_profile(kind: str, field: Optional[CoefficientField] = None) -> Dict[str, Tuple[int, ...]]:
    """Degrees present in side(w) - side(f), per side"""
    return {name: part.degrees for name, part in deformation_parts(kind, field).items()}


# -----------------------------
# Composite exploration
# -----------------------------
def lambda_mu_divisible(element: GrassmannElement) -> bool:
    """Every coefficient numerator divisible by lam*mu (exact field only)"""
    lam, mu = (POLY_RING.gens[len(VERTICES) + PARAMETERS.index(name)] for name in PARAMETERS)
    for coefficient in element.terms.values():
        try:
            coefficient.numerator.exquo(lam * mu)
        except ExactQuotientFailed:
            return False
    return True


def composite_explore(
    grid: Sequence[Tuple[Optional[Fraction], Optional[Fraction]]],
    mode: str = "symbolic",
    zeta: Optional[Sequence[Fraction]] = None,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
) -> ExplorationReport:
    """
    Residual of the composite family at each (lam, mu) of the grid.

    Reports what is computed; a nonzero residual is not claimed to be a
    theorem. In modp mode each cell is evaluated at one seeded point.
    """
    entries = []
    for lam, mu in grid:
        spec = FamilySpec("composite", lam, mu)
        if mode == "symbolic":
            field = LocalizedField(zeta)
        else:
            field = modular_points(spec, 1, seed, prime, zeta)[0]
        difference = residual_element(spec.bind(field), field)
        divisible = None
        if mode == "symbolic" and lam is None and mu is None:
            divisible = lambda_mu_divisible(difference)
        logger.info("composite lam=%s mu=%s: %d residual terms", format_rational(lam), format_rational(mu), len(difference))
        entries.append(CompositeEntry(
            lam=format_rational(lam),
            mu=format_rational(mu),
            zero=difference.is_zero,
            term_count=len(difference),
            lambda_mu_divisible=divisible,
            terms=TermReport.from_element(difference),
        ))
    return ExplorationReport(mode=mode, entries=entries)
