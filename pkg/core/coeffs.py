# core/coeffs.py
"""
Coefficient fields for the Grassmann engine.

Two interchangeable fields are provided:

* ``LocalizedField`` - exact symbolic arithmetic in QQ[z1..z5, lam, mu]
  localized at the differences zeta_ij = z_i - z_j. Polynomials are sympy
  sparse ring elements; denominators are kept as multisets of index pairs.
* ``PrimeField`` - the same computations evaluated at one point of GF(p),
  used for fast Schwartz-Zippel identity testing.

Both expose the same small surface (``zero``, ``one``, ``from_int``,
``from_fraction``, ``zeta_diff``, ``parameter``, ``determinant``,
``render``) so that weights, forms and pentagon sides are built by the
same code in either mode.
"""

import logging
import operator
from collections import Counter
from fractions import Fraction
from itertools import combinations
from random import Random
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, ring

from core.errors import (
    CoincidentCoordinatesError,
    ConfigError,
    LabelError,
    NonUnitDivisionError,
)

logger = logging.getLogger(__name__)

VERTICES = (1, 2, 3, 4, 5)
PAIRS = tuple(combinations(VERTICES, 2))
PARAMETERS = ("lam", "mu")

# 2**61 - 1 is a Mersenne prime; total degrees stay below ~12 so one random
# point misses a nonzero coefficient with probability below 1e-16.
DEFAULT_PRIME = 2**61 - 1

# exp over the 20 face and auxiliary generators needs 1/n! up to n = 10,
# and five distinct coordinates must fit; 23 is the first prime above both.
MIN_PRIME = 23

POLY_RING, *_ = ring("z1,z2,z3,z4,z5,lam,mu", QQ, grlex)

MultiPoly = PolyElement
Pair = Tuple[int, int]
Rational = Union[int, Fraction]


def _check_vertex(i: int) -> int:
    if i not in VERTICES:
        raise LabelError(f"Vertex label {i!r} is outside {VERTICES}")
    return i


def _check_pair(pair: Pair) -> Pair:
    i, j = pair
    _check_vertex(i)
    _check_vertex(j)
    if not i < j:
        raise LabelError(f"Denominator pair {pair!r} must satisfy i < j")
    return (i, j)


def validate_prime(prime: int) -> int:
    """Reject composite moduli and primes too small for the exp series"""
    if prime < MIN_PRIME or not isprime(prime):
        raise ConfigError(f"Modulus {prime} must be an odd prime of at least {MIN_PRIME}")
    return prime


# -----------------------------
# Polynomials
# -----------------------------
def linear_form(i: int, j: int) -> MultiPoly:
    """The polynomial z_i - z_j"""
    gens = POLY_RING.gens
    return gens[_check_vertex(i) - 1] - gens[_check_vertex(j) - 1]


def exact_div_linear(p: MultiPoly, pair: Pair) -> Optional[MultiPoly]:
    """
    Exact quotient of p by zeta_ij.

    Returns q with q * (z_i - z_j) == p, or None when p is not divisible.
    A single polynomial is a Groebner basis of its ideal, so a zero
    remainder from multivariate division decides divisibility.
    """
    i, j = _check_pair(pair)
    if not p:
        return p
    try:
        return p.exquo(linear_form(i, j))
    except ExactQuotientFailed:
        return None


def split_linear_factors(p: MultiPoly) -> Tuple[MultiPoly, Counter]:
    """Pull every zeta_ij factor out of a nonzero polynomial"""
    factors: Counter = Counter()
    rest = p
    for pair in PAIRS:
        while not rest.is_ground:
            quotient = exact_div_linear(rest, pair)
            if quotient is None:
                break
            rest = quotient
            factors[pair] += 1
    return rest, factors


def unit_factorization(p: MultiPoly):
    """
    Write a unit of the localized ring as c * prod(zeta_ij).

    Raises:
        ZeroDivisionError: p is zero
        NonUnitDivisionError: p has a factor other than the zeta_ij
    """
    if not p:
        raise ZeroDivisionError("Division by zero scalar")
    rest, factors = split_linear_factors(p)
    if not rest.is_ground:
        raise NonUnitDivisionError(
            f"{render_poly(p)} is not a unit of the localized ring; "
            "only constants times products of zeta differences may be inverted"
        )
    return rest.LC, factors


def _denominator_poly(factors: Counter) -> MultiPoly:
    result = POLY_RING.one
    for (i, j), count in sorted(factors.items()):
        result *= linear_form(i, j) ** count
    return result


def _render_factor(pair: Pair, count: int) -> str:
    text = f"(z{pair[0]} - z{pair[1]})"
    return text if count == 1 else f"{text}**{count}"


def render_poly(p: MultiPoly) -> str:
    """Deterministic rendering with zeta differences pulled out as factors"""
    if not p:
        return "0"
    rest, factors = split_linear_factors(p)
    pieces = [_render_factor(pair, count) for pair, count in sorted(factors.items())]
    if not rest.is_ground:
        return "*".join([f"({rest})"] + pieces)
    constant = rest.LC
    if not pieces:
        return str(constant)
    if constant == 1:
        prefix = ""
    elif constant == -1:
        prefix = "-"
    else:
        prefix = f"{constant}*"
    return prefix + "*".join(pieces)


# -----------------------------
# Localized scalars
# -----------------------------
def _normalize(numerator: MultiPoly, denominator: Counter) -> Tuple[MultiPoly, Tuple[Pair, ...]]:
    if not numerator:
        return numerator, ()
    reduced: Counter = Counter()
    for pair, count in sorted(denominator.items()):
        while count:
            quotient = exact_div_linear(numerator, pair)
            if quotient is None:
                break
            numerator, count = quotient, count - 1
        if count:
            reduced[pair] = count
    return numerator, tuple(sorted(reduced.elements()))


class LocalizedScalar:
    """
    numerator / prod(zeta_ij over the denominator multiset)

    Always normalized: the numerator is not divisible by any zeta_ij
    still present in the denominator.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Union[MultiPoly, Rational] = 0, denominator: Iterable[Pair] = ()):
        factors = Counter(_check_pair(tuple(pair)) for pair in denominator)
        self.numerator, self.denominator = _normalize(_to_poly(numerator), factors)

    @classmethod
    def _normalized(cls, numerator: MultiPoly, denominator: Tuple[Pair, ...]) -> "LocalizedScalar":
        scalar = cls.__new__(cls)
        scalar.numerator = numerator
        scalar.denominator = denominator
        return scalar

    @staticmethod
    def _coerce(other) -> Optional["LocalizedScalar"]:
        if isinstance(other, LocalizedScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return LocalizedScalar(other)
        return None

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        mine, theirs = Counter(self.denominator), Counter(other.denominator)
        common = mine | theirs
        numerator = (
            self.numerator * _denominator_poly(common - mine)
            + other.numerator * _denominator_poly(common - theirs)
        )
        return LocalizedScalar(numerator, common.elements())

    __radd__ = __add__

    def __neg__(self):
        return LocalizedScalar._normalized(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.numerator or not other.numerator:
            return LocalizedScalar()
        return LocalizedScalar(
            self.numerator * other.numerator,
            self.denominator + other.denominator,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        constant, factors = unit_factorization(other.numerator)
        numerator = (self.numerator * _denominator_poly(Counter(other.denominator))).quo_ground(constant)
        return LocalizedScalar(numerator, (Counter(self.denominator) + factors).elements())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    # comparison
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (
            self.numerator * _denominator_poly(Counter(other.denominator))
            == other.numerator * _denominator_poly(Counter(self.denominator))
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __bool__(self):
        return bool(self.numerator)

    @property
    def is_zero(self) -> bool:
        return not self.numerator

    def render(self) -> str:
        numerator = render_poly(self.numerator)
        if not self.denominator:
            return numerator
        factors = Counter(self.denominator)
        pieces = [_render_factor(pair, count) for pair, count in sorted(factors.items())]
        denominator = pieces[0] if len(pieces) == 1 else "(" + "*".join(pieces) + ")"
        if not _is_product(numerator):
            numerator = f"({numerator})"
        return f"{numerator}/{denominator}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LocalizedScalar({self.render()})"


def _is_product(text: str) -> bool:
    depth = 0
    for char in text.lstrip("-"):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif depth == 0 and char in "+ /":
            return False
    return True


def _to_poly(value) -> MultiPoly:
    if isinstance(value, PolyElement):
        return POLY_RING(value)
    if isinstance(value, Fraction):
        return POLY_RING(QQ(value.numerator, value.denominator))
    return POLY_RING(value)


def check_relabeling(images: Sequence[int]) -> Tuple[int, ...]:
    """images[k - 1] is the new label of vertex k"""
    images = tuple(images)
    if sorted(images) != list(VERTICES):
        raise LabelError(f"Relabeling {images!r} is not a permutation of {VERTICES}")
    return images


def transport(values: Sequence, images: Sequence[int]) -> tuple:
    """Move the value at vertex k to vertex images[k - 1]"""
    moved = [None] * len(VERTICES)
    for k, value in zip(VERTICES, values):
        moved[images[k - 1] - 1] = value
    return tuple(moved)


def relabel_scalar(x: LocalizedScalar, images: Sequence[int], parameter_sign: int = 1) -> LocalizedScalar:
    """
    Substitute z_k -> z_images[k-1] and lam, mu -> parameter_sign * lam, mu.

    Denominator pairs that come out reversed are flipped back with a sign.
    """
    images = check_relabeling(images)
    size = len(VERTICES)
    terms = {}
    for monom, coeff in x.numerator.terms():
        exponents = transport(monom[:size], images)
        if parameter_sign < 0 and sum(monom[size:]) % 2:
            coeff = -coeff
        terms[exponents + tuple(monom[size:])] = coeff
    numerator = POLY_RING.from_dict(terms)
    pairs = []
    for i, j in x.denominator:
        a, b = images[i - 1], images[j - 1]
        if a > b:
            a, b = b, a
            numerator = -numerator
        pairs.append((a, b))
    return LocalizedScalar(numerator, pairs)


def zeta_diff(i: int, j: int) -> LocalizedScalar:
    """zeta_i - zeta_j as a symbolic scalar with empty denominator"""
    return LocalizedScalar(linear_form(i, j))


_OPERATIONS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def scalar_arith(x, y, op: str):
    """Apply one of add/sub/mul/div to two scalars of the same field"""
    try:
        return _OPERATIONS[op](x, y)
    except KeyError:
        raise ValueError(f"Unknown scalar operation {op!r}; expected one of {sorted(_OPERATIONS)}") from None


# -----------------------------
# Fraction-free determinant
# -----------------------------
def bareiss(rows: Sequence[Sequence], zero, one, exquo: Callable):
    """Bareiss elimination; every intermediate quotient is exact"""
    m = [list(row) for row in rows]
    n = len(m)
    if n == 0:
        return one
    sign, previous = 1, one
    for k in range(n - 1):
        if not m[k][k]:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return zero
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exquo(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous)
        previous = m[k][k]
    return m[-1][-1] if sign > 0 else -m[-1][-1]


def _check_square(rows: Sequence[Sequence]) -> None:
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise LabelError(f"Determinant needs a square matrix, got {size} rows of lengths {[len(r) for r in rows]}")


# -----------------------------
# Fields
# -----------------------------
class LocalizedField:
    """
    Exact field of localized rational functions.

    With ``zeta`` given, the coordinates are fixed rationals and only the
    deformation parameters stay symbolic.
    """

    mode = "symbolic"

    def __init__(self, zeta: Optional[Sequence[Rational]] = None):
        if zeta is not None:
            zeta = tuple(Fraction(value) for value in zeta)
            if len(zeta) != len(VERTICES):
                raise ConfigError(f"Expected {len(VERTICES)} coordinates, got {len(zeta)}")
            if len(set(zeta)) != len(zeta):
                raise CoincidentCoordinatesError(f"Coordinates {[str(v) for v in zeta]} are not pairwise distinct")
        self.zeta = zeta
        self.zero = LocalizedScalar(0)
        self.one = LocalizedScalar(1)

    def from_int(self, value: int) -> LocalizedScalar:
        return LocalizedScalar(value)

    def from_fraction(self, value: Rational) -> LocalizedScalar:
        return LocalizedScalar(Fraction(value))

    def zeta_diff(self, i: int, j: int) -> LocalizedScalar:
        if self.zeta is None:
            return zeta_diff(i, j)
        return self.from_fraction(self.zeta[_check_vertex(i) - 1] - self.zeta[_check_vertex(j) - 1])

    def parameter(self, name: str) -> LocalizedScalar:
        """A deformation parameter adjoined as a fresh indeterminate"""
        if name not in PARAMETERS:
            raise LabelError(f"Unknown parameter {name!r}; expected one of {PARAMETERS}")
        return LocalizedScalar(POLY_RING.gens[len(VERTICES) + PARAMETERS.index(name)])

    def determinant(self, rows: Sequence[Sequence[LocalizedScalar]]) -> LocalizedScalar:
        """Clear row denominators, run Bareiss over QQ[z], divide back"""
        _check_square(rows)
        poly_rows: List[List[MultiPoly]] = []
        denominator: Counter = Counter()
        for row in rows:
            common: Counter = Counter()
            for entry in row:
                common |= Counter(entry.denominator)
            poly_rows.append([
                entry.numerator * _denominator_poly(common - Counter(entry.denominator))
                for entry in row
            ])
            denominator += common
        det = bareiss(poly_rows, POLY_RING.zero, POLY_RING.one, lambda a, b: a.exquo(b))
        return LocalizedScalar(det, denominator.elements())

    def render(self, value: LocalizedScalar) -> str:
        return value.render()

    def relabeled(self, images: Sequence[int], parameter_sign: int = 1) -> Tuple["LocalizedField", Callable]:
        """
        Field and coefficient map for the vertex relabeling k -> images[k-1].

        Symbolic coordinates and parameters are substituted; fixed
        coordinates move to their new labels.
        """
        images = check_relabeling(images)
        target = self if self.zeta is None else LocalizedField(transport(self.zeta, images))
        return target, lambda value: relabel_scalar(value, images, parameter_sign)

    def describe(self) -> str:
        if self.zeta is None:
            return "symbolic"
        return "symbolic at zeta=(" + ",".join(str(v) for v in self.zeta) + ")"


class PrimeField:
    """
    GF(p) together with one evaluation point for zeta_1..zeta_5, lam, mu.

    Elements are sympy ``GF(p)`` domain elements.
    """

    mode = "modp"

    def __init__(
        self,
        zeta: Sequence[Rational],
        lam: Rational = 0,
        mu: Rational = 0,
        prime: int = DEFAULT_PRIME,
    ):
        self.prime = validate_prime(prime)
        self.domain = GF(prime)
        self.zero = self.domain.zero
        self.one = self.domain.one
        if len(zeta) != len(VERTICES):
            raise ConfigError(f"Expected {len(VERTICES)} coordinates, got {len(zeta)}")
        self.zeta = tuple(self.from_fraction(value) for value in zeta)
        residues = [int(value) % prime for value in self.zeta]
        if len(set(residues)) != len(residues):
            raise CoincidentCoordinatesError(
                f"Coordinates {residues} coincide modulo {prime}; some zeta_ij is not invertible"
            )
        self.lam = self.from_fraction(lam)
        self.mu = self.from_fraction(mu)

    @classmethod
    def random(
        cls,
        rng: Random,
        prime: int = DEFAULT_PRIME,
        zeta: Optional[Sequence[Rational]] = None,
        lam: Optional[Rational] = None,
        mu: Optional[Rational] = None,
    ) -> "PrimeField":
        """Draw a valid point; fixed values are kept, missing ones are sampled"""
        if zeta is None:
            zeta = rng.sample(range(prime), len(VERTICES))
        if lam is None:
            lam = rng.randrange(prime)
        if mu is None:
            mu = rng.randrange(prime)
        return cls(zeta, lam=lam, mu=mu, prime=prime)

    def from_int(self, value: int):
        return self.domain(value)

    def from_fraction(self, value: Rational):
        value = Fraction(value)
        denominator = self.domain(value.denominator)
        if not denominator:
            raise ZeroDivisionError(f"Denominator of {value} vanishes modulo {self.prime}")
        return self.domain(value.numerator) / denominator

    def zeta_diff(self, i: int, j: int):
        return self.zeta[_check_vertex(i) - 1] - self.zeta[_check_vertex(j) - 1]

    def parameter(self, name: str):
        if name not in PARAMETERS:
            raise LabelError(f"Unknown parameter {name!r}; expected one of {PARAMETERS}")
        return self.lam if name == "lam" else self.mu

    @property
    def ring_point(self) -> tuple:
        """Values of the ring generators z1..z5, lam, mu"""
        return self.zeta + (self.lam, self.mu)

    def coordinates(self) -> List[int]:
        return [self.residue(value) for value in self.zeta]

    def residue(self, value) -> int:
        return int(value) % self.prime

    def determinant(self, rows: Sequence[Sequence]):
        _check_square(rows)
        return bareiss(rows, self.zero, self.one, lambda a, b: a / b)

    def render(self, value) -> str:
        return str(self.residue(value))

    def relabeled(self, images: Sequence[int], parameter_sign: int = 1) -> Tuple["PrimeField", Callable]:
        """The point moved by k -> images[k-1], lam and mu scaled by parameter_sign"""
        images = check_relabeling(images)
        target = PrimeField(
            transport(self.coordinates(), images),
            lam=parameter_sign * self.residue(self.lam),
            mu=parameter_sign * self.residue(self.mu),
            prime=self.prime,
        )
        return target, lambda value: target.from_int(self.residue(value))

    def describe(self) -> str:
        return f"mod {self.prime} at zeta=({','.join(map(str, self.coordinates()))})"


CoefficientField = Union[LocalizedField, PrimeField]


def eval_modp(x: LocalizedScalar, field: PrimeField):
    """Evaluation homomorphism from the localized ring into GF(p)"""
    point = field.ring_point
    domain = POLY_RING.domain
    total = field.zero
    for monom, coeff in x.numerator.terms():
        term = field.from_fraction(Fraction(int(domain.numer(coeff)), int(domain.denom(coeff))))
        for value, exponent in zip(point, monom):
            if exponent:
                term = term * value**exponent
        total = total + term
    denominator = field.one
    for i, j in x.denominator:
        denominator = denominator * field.zeta_diff(i, j)
    if not denominator:
        raise CoincidentCoordinatesError(f"A denominator of {x.render()} vanishes at {field.describe()}")
    return total / denominator
