# core/notation.py

from fractions import Fraction
from typing import List, Optional, Tuple

from core.errors import ConfigError, LabelError
from core.grassmann import GeneratorId, Monomial, monomial
from core.weights import TetrahedronRef

# Values accepted for "leave this parameter symbolic"
SYMBOLIC_ALIASES = {"sym", "symbolic", "*"}


def _digits(text: str, size: int, what: str) -> Tuple[int, ...]:
    text = text.strip()
    if len(text) != size or not text.isdigit():
        raise LabelError(f"{what} must be {size} digits, got {text!r}")
    return tuple(int(ch) for ch in text)


def parse_face(text: str) -> GeneratorId:
    """
    Face generator from a digit triple

    Examples:
        '124' -> a[124]
        '421' -> a[124]   (faces are unoriented)
    """
    return GeneratorId.face(*_digits(text, 3, "Face"))


def parse_monomial(text: str) -> Monomial:
    """Comma-separated faces, sorted internally"""
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise LabelError("Monomial must list at least one face")
    return monomial(*(parse_face(part) for part in parts))


def parse_tetrahedron(text: str) -> TetrahedronRef:
    return TetrahedronRef(_digits(text, 4, "Tetrahedron"))


def parse_rational(text: str) -> Optional[Fraction]:
    """'sym' -> None (symbolic); '3/2' -> Fraction(3, 2)"""
    text = text.strip()
    if text.lower() in SYMBOLIC_ALIASES:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"Expected a rational like 3/2 or 'sym', got {text!r}") from None


def parse_zeta(text: str) -> List[Fraction]:
    values = []
    for part in text.split(","):
        value = parse_rational(part)
        if value is None:
            raise ConfigError("Coordinates must be explicit rationals")
        values.append(value)
    return values


def parse_grid(text: str) -> List[Tuple[Optional[Fraction], Optional[Fraction]]]:
    """
    Grid of (lam, mu) settings

    Example:
        '0:1;1:0;sym:sym' -> [(0, 1), (1, 0), (None, None)]
    """
    grid = []
    for cell in text.split(";"):
        if not cell.strip():
            continue
        try:
            lam, mu = cell.split(":")
        except ValueError:
            raise ConfigError(f"Grid cell {cell!r} must look like lam:mu") from None
        grid.append((parse_rational(lam), parse_rational(mu)))
    if not grid:
        raise ConfigError("Grid must contain at least one lam:mu cell")
    return grid


def format_rational(value: Optional[Fraction]) -> str:
    return "sym" if value is None else str(value)
