# core/report_schema.py

from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from core.coeffs import DEFAULT_PRIME, validate_prime
from core.errors import CoincidentCoordinatesError
from core.notation import parse_grid, parse_monomial, parse_rational, parse_tetrahedron, parse_zeta

Mode = Literal["symbolic", "modp"]
WeightName = Literal["f", "g", "h", "composite"]
ShowObject = Literal["weight", "matrix-A", "matrix-lhs", "matrix-rhs", "form"]


class TermReport(BaseModel):
    """One monomial of a Grassmann element with its rendered coefficient"""
    monomial: str = Field(..., description="Canonical monomial, e.g. a[124]*a[125]*a[135]")
    degree: int = Field(..., description="Grassmann degree of the monomial")
    coefficient: str = Field(..., description="Rendered coefficient")

    @classmethod
    def from_element(cls, element, limit: Optional[int] = None) -> List["TermReport"]:
        """Terms of a GrassmannElement in degree-major order"""
        items = element.items()
        if limit is not None:
            items = items[:limit]
        return [
            cls(
                monomial="*".join(str(g) for g in m) or "1",
                degree=len(m),
                coefficient=element.field.render(c),
            )
            for m, c in items
        ]


class PointReport(BaseModel):
    """Outcome at one modular evaluation point"""
    index: int = Field(..., description="Trial number, starting at 0")
    zeta: List[int] = Field(..., description="Residues of zeta_1..zeta_5")
    lam: int = Field(..., description="Residue used for lambda")
    mu: int = Field(..., description="Residue used for mu")
    zero: bool = Field(..., description="Residual vanished at this point")
    nonzero_terms: int = Field(0, description="Residual monomials with nonzero coefficient")


class PentagonReport(BaseModel):
    """Residual of the pentagon equation for one weight family"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    weight: str = Field(..., description="Weight family with its parameter settings")
    mode: Mode = Field(..., description="symbolic proof or modular sampling")
    zero: bool = Field(..., description="Residual has no monomials (at every point in modp mode)")
    lhs_degrees: Dict[int, int] = Field(default_factory=dict, description="Monomial count per degree, l.h.s.")
    rhs_degrees: Dict[int, int] = Field(default_factory=dict, description="Monomial count per degree, r.h.s.")
    residual_degrees: Dict[int, int] = Field(default_factory=dict, description="Monomial count per degree, residual")
    residual_terms: List[TermReport] = Field(default_factory=list, description="Nonzero residual monomials")
    prime: Optional[int] = Field(None, description="Modulus in modp mode")
    seed: Optional[int] = Field(None, description="RNG seed in modp mode")
    points: List[PointReport] = Field(default_factory=list, description="Per-point outcomes in modp mode")
    residual: Optional[Any] = Field(None, exclude=True, description="Residual GrassmannElement (first failing point in modp mode)")

    @model_validator(mode="after")
    def _zero_matches_residual(self):
        if self.residual is not None and self.zero and not self.residual.is_zero:
            raise ValueError("Report marked zero but the residual has monomials")
        return self


class CoefficientReport(BaseModel):
    """Coefficient of one monomial on one or both pentagon sides"""
    weight: str
    mode: Mode
    monomial: str
    lhs: Optional[str] = Field(None, description="Rendered l.h.s. coefficient")
    rhs: Optional[str] = Field(None, description="Rendered r.h.s. coefficient")
    equal: Optional[bool] = Field(None, description="Verdict when both sides were requested")


class MatrixReport(BaseModel):
    """Labeled matrix rendering"""
    title: str
    rows: List[str]
    columns: List[str]
    entries: List[List[str]]


class ShowReport(BaseModel):
    """Rendering of a weight, form or matrix"""
    object: ShowObject
    title: str
    terms: List[TermReport] = Field(default_factory=list)
    matrix: Optional[MatrixReport] = None


class CheckResult(BaseModel):
    """One named identity and whether it held"""
    name: str
    passed: bool
    detail: str = ""


class CrosscheckReport(BaseModel):
    """Gaussian-representation and minor-rule identities"""
    weight: str
    mode: Mode
    checks: List[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class CompositeEntry(BaseModel):
    """Composite-family residual at one (lambda, mu) setting"""
    lam: str
    mu: str
    zero: bool
    term_count: int
    lambda_mu_divisible: Optional[bool] = Field(
        None, description="Every residual coefficient divisible by lam*mu (both symbolic only)"
    )
    terms: List[TermReport] = Field(default_factory=list)


class ExplorationReport(BaseModel):
    """Residuals of the composite family over a grid; reports, never asserts"""
    mode: Mode
    entries: List[CompositeEntry] = Field(default_factory=list)


class RunConfig(BaseModel):
    """Validated command-line configuration"""
    command: Literal["verify", "coeff", "show", "crosscheck", "explore"]
    weight: WeightName = "f"
    mode: Mode = "symbolic"
    prime: int = DEFAULT_PRIME
    trials: int = 20
    seed: int = 0
    lam: str = Field("sym", description="'sym' or an explicit rational")
    mu: str = Field("sym", description="'sym' or an explicit rational")
    zeta: Optional[str] = Field(None, description="Five comma-separated rationals")
    output: Literal["text", "structured"] = "text"
    monomial: Optional[str] = None
    side: Literal["lhs", "rhs"] = "lhs"
    both: bool = False
    tet: str = "1234"
    show_object: Optional[ShowObject] = None
    grid: Optional[str] = None
    timings: bool = False

    @field_validator("prime")
    @classmethod
    def _odd_prime(cls, value: int) -> int:
        return validate_prime(value)

    @field_validator("lam", "mu")
    @classmethod
    def _parameter(cls, value: str) -> str:
        parse_rational(value)
        return value.strip()

    @field_validator("zeta")
    @classmethod
    def _coordinates(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return value
        values = parse_zeta(value)
        if len(values) != 5:
            raise ValueError(f"--zeta needs 5 values, got {len(values)}")
        if len(set(values)) != 5:
            raise CoincidentCoordinatesError(f"--zeta values {value} are not pairwise distinct")
        return value

    @field_validator("tet")
    @classmethod
    def _tetrahedron(cls, value: str) -> str:
        parse_tetrahedron(value)
        return value

    @field_validator("monomial")
    @classmethod
    def _monomial(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_monomial(value)
        return value

    @field_validator("grid")
    @classmethod
    def _grid(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_grid(value)
        return value

    @model_validator(mode="after")
    def _command_requirements(self):
        if self.mode == "modp" and self.trials < 1:
            raise ValueError("modp mode needs --trials >= 1")
        if self.command == "coeff" and self.monomial is None:
            raise ValueError("coeff needs --monomial")
        if self.command == "show" and self.show_object is None:
            raise ValueError("show needs an object selector")
        return self

    # parsed views
    @property
    def lam_value(self) -> Optional[Fraction]:
        return parse_rational(self.lam)

    @property
    def mu_value(self) -> Optional[Fraction]:
        return parse_rational(self.mu)

    @property
    def zeta_values(self) -> Optional[List[Fraction]]:
        return None if self.zeta is None else parse_zeta(self.zeta)

    @property
    def grid_values(self) -> Optional[List[Tuple[Optional[Fraction], Optional[Fraction]]]]:
        return None if self.grid is None else parse_grid(self.grid)


class RunDocument(BaseModel):
    """Self-contained structured output of one CLI run"""
    config: RunConfig
    report: Dict[str, Any]
    timings: Optional[Dict[str, float]] = None
