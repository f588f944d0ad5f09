# agents/verification_agent.py

import logging
import time
from contextlib import contextmanager
from typing import Dict, List, Tuple, Union

from core.coeffs import CoefficientField, LocalizedField
from core.errors import ConfigError, LabelError
from core.gaussian import (
    MinorRule,
    big_matrix,
    form_for,
    gaussian_route_holds,
    matrix_A,
    representation_holds,
    stacking_holds,
)
from core.grassmann import coefficient_of, render_monomial
from core.notation import parse_grid, parse_monomial, parse_tetrahedron
from core.pentagon import (
    LHS,
    RHS,
    THEOREM_MONOMIALS,
    FamilySpec,
    composite_explore,
    deformation_parts,
    get_side,
    modular_points,
    pentagon_side,
    residual,
    theorem_check,
)
from core.report_schema import (
    CheckResult,
    CoefficientReport,
    CrosscheckReport,
    ExplorationReport,
    MatrixReport,
    PentagonReport,
    RunConfig,
    RunDocument,
    ShowReport,
    TermReport,
)
from core.symmetry import orbit_coverage, side_symmetries

logger = logging.getLogger(__name__)

Report = Union[PentagonReport, CoefficientReport, ShowReport, CrosscheckReport, ExplorationReport]

DEFAULT_GRID = "0:sym;sym:0;sym:sym"

# Degrees of side(w) - side(f) predicted by the deformation theorems
EXPECTED_DEGREES = {"g": (5,), "h": (1,)}


class VerificationAgent:
    """Runs one command of a validated RunConfig and returns its report"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.timings: Dict[str, float] = {}

    @contextmanager
    def _timed(self, phase: str):
        started = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - started
            self.timings[phase] = round(elapsed, 3)
            logger.info("%s finished in %.2fs", phase, elapsed)

    @property
    def spec(self) -> FamilySpec:
        return FamilySpec(self.config.weight, self.config.lam_value, self.config.mu_value)

    def _fields(self, count: int) -> List[CoefficientField]:
        config = self.config
        if config.mode == "symbolic":
            return [LocalizedField(config.zeta_values)]
        return modular_points(self.spec, count, config.seed, config.prime, config.zeta_values)

    def _field(self) -> CoefficientField:
        return self._fields(1)[0]

    def _free_parameter_fields(self, count: int) -> List[CoefficientField]:
        """Points where lam and mu are drawn even when the run fixes them"""
        config = self.config
        if config.mode == "symbolic":
            return [LocalizedField(config.zeta_values)]
        return modular_points(FamilySpec(config.weight), count, config.seed, config.prime, config.zeta_values)

    def run(self) -> Tuple[int, Report]:
        """
        Dispatch on the command

        Returns:
            (exit status, report): 0 verified, 1 identity fails
        """
        handlers = {
            "verify": self.verify,
            "coeff": self.coefficient,
            "show": self.show,
            "crosscheck": self.crosscheck,
            "explore": self.explore,
        }
        with self._timed(self.config.command):
            report = handlers[self.config.command]()
        return self.status(report), report

    @staticmethod
    def status(report: Report) -> int:
        if isinstance(report, PentagonReport):
            return 0 if report.zero else 1
        if isinstance(report, CrosscheckReport):
            return 0 if report.passed else 1
        if isinstance(report, CoefficientReport) and report.equal is False:
            return 1
        return 0

    def document(self, report: Report) -> RunDocument:
        return RunDocument(
            config=self.config,
            report=report.model_dump(mode="json"),
            timings=dict(self.timings) if self.config.timings else None,
        )

    # -----------------------------
    # Commands
    # -----------------------------
    def verify(self) -> PentagonReport:
        config = self.config
        return residual(
            self.spec,
            mode=config.mode,
            zeta=config.zeta_values,
            trials=config.trials,
            seed=config.seed,
            prime=config.prime,
        )

    def coefficient(self) -> CoefficientReport:
        config = self.config
        target = parse_monomial(config.monomial)
        sides = [LHS, RHS] if config.both else [get_side(config.side)]
        for side in sides:
            stray = [g for g in target if g not in side.outer_faces]
            if stray:
                raise LabelError(
                    f"{', '.join(map(str, stray))} is not an outer face of the {side.name}; "
                    f"outer faces are {', '.join(map(str, side.outer_faces))}"
                )
        field = self._field()
        family = self.spec.bind(field)
        values = {}
        for side in sides:
            with self._timed(f"{side.name} expansion"):
                values[side.name] = coefficient_of(pentagon_side(side, family, field), target)
        return CoefficientReport(
            weight=self.spec.label(),
            mode=config.mode,
            monomial=render_monomial(target),
            lhs=field.render(values["lhs"]) if "lhs" in values else None,
            rhs=field.render(values["rhs"]) if "rhs" in values else None,
            equal=values["lhs"] == values["rhs"] if config.both else None,
        )

    def show(self) -> ShowReport:
        config = self.config
        field = self._field()
        tet = parse_tetrahedron(config.tet)
        selector = config.show_object
        if selector == "weight":
            family = self.spec.bind(field)
            return ShowReport(
                object=selector,
                title=f"{self.spec.label()} weight of {tet} ({field.describe()})",
                terms=TermReport.from_element(family.weight(tet, field)),
            )
        if selector == "form":
            form = form_for(self.spec.bind(field), tet, field)
            return ShowReport(
                object=selector,
                title=f"{form.name} ({field.describe()})",
                terms=TermReport.from_element(form.element),
            )
        if selector == "matrix-A":
            matrix, title = matrix_A(tet, field), f"A_{tet}"
        else:
            side = selector.split("-", 1)[1]
            matrix, title = big_matrix(side, field), f"{side} matrix"
        return ShowReport(
            object=selector,
            title=f"{title} ({field.describe()})",
            matrix=MatrixReport(
                title=title,
                rows=[str(r) for r in matrix.row_labels],
                columns=[str(c) for c in matrix.col_labels],
                entries=matrix.rendered(),
            ),
        )

    def crosscheck(self) -> CrosscheckReport:
        """
        Gaussian representations of the five weights, the whole-side
        Gaussian route, and per kind: stacking plus exhaustive minors (f),
        degree structure, proof monomial orbit and proof monomial (g, h).
        Every kind ends with the twelve vertex relabelings.

        The g and h theorem checks always draw their own lam and mu; values
        fixed for the run apply to the other checks only.
        """
        config = self.config
        kind = config.weight
        if kind == "composite":
            raise ConfigError("crosscheck needs --weight f, g or h; the composite weight has no Gaussian form")
        fields = self._fields(config.trials)
        free_fields = self._free_parameter_fields(config.trials) if kind != "f" else fields
        checks: List[CheckResult] = []
        tetrahedra = sorted({t for side in (LHS, RHS) for t in side.tetrahedra}, key=str)
        for index, field in enumerate(fields):
            suffix = f" @point {index}" if config.mode == "modp" else ""
            family = self.spec.bind(field)
            with self._timed(f"representations{suffix}"):
                for t in tetrahedra:
                    checks.append(CheckResult(
                        name=f"representation {kind} {t}{suffix}",
                        passed=representation_holds(family, t, field),
                    ))
            with self._timed(f"gaussian sides{suffix}"):
                for side in (LHS, RHS):
                    checks.append(CheckResult(
                        name=f"gaussian route {side.name}{suffix}",
                        passed=gaussian_route_holds(side, self.spec, field),
                    ))
            if kind == "f":
                with self._timed(f"minors{suffix}"):
                    for side in (LHS, RHS):
                        checks.append(CheckResult(
                            name=f"stacking {side.name}{suffix}",
                            passed=stacking_holds(side, field),
                        ))
                        agreement = MinorRule(side, field).agreement()
                        checks.append(CheckResult(
                            name=f"minor rule {side.name}{suffix}",
                            passed=all(agreement.values()),
                            detail=f"{sum(agreement.values())}/{len(agreement)} monomials agree",
                        ))
            else:
                free = free_fields[index]
                with self._timed(f"theorem structure{suffix}"):
                    parts = deformation_parts(kind, free)
                    for side_name, part in parts.items():
                        checks.append(CheckResult(
                            name=f"degree structure {side_name}{suffix}",
                            passed=part.degrees == EXPECTED_DEGREES[kind],
                            detail=f"degrees {list(part.degrees)}",
                        ))
                    target = THEOREM_MONOMIALS[kind]
                    for side_name, (orbit, present) in orbit_coverage(parts, target).items():
                        checks.append(CheckResult(
                            name=f"proof monomial orbit {side_name}{suffix}",
                            passed=present == orbit,
                            detail=f"{len(present)} degree-{len(target)} monomials, orbit of {len(orbit)}",
                        ))
                    lhs, rhs = theorem_check(kind, free)
                    checks.append(CheckResult(
                        name=f"proof monomial{suffix}",
                        passed=lhs == rhs,
                        detail=f"lhs {free.render(lhs)}; rhs {free.render(rhs)}",
                    ))
            with self._timed(f"symmetries{suffix}"):
                for symmetry in side_symmetries(self.spec, field):
                    checks.append(CheckResult(
                        name=f"symmetry {symmetry.label()}{suffix}",
                        passed=symmetry.holds,
                        detail=symmetry.detail(),
                    ))
        return CrosscheckReport(weight=self.spec.label(), mode=config.mode, checks=checks)

    def explore(self) -> ExplorationReport:
        config = self.config
        return composite_explore(
            parse_grid(config.grid or DEFAULT_GRID),
            mode=config.mode,
            zeta=config.zeta_values,
            seed=config.seed,
            prime=config.prime,
        )
