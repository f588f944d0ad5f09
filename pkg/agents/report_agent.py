# agents/report_agent.py

from typing import Dict, List, Optional

from core.report_schema import (
    CoefficientReport,
    CrosscheckReport,
    ExplorationReport,
    PentagonReport,
    RunDocument,
    ShowReport,
    TermReport,
)

# Residual monomials listed when an identity fails
FAILURE_TERMS = 10


class ReportAgent:
    """Deterministic text and structured renderings of run reports"""

    def render_structured(self, document: RunDocument) -> str:
        return document.model_dump_json(indent=2)

    def render_text(self, report, timings: Optional[Dict[str, float]] = None) -> str:
        """
        Convert a report to plain text

        Timings are appended only when given, so equal runs print equal text.
        """
        renderers = {
            PentagonReport: self._pentagon,
            CoefficientReport: self._coefficient,
            ShowReport: self._show,
            CrosscheckReport: self._crosscheck,
            ExplorationReport: self._exploration,
        }
        try:
            sections = renderers[type(report)](report)
        except KeyError:
            raise TypeError(f"No text rendering for {type(report).__name__}") from None
        if timings:
            sections.append("timings:")
            sections.extend(f"  {phase}: {seconds:.3f}s" for phase, seconds in timings.items())
        return "\n".join(sections) + "\n"

    # -----------------------------
    # Sections
    # -----------------------------
    @staticmethod
    def _degrees(counts: Dict[int, int]) -> str:
        if not counts:
            return "none"
        return ", ".join(f"degree {degree}: {count}" for degree, count in sorted(counts.items()))

    @staticmethod
    def _terms(terms: List[TermReport], limit: Optional[int] = None) -> List[str]:
        shown = terms if limit is None else terms[:limit]
        lines = [f"  {term.monomial}: {term.coefficient}" for term in shown]
        if limit is not None and len(terms) > limit:
            lines.append(f"  ... {len(terms) - limit} more")
        return lines

    def _pentagon(self, report: PentagonReport) -> List[str]:
        sections = [
            f"weight: {report.weight}",
            f"mode: {report.mode}",
        ]
        if report.mode == "modp":
            sections.append(f"prime: {report.prime}")
            sections.append(f"seed: {report.seed}")
            zeros = sum(point.zero for point in report.points)
            sections.append(f"points: {zeros}/{len(report.points)} zero")
        sections.append(f"lhs monomials: {self._degrees(report.lhs_degrees)}")
        sections.append(f"rhs monomials: {self._degrees(report.rhs_degrees)}")
        sections.append(f"residual: {sum(report.residual_degrees.values())} monomials")
        if not report.zero:
            if report.mode == "modp":
                failing = next(point for point in report.points if not point.zero)
                sections.append(f"first failing point: {failing.index} (zeta={failing.zeta})")
            sections.append(f"first {FAILURE_TERMS} nonzero residual monomials:")
            sections.extend(self._terms(report.residual_terms, FAILURE_TERMS))
        sections.append(f"verdict: {'VERIFIED' if report.zero else 'FAILED'}")
        return sections

    def _coefficient(self, report: CoefficientReport) -> List[str]:
        sections = [
            f"weight: {report.weight}",
            f"mode: {report.mode}",
            f"monomial: {report.monomial}",
        ]
        if report.lhs is not None:
            sections.append(f"lhs: {report.lhs}")
        if report.rhs is not None:
            sections.append(f"rhs: {report.rhs}")
        if report.equal is not None:
            sections.append(f"equal: {'yes' if report.equal else 'no'}")
        return sections

    def _show(self, report: ShowReport) -> List[str]:
        sections = [report.title]
        if report.matrix is not None:
            matrix = report.matrix
            header = [""] + matrix.columns
            body = [[label] + row for label, row in zip(matrix.rows, matrix.entries)]
            widths = [max(len(row[k]) for row in [header] + body) for k in range(len(header))]
            for row in [header] + body:
                sections.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
        else:
            sections.extend(self._terms(report.terms))
        return sections

    def _crosscheck(self, report: CrosscheckReport) -> List[str]:
        sections = [f"weight: {report.weight}", f"mode: {report.mode}"]
        for check in report.checks:
            line = f"[{'PASS' if check.passed else 'FAIL'}] {check.name}"
            if check.detail:
                line += f" ({check.detail})"
            sections.append(line)
        sections.append(f"verdict: {'VERIFIED' if report.passed else 'FAILED'}")
        return sections

    def _exploration(self, report: ExplorationReport) -> List[str]:
        sections = [f"composite exploration ({report.mode})"]
        for entry in report.entries:
            line = f"lam={entry.lam} mu={entry.mu}: {entry.term_count} residual monomials"
            if entry.lambda_mu_divisible is not None:
                line += f", lam*mu divides all: {'yes' if entry.lambda_mu_divisible else 'no'}"
            sections.append(line)
            sections.extend(self._terms(entry.terms, FAILURE_TERMS))
        return sections
