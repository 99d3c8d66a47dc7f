"""
Report Export

Writes enumeration reports to Markdown, JSON and PDF.

Every exporter returns (success, error_message) instead of raising, so the
command line can report a failed export without losing the enumeration
result already printed to stdout.
"""

import json
from pathlib import Path
from typing import Sequence

from app.oracle import EnumerationReport


KIND_TITLES = {
    "symm": "Symmetries",
    "aut": "Automorphisms",
    "m": "Block bijections (M)",
}


def render_markdown(reports: Sequence[EnumerationReport]) -> str:
    """Markdown text for one or more reports."""
    lines = ["# Enumeration Report", ""]
    lines.append("| Space | Kind | Candidates | Count | Formula | Verdict |")
    lines.append("|---|---|---|---|---|---|")
    for report in reports:
        lines.append(
            f"| {report.space} | {report.kind} | {report.candidates} | "
            f"{report.count} | {report.formula} | {report.verdict} |"
        )
    lines.append("")

    for report in reports:
        lines.append(f"## {KIND_TITLES[report.kind]}: {report.space}")
        lines.append("")
        lines.append(f"- Candidates examined: {report.candidates}")
        lines.append(f"- Accepted: {report.count}")
        lines.append(f"- Closed-form order: {report.formula}")
        lines.append(f"- Verdict: **{report.verdict}**")
        lines.append(f"- Workers: {report.workers}")
        lines.append(f"- Wall time: {report.elapsed:.3f} s")
        lines.append("")
    return "\n".join(lines)


def export_to_markdown(
    reports: Sequence[EnumerationReport],
    output_path: str,
) -> tuple[bool, str]:
    """
    Export reports to Markdown format.

    Returns:
        Tuple of (success: bool, error_message: str)
    """
    try:
        Path(output_path).write_text(render_markdown(reports), encoding="utf-8")
        return True, ""
    except Exception as e:
        return False, str(e)


def export_to_json(
    reports: Sequence[EnumerationReport],
    output_path: str,
) -> tuple[bool, str]:
    """
    Export reports as a JSON document {"reports": [...]}.

    Returns:
        Tuple of (success: bool, error_message: str)
    """
    try:
        payload = {"reports": [report.to_dict() for report in reports]}
        Path(output_path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return True, ""
    except Exception as e:
        return False, str(e)


def export_to_pdf(
    reports: Sequence[EnumerationReport],
    output_path: str,
) -> tuple[bool, str]:
    """
    Export reports to PDF format with reportlab.

    Returns:
        Tuple of (success: bool, error_message: str)
    """
    try:
        try:
            from reportlab.lib.pagesizes import letter
            from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
            from reportlab.lib.units import inch
            from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table
        except ImportError:
            return False, "reportlab library not installed. Install with: pip install reportlab"

        doc = SimpleDocTemplate(output_path, pagesize=letter)
        styles = getSampleStyleSheet()
        title_style = ParagraphStyle(
            "ReportTitle",
            parent=styles["Heading1"],
            fontSize=16,
            textColor="black",
            spaceAfter=12,
        )

        story = [Paragraph("Enumeration Report", title_style)]
        rows = [["Space", "Kind", "Candidates", "Count", "Formula", "Verdict"]]
        for report in reports:
            rows.append([
                report.space,
                report.kind,
                str(report.candidates),
                str(report.count),
                str(report.formula),
                report.verdict,
            ])
        story.append(Table(rows))
        story.append(Spacer(1, 0.2 * inch))

        for report in reports:
            story.append(Paragraph(f"{KIND_TITLES[report.kind]}: {report.space}", styles["Heading2"]))
            story.append(Paragraph(
                f"{report.count} of {report.candidates} candidates accepted; "
                f"closed form {report.formula}; verdict {report.verdict}; "
                f"{report.workers} worker(s), {report.elapsed:.3f} s.",
                styles["Normal"],
            ))
        doc.build(story)
        return True, ""

    except Exception as e:
        return False, f"PDF export failed: {str(e)}"


EXPORTERS = {
    ".md": export_to_markdown,
    ".json": export_to_json,
    ".pdf": export_to_pdf,
}


def export_reports(
    reports: Sequence[EnumerationReport],
    output_path: str,
) -> tuple[bool, str]:
    """Export by file suffix: .md, .json or .pdf."""
    suffix = Path(output_path).suffix.lower()
    exporter = EXPORTERS.get(suffix)
    if exporter is None:
        return False, f"unsupported export format {suffix or '(none)'}; use .md, .json or .pdf"
    return exporter(reports, output_path)
