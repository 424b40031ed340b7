"""TOML rendering of verification summaries."""

import sys

import tomli_w

from .models import VerificationSummary

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


def render_report(summary: VerificationSummary) -> str:
    """Render ``summary`` as TOML with one ``[[reports]]`` table per check.

    Headlines such as ``# UGES: PASS (...)`` lead the document as comments, so
    the text stays readable and still parses.
    """
    verdict = "PASS" if summary.passed else "FAIL"
    lines = [f"# {report.headline()}" for report in summary.reports]
    lines.append(f"# overall: {verdict}")
    data = summary.model_dump()
    for report in data["reports"]:
        report["kind"] = report["kind"].value
    body = tomli_w.dumps(data)
    return "\n".join(lines) + "\n\n" + body


def parse_report(text: str) -> VerificationSummary:
    """Rebuild a summary from :func:`render_report` output."""
    return VerificationSummary.model_validate(tomllib.loads(text))
