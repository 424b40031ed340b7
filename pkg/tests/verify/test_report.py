from stabilityx.verify import StabilityKind
from stabilityx.verify import VerificationReport
from stabilityx.verify import VerificationSummary
from stabilityx.verify import parse_report
from stabilityx.verify import render_report


def _summary() -> VerificationSummary:
    return VerificationSummary.of(
        VerificationReport.from_margins(
            StabilityKind.CONTRACTION,
            [0.5, 0.75],
            1e-3,
            residuals=[-1.0, -0.25],
            witnesses=[[1.0, 0.0], [0.0, 2.0]],
            stage="transformed",
            budget={"integration": 0.0, "finite_difference": 1e-4, "envelope": 0.0},
        ),
        VerificationReport.from_margins(StabilityKind.UGES, [1.25], 1e-3, witnesses=[[3.0, 4.0]]),
    )


def test_rendered_report_leads_with_headlines() -> None:
    lines = render_report(_summary()).splitlines()
    assert lines[0] == "# CONTRACTION: PASS (worst margin 0.750000)"
    assert lines[1] == "# UGES: FAIL (worst margin 1.250000)"
    assert lines[2] == "# overall: FAIL"


def test_rendered_report_parses_back() -> None:
    summary = _summary()
    parsed = parse_report(render_report(summary))
    assert parsed == summary
    assert parsed.reports[0].witness == [0.0, 2.0]
    assert not parsed.passed
