import math
from dataclasses import replace

import numpy as np
import pytest

from stabilityx.kfun import identity
from stabilityx.kfun import linear
from stabilityx.kfun import power
from stabilityx.lyap import radial_quadratic
from stabilityx.systems import catalog
from stabilityx.verify import PipelineOptions
from stabilityx.verify import PipelineStageError
from stabilityx.verify import StabilityKind
from stabilityx.verify import pipeline_flow_normal_form
from stabilityx.verify import pipeline_iss_to_ises
from stabilityx.verify import pipeline_ises_to_hinf
from stabilityx.verify import pipeline_ugas_to_uges


def test_ugas_pipeline_needs_a_decay_rate() -> None:
    entry = catalog("halfspeed_1d")
    with pytest.raises(PipelineStageError) as excinfo:
        pipeline_ugas_to_uges(entry.system, radial_quadratic(1))
    assert excinfo.value.stage == "decay"


def test_iss_pipeline_needs_a_gain() -> None:
    entry = catalog("iss_scalar")
    with pytest.raises(PipelineStageError, match="no ISS gain") as excinfo:
        pipeline_iss_to_ises(entry.system, radial_quadratic(1))
    assert excinfo.value.stage == "certificate"


@pytest.mark.slow
def test_halfspeed_with_identity_profile(small_options: PipelineOptions) -> None:
    entry = catalog("halfspeed_1d")
    result = pipeline_ugas_to_uges(entry.system, entry.certificate, small_options, gamma=identity())
    assert result.summary.passed
    assert [r.kind for r in result.summary.reports] == [
        StabilityKind.CONTRACTION,
        StabilityKind.UGES,
        StabilityKind.COMMUTATION,
    ]
    assert result.rho(3.0) == 3.0
    for x in np.linspace(-10.0, 10.0, 9):
        assert result.change(np.array([x]))[0] == pytest.approx(np.sign(x) * x**2, rel=1e-9, abs=1e-12)
    assert len(result.trajectories) == small_options.n_signals


@pytest.mark.slow
def test_halfspeed_checked_at_double_rate_fails(small_options: PipelineOptions) -> None:
    entry = catalog("halfspeed_1d")
    options = small_options.model_copy(update={"decay_rate": 2.0})
    result = pipeline_ugas_to_uges(entry.system, entry.certificate, options, gamma=identity())
    assert not result.summary.passed
    assert not result.report.passed
    assert result.report.kind is StabilityKind.UGES


@pytest.mark.slow
def test_planar_decay_with_sampled_profile(small_options: PipelineOptions) -> None:
    entry = catalog("linear_r2")
    result = pipeline_ugas_to_uges(entry.system, entry.certificate, small_options)
    assert result.summary.passed
    np.testing.assert_array_equal(result.change(np.zeros(2)), np.zeros(2))


@pytest.mark.slow
def test_iss_scalar_becomes_ises(small_options: PipelineOptions) -> None:
    entry = catalog("iss_scalar")
    result = pipeline_iss_to_ises(entry.system, entry.certificate, small_options)
    assert result.summary.passed
    assert [r.kind for r in result.summary.reports] == [
        StabilityKind.GAIN_DECAY,
        StabilityKind.ISES,
        StabilityKind.COMMUTATION,
    ]
    assert result.alpha_tilde(0.0) == 0.0
    assert result.alpha_tilde(1.0) > 0.0


@pytest.mark.slow
def test_iss_scalar_input_change_with_known_supremum(small_options: PipelineOptions) -> None:
    # sup over |x| <= 2r, |d| <= r of x (-x + d) is r^2 / 4
    entry = catalog("iss_scalar")
    result = pipeline_ises_to_hinf(entry.system, linear(2.0), small_options, alpha_tilde=power(0.25, 2.0))
    assert result.summary.passed
    assert [r.kind for r in result.summary.reports] == [StabilityKind.DISSIPATION, StabilityKind.HINF]
    assert len(result.trajectories) == small_options.n_hinf_signals


@pytest.mark.slow
def test_chained_iss_to_hinf(small_options: PipelineOptions) -> None:
    entry = catalog("iss_scalar")
    ises = pipeline_iss_to_ises(entry.system, entry.certificate, small_options)
    hinf = pipeline_ises_to_hinf(ises.transformed, ises.alpha_tilde, small_options)
    assert hinf.summary.passed
    assert hinf.report.kind is StabilityKind.HINF
    assert hinf.inputs.magnitude(0.0) == 0.0
    assert hinf.trajectories[0].signal is not None


@pytest.mark.slow
def test_flow_normal_form_of_planar_decay(small_options: PipelineOptions) -> None:
    entry = catalog("linear_r2")
    result = pipeline_flow_normal_form(entry.system, entry.certificate, small_options)
    assert result.summary.passed
    assert [r.kind for r in result.summary.reports] == [StabilityKind.NORMAL_FORM, StabilityKind.UGES]


def test_flow_normal_form_rejects_disturbed_system(small_options: PipelineOptions) -> None:
    entry = catalog("iss_scalar")
    with pytest.raises(PipelineStageError) as excinfo:
        pipeline_flow_normal_form(entry.system, entry.certificate, small_options)
    assert excinfo.value.stage == "normal_form"


@pytest.mark.slow
def test_planar_decay_with_derived_rescaling(small_options: PipelineOptions) -> None:
    entry = catalog("linear_r2")
    cert = replace(entry.certificate, level_decay=None)
    result = pipeline_ugas_to_uges(entry.system, cert, small_options)
    assert result.summary.passed
    assert result.rho(2.0) != pytest.approx(2.0)
    assert math.isfinite(result.rho.log_value(1e-3))


@pytest.mark.slow
def test_iss_scalar_derives_its_rescaling(small_options: PipelineOptions) -> None:
    entry = catalog("iss_scalar")
    assert entry.certificate.level_decay is None
    result = pipeline_iss_to_ises(entry.system, entry.certificate, small_options)
    assert result.summary.passed
    assert math.isfinite(result.alpha_tilde.log_value(1.0))


@pytest.mark.slow
def test_iss_scalar_with_given_level_decay(small_options: PipelineOptions) -> None:
    entry = catalog("iss_scalar")
    cert = replace(entry.certificate, level_decay=identity())
    result = pipeline_iss_to_ises(entry.system, cert, small_options)
    assert result.summary.passed


@pytest.mark.slow
def test_chained_iss_to_hinf_with_derived_rescaling(small_options: PipelineOptions) -> None:
    entry = catalog("iss_scalar")
    ises = pipeline_iss_to_ises(entry.system, entry.certificate, small_options)
    options = small_options.model_copy(update={"sup_r_max": 1.0})
    hinf = pipeline_ises_to_hinf(ises.transformed, ises.alpha_tilde, options)
    assert hinf.summary.passed
    assert hinf.inputs.magnitude(0.5) > 0.0


@pytest.mark.slow
def test_flow_normal_form_ignores_level_decay(small_options: PipelineOptions) -> None:
    entry = catalog("linear_r2")
    cert = replace(entry.certificate, level_decay=None)
    result = pipeline_flow_normal_form(entry.system, cert, small_options)
    assert result.summary.passed


@pytest.mark.slow
def test_ugas_pipeline_with_default_options() -> None:
    entry = catalog("linear_r2")
    result = pipeline_ugas_to_uges(entry.system, entry.certificate, PipelineOptions())
    assert result.summary.passed
    assert len(result.trajectories) == PipelineOptions().n_signals


@pytest.mark.slow
def test_iss_pipeline_with_default_options() -> None:
    entry = catalog("iss_scalar")
    result = pipeline_iss_to_ises(entry.system, entry.certificate, PipelineOptions())
    assert result.summary.passed


@pytest.mark.slow
def test_hinf_pipeline_with_default_options() -> None:
    entry = catalog("iss_scalar")
    result = pipeline_ises_to_hinf(entry.system, linear(2.0), PipelineOptions(), alpha_tilde=power(0.25, 2.0))
    assert result.summary.passed
    assert len(result.trajectories) == PipelineOptions().n_hinf_signals


@pytest.mark.slow
def test_flow_normal_form_with_default_options() -> None:
    entry = catalog("linear_r2")
    result = pipeline_flow_normal_form(entry.system, entry.certificate, PipelineOptions())
    assert result.summary.passed
