import pytest

from stabilityx.verify import PipelineOptions


@pytest.fixture
def small_options() -> PipelineOptions:
    """Pipeline options sized for test runs."""
    return PipelineOptions(
        n_signals=5,
        n_hinf_signals=3,
        hinf_report_points=200,
        contraction_samples=50,
        gain_samples=200,
        level_samples=8,
        delta_radii=32,
        delta_directions=8,
        sup_states=256,
        sup_radii=8,
        commutation_trajectories=1,
    )
