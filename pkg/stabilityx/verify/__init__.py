"""Sampled and simulated verification of the stability estimates, and the pipelines."""

from .checks import check_commutation as check_commutation
from .checks import check_contraction as check_contraction
from .checks import check_dissipation as check_dissipation
from .checks import check_gain_decay as check_gain_decay
from .checks import check_hinf as check_hinf
from .checks import check_ises as check_ises
from .checks import check_normal_form as check_normal_form
from .checks import check_uges as check_uges
from .checks import hinf_residual as hinf_residual
from .checks import sample_pairs as sample_pairs
from .config import PipelineOptions as PipelineOptions
from .envelopes import estimate_bounds as estimate_bounds
from .envelopes import estimate_delta as estimate_delta
from .exceptions import InvalidGainError as InvalidGainError
from .exceptions import MissingSignalError as MissingSignalError
from .exceptions import PipelineStageError as PipelineStageError
from .exceptions import VerificationError as VerificationError
from .models import StabilityKind as StabilityKind
from .models import StabilitySpec as StabilitySpec
from .models import VerificationReport as VerificationReport
from .models import VerificationSummary as VerificationSummary
from .models import require_class_k_infinity as require_class_k_infinity
from .pipelines import FlowNormalFormResult as FlowNormalFormResult
from .pipelines import IssToIsesResult as IssToIsesResult
from .pipelines import IsesToHinfResult as IsesToHinfResult
from .pipelines import UgasToUgesResult as UgasToUgesResult
from .pipelines import disturbance_signals as disturbance_signals
from .pipelines import initial_states as initial_states
from .pipelines import pipeline_flow_normal_form as pipeline_flow_normal_form
from .pipelines import pipeline_iss_to_ises as pipeline_iss_to_ises
from .pipelines import pipeline_ises_to_hinf as pipeline_ises_to_hinf
from .pipelines import pipeline_ugas_to_uges as pipeline_ugas_to_uges
from .report import parse_report as parse_report
from .report import render_report as render_report
