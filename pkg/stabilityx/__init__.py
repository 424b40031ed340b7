"""StabilityX: changes of variables that turn asymptotic stability estimates into exponential ones."""

import logging

from .exceptions import StabilityXError as StabilityXError
from .kfun import MonotoneScalarFn as MonotoneScalarFn
from .kfun import make_alpha4 as make_alpha4
from .kfun import make_gamma as make_gamma
from .kfun import make_rho as make_rho
from .kfun import monotone_envelope as monotone_envelope
from .lyap import LyapunovCertificate as LyapunovCertificate
from .lyap import grad_flow as grad_flow
from .lyap import sphere_map as sphere_map
from .sampling import SamplingPlan as SamplingPlan
from .systems import DisturbanceSignal as DisturbanceSignal
from .systems import DisturbedSystem as DisturbedSystem
from .systems import Trajectory as Trajectory
from .systems import catalog as catalog
from .systems import simulate as simulate
from .verify import PipelineOptions as PipelineOptions
from .verify import VerificationReport as VerificationReport
from .verify import VerificationSummary as VerificationSummary
from .verify import pipeline_flow_normal_form as pipeline_flow_normal_form
from .verify import pipeline_iss_to_ises as pipeline_iss_to_ises
from .verify import pipeline_ises_to_hinf as pipeline_ises_to_hinf
from .verify import pipeline_ugas_to_uges as pipeline_ugas_to_uges
from .xform import CoordinateChange as CoordinateChange
from .xform import TransformedSystem as TransformedSystem
from .xform import build_change as build_change
from .xform import flow_based_normal_form as flow_based_normal_form
from .xform import input_change as input_change
from .xform import pushforward as pushforward

_package_logger = logging.getLogger("stabilityx")
_package_logger.addHandler(
    logging.NullHandler()
)  # Attach a NullHandler to avoid "No handler found" warnings in user applications.

__all__ = [
    "CoordinateChange",
    "DisturbanceSignal",
    "DisturbedSystem",
    "LyapunovCertificate",
    "MonotoneScalarFn",
    "PipelineOptions",
    "SamplingPlan",
    "StabilityXError",
    "Trajectory",
    "TransformedSystem",
    "VerificationReport",
    "VerificationSummary",
    "build_change",
    "catalog",
    "flow_based_normal_form",
    "grad_flow",
    "input_change",
    "make_alpha4",
    "make_gamma",
    "make_rho",
    "monotone_envelope",
    "pipeline_flow_normal_form",
    "pipeline_iss_to_ises",
    "pipeline_ises_to_hinf",
    "pipeline_ugas_to_uges",
    "pushforward",
    "simulate",
    "sphere_map",
]
