"""Lyapunov certificates, the normalized gradient flow and the level-set quotient map."""

from .certificate import ComparisonBounds as ComparisonBounds
from .certificate import IssGain as IssGain
from .certificate import LevelFlow as LevelFlow
from .certificate import LyapunovCertificate as LyapunovCertificate
from .certificate import quadratic_form as quadratic_form
from .certificate import radial_quadratic as radial_quadratic
from .config import GradientFlowConfig as GradientFlowConfig
from .diagnostics import CertificateDiagnostics as CertificateDiagnostics
from .diagnostics import PropertyCheck as PropertyCheck
from .diagnostics import check_certificate as check_certificate
from .exceptions import LevelFloorHitError as LevelFloorHitError
from .exceptions import LyapunovError as LyapunovError
from .exceptions import NotStarShapedError as NotStarShapedError
from .exceptions import StiffFlowError as StiffFlowError
from .flow import grad_flow as grad_flow
from .flow import project_to_level as project_to_level
from .lipschitz import estimate_L as estimate_L
from .lipschitz import level_quotient_map as level_quotient_map
from .lipschitz import level_set_points as level_set_points
from .sphere import SphereMap as SphereMap
from .sphere import ray_radius as ray_radius
from .sphere import sphere_map as sphere_map
