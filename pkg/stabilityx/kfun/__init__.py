"""Comparison functions: quadrature, inversion, envelopes and constructions."""

from .checks import check_gamma_property as check_gamma_property
from .checks import default_grid as default_grid
from .checks import is_strictly_increasing as is_strictly_increasing
from .checks import is_unbounded as is_unbounded
from .config import QuadratureConfig as QuadratureConfig
from .constructions import make_alpha4 as make_alpha4
from .constructions import make_gamma as make_gamma
from .constructions import make_rho as make_rho
from .envelope import EnvelopeSide as EnvelopeSide
from .envelope import monotone_envelope as monotone_envelope
from .exceptions import DegenerateSamplesError as DegenerateSamplesError
from .exceptions import EnvelopeFailureError as EnvelopeFailureError
from .exceptions import KFunError as KFunError
from .exceptions import NonConvergentError as NonConvergentError
from .exceptions import OutOfRangeError as OutOfRangeError
from .inversion import invert as invert
from .models import FunctionClass as FunctionClass
from .models import MonotoneScalarFn as MonotoneScalarFn
from .models import identity as identity
from .models import linear as linear
from .models import power as power
from .models import tabulate as tabulate
from .models import tabulate_log as tabulate_log
from .profile import PowerLawProfile as PowerLawProfile
from .quadrature import integrate as integrate
