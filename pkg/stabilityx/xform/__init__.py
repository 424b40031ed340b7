"""Coordinate changes, pushforwards, the trajectory normal form and input changes."""

from .change import ChangeProvenance as ChangeProvenance
from .change import CoordinateChange as CoordinateChange
from .change import LevelSetChange as LevelSetChange
from .change import build_change as build_change
from .exceptions import BackwardBlowupError as BackwardBlowupError
from .exceptions import GammaPropertyViolatedError as GammaPropertyViolatedError
from .exceptions import NormalFormError as NormalFormError
from .exceptions import NotClassKInfinityError as NotClassKInfinityError
from .exceptions import TransformError as TransformError
from .inputs import InputChange as InputChange
from .inputs import InputTransformedSystem as InputTransformedSystem
from .inputs import SupremumPlan as SupremumPlan
from .inputs import input_change as input_change
from .inputs import sampled_supremum as sampled_supremum
from .normal_form import TrajectoryChange as TrajectoryChange
from .normal_form import flow_based_normal_form as flow_based_normal_form
from .pushforward import TransformedSystem as TransformedSystem
from .pushforward import pushforward as pushforward
from .radial import RadialChange as RadialChange
from .tables import change_table as change_table
from .tables import input_table as input_table
