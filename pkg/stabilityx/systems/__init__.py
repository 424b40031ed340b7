"""System models, disturbance signals, simulation and the built-in catalog."""

from .catalog import CatalogEntry as CatalogEntry
from .catalog import catalog as catalog
from .catalog import catalog_names as catalog_names
from .config import SignalSpec as SignalSpec
from .config import SimulationConfig as SimulationConfig
from .exceptions import BlowupDetectedError as BlowupDetectedError
from .exceptions import InvalidSignalError as InvalidSignalError
from .exceptions import SimulationError as SimulationError
from .exceptions import UnknownSystemError as UnknownSystemError
from .models import DisturbanceSignal as DisturbanceSignal
from .models import DisturbedSystem as DisturbedSystem
from .models import Trajectory as Trajectory
from .signals import make_disturbance as make_disturbance
from .simulate import simulate as simulate
from .simulate import simulate_batch as simulate_batch
