"""Command-line front end: TOML run configurations, pipeline execution and artifacts."""

from .config import RunConfig as RunConfig
from .config import load_config as load_config
from .exceptions import ConfigError as ConfigError
from .expressions import compile_scalar as compile_scalar
from .expressions import compile_vector_field as compile_vector_field
from .expressions import parse_expression as parse_expression
from .main import ExitCode as ExitCode
from .main import list_catalog as list_catalog
from .main import main as main
from .main import run as run
