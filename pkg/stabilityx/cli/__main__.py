"""Allow ``python -m stabilityx.cli``."""

import sys

from .main import main

sys.exit(main())
