# This file makes 'cli' a Python sub-package.

# Expose the entry points
from .main import main, parse_args, run
