# This file makes 'empirical' a Python sub-package.

# Expose the rank preprocessing and statistic evaluators
from .dstat import cell_value, dstat_fast, dstat_naive
from .oracle import dstat_oracle
from .ranks import preprocess
